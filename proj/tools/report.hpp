// Copyright 2026 The ghzbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"

namespace ghzbell::cli {

using Json = nlohmann::ordered_json;

struct RunManifest {
  std::string command;
  std::string config_digest;
  std::optional<std::uint64_t> seed;
  std::string tool_version;
  std::int64_t wall_time_ms = 0;
};

/// Hex SHA-256 of the compact, key-sorted serialization of `input`.
std::string digest_of(const nlohmann::json& input);

/// Rounds to 12 significant digits so echoed angles stay short and stable.
double echo_angle(double x);

Json to_json(const RunManifest& m);

/// One `key,value` row per scalar. Arrays of scalars and arrays of scalar
/// tuples collapse into a single row (items separated by ';', tuple fields by ' ').
std::string to_csv(const Json& report);

}  // namespace ghzbell::cli
