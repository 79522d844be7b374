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

#include <string>

#include "ghzbell/bell.hpp"
#include "ghzbell/games.hpp"
#include "json.hpp"

namespace ghzbell::cli {

/// Malformed input file or command-line value.
class ParseError : public Error {
 public:
  using Error::Error;
};

struct LoadedConfig {
  BellConfig config;
  /// Key-sorted document used for the manifest digest.
  nlohmann::json canonical;
};

/// Reads {"n", "a0", "a1", "b0", "b1"} with directions given as {"alpha", "phi"}.
LoadedConfig load_config(const std::string& path);
LoadedConfig parse_config(const nlohmann::json& doc);

struct LoadedStrategy {
  ChshStrategy strategy;
  nlohmann::json canonical;
};

/// "identity", "optimal" or "file:<path>" where the file holds
/// {"a0", "a1", "b0", "b1"} observable directions as {"alpha", "phi"}.
LoadedStrategy load_strategy(const std::string& spec);

nlohmann::ordered_json direction_json(const Direction& d);

}  // namespace ghzbell::cli
