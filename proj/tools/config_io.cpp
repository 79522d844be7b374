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

#include "config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "report.hpp"

namespace ghzbell::cli {

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void require_keys(const nlohmann::json& obj, const std::set<std::string>& keys, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [k, v] : obj.items()) {
    if (!keys.contains(k)) throw ParseError(where + ": unknown field '" + k + "'");
  }
  for (const auto& k : keys) {
    if (!obj.contains(k)) throw ParseError(where + ": missing field '" + k + "'");
  }
}

Direction parse_direction(const nlohmann::json& obj, const std::string& where) {
  require_keys(obj, {"alpha", "phi"}, where);
  if (!obj["alpha"].is_number() || !obj["phi"].is_number()) throw ParseError(where + ": angles must be numbers");
  return Direction(obj["alpha"].get<double>(), obj["phi"].get<double>());
}

std::vector<Direction> parse_directions(const nlohmann::json& arr, std::size_t count, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array");
  if (arr.size() != count) {
    throw ParseError(where + ": expected " + std::to_string(count) + " directions, got " + std::to_string(arr.size()));
  }
  std::vector<Direction> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_direction(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

nlohmann::ordered_json direction_json(const Direction& d) {
  return {{"alpha", echo_angle(d.alpha())}, {"phi", echo_angle(d.phi())}};
}

LoadedConfig parse_config(const nlohmann::json& doc) {
  require_keys(doc, {"n", "a0", "a1", "b0", "b1"}, "config");
  if (!doc["n"].is_number_integer()) throw ParseError("config: n must be an integer");
  const auto n = doc["n"].get<std::int64_t>();
  if (n < 2) throw ParseError("config: n must be at least 2");
  if (n > kMaxQubits) throw CapacityError("config: n = " + std::to_string(n) + " exceeds " + std::to_string(kMaxQubits) + " qubits");
  const auto count = static_cast<std::size_t>(n - 1);
  BellConfig cfg(parse_directions(doc["a0"], count, "a0"), parse_directions(doc["a1"], count, "a1"),
                 parse_direction(doc["b0"], "b0"), parse_direction(doc["b1"], "b1"));
  return {std::move(cfg), doc};
}

LoadedConfig load_config(const std::string& path) { return parse_config(read_json(path)); }

LoadedStrategy load_strategy(const std::string& spec) {
  if (spec == "identity") return {ChshStrategy::identity(), spec};
  if (spec == "optimal") return {ChshStrategy::optimal(), spec};
  if (!spec.starts_with("file:")) throw ParseError("strategy must be identity, optimal or file:<path>");
  const nlohmann::json doc = read_json(spec.substr(5));
  require_keys(doc, {"a0", "a1", "b0", "b1"}, "strategy");
  auto bloch = [&](const char* key) { return parse_direction(doc[key], key).bloch(); };
  const TwoQubitConfig cfg(bloch("a0"), bloch("a1"), bloch("b0"), bloch("b1"));
  return {ChshStrategy::from_observables(cfg), doc};
}

}  // namespace ghzbell::cli
