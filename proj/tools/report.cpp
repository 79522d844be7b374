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

#include "report.hpp"

#include <openssl/evp.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ghzbell::cli {

std::string digest_of(const nlohmann::json& input) {
  const std::string text = input.dump();
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

double echo_angle(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

Json to_json(const RunManifest& m) {
  Json j;
  j["command"] = m.command;
  j["config_digest"] = m.config_digest;
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  j["tool_version"] = m.tool_version;
  j["wall_time_ms"] = m.wall_time_ms;
  return j;
}

namespace {

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_scalar_tuple(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_structured()) return false;
  }
  return true;
}

bool collapses(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_object() || (e.is_array() && !is_scalar_tuple(e))) return false;
  }
  return true;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flatten(const Json& v, const std::string& key, std::ostringstream& out) {
  if (collapses(v)) {
    std::string row;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) row += ';';
      if (v[i].is_array()) {
        for (std::size_t k = 0; k < v[i].size(); ++k) {
          if (k) row += ' ';
          row += scalar_text(v[i][k]);
        }
      } else {
        row += scalar_text(v[i]);
      }
    }
    out << quote(key) << ',' << quote(row) << '\n';
  } else if (v.is_object()) {
    for (const auto& [k, child] : v.items()) flatten(child, key.empty() ? k : key + "." + k, out);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], key + "." + std::to_string(i), out);
  } else {
    out << quote(key) << ',' << quote(scalar_text(v)) << '\n';
  }
}

}  // namespace

std::string to_csv(const Json& report) {
  std::ostringstream out;
  out << "key,value\n";
  flatten(report, "", out);
  return out.str();
}

}  // namespace ghzbell::cli
