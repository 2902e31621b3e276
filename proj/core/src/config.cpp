// Copyright 2026 The nbvqpco authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nbvqpco/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nbvqpco {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

FlatConfig FlatConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

FlatConfig FlatConfig::parse_string(const std::string& text,
                                    const std::string& name) {
  FlatConfig cfg;
  cfg.name_ = name;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(name, lineno, "expected `key = value`");
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) throw ConfigError(name, lineno, "empty key");
    if (cfg.values_.count(key)) {
      throw ConfigError(name, lineno, "duplicate key `" + key + "`");
    }
    cfg.values_[key] = value;
    cfg.lines_[key] = lineno;
  }
  return cfg;
}

void FlatConfig::fail(const std::string& key, const std::string& why) const {
  const auto it = lines_.find(key);
  throw ConfigError(name_, it == lines_.end() ? 0 : it->second,
                    "key `" + key + "`: " + why);
}

double FlatConfig::get_double(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(name_, 0, "missing required key `" + key + "`");
  }
  char* end = nullptr;
  const double out = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0') fail(key, "not a number");
  return out;
}

double FlatConfig::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

long FlatConfig::get_int(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(name_, 0, "missing required key `" + key + "`");
  }
  char* end = nullptr;
  const long out = std::strtol(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0') fail(key, "not an integer");
  return out;
}

long FlatConfig::get_int(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

std::string FlatConfig::get_string(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) {
    throw ConfigError(name_, 0, "missing required key `" + key + "`");
  }
  return it->second;
}

}  // namespace nbvqpco
