// Copyright 2026 phonoq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "phonoq/error.hpp"
#include "phonoq/io.hpp"

namespace phonoq {

// key=value settings file: one pair per line, '#' comments, blank lines
// ignored. Errors carry the offending line number.
class KeyValueConfig {
 public:
  static KeyValueConfig parse(std::string_view text,
                              const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    const std::vector<std::string> lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      std::string line = lines[i];
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      const std::size_t eq = line.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorKind::ConfigError,
                    origin + " line " + std::to_string(i + 1) +
                        ": expected key=value, got '" + line + "'");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty())
        throw Error(ErrorKind::ConfigError,
                    origin + " line " + std::to_string(i + 1) +
                        ": empty key");
      if (cfg.values_.count(key))
        throw Error(ErrorKind::ConfigError,
                    origin + " line " + std::to_string(i + 1) +
                        ": duplicate key '" + key + "'");
      cfg.values_[key] = value;
      cfg.lines_[key] = i + 1;
    }
    return cfg;
  }

  static KeyValueConfig load(const std::string& path) {
    return parse(read_file(path), path);
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }

  std::string get(const std::string& key, const std::string& fallback) const {
    const auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
  }

  double get_double(const std::string& key, double fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      return parse_double(it->second, origin_);
    } catch (const Error&) {
      throw Error(ErrorKind::ConfigError, where(key) + ": '" + it->second +
                                              "' is not a number");
    }
  }

  long get_long(const std::string& key, long fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    try {
      return parse_long(it->second, origin_);
    } catch (const Error&) {
      throw Error(ErrorKind::ConfigError, where(key) + ": '" + it->second +
                                              "' is not an integer");
    }
  }

  bool get_bool(const std::string& key, bool fallback) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    throw Error(ErrorKind::ConfigError,
                where(key) + ": '" + it->second + "' is not a boolean");
  }

  std::vector<std::string> get_list(const std::string& key) const {
    std::vector<std::string> out;
    const auto it = values_.find(key);
    if (it == values_.end()) return out;
    for (const auto& part : split(it->second, ',')) {
      const std::string sym = trim(part);
      if (!sym.empty()) out.push_back(sym);
    }
    return out;
  }

  // Rejects keys outside the allowed set, pointing at the bad line.
  void require_known(const std::set<std::string>& allowed) const {
    for (const auto& [key, value] : values_) {
      (void)value;
      if (!allowed.count(key))
        throw Error(ErrorKind::ConfigError,
                    where(key) + ": unknown key '" + key + "'");
    }
  }

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::string where(const std::string& key) const {
    const auto it = lines_.find(key);
    const std::size_t line = it == lines_.end() ? 0 : it->second;
    return origin_ + " line " + std::to_string(line);
  }

  std::string origin_ = "<config>";
  std::map<std::string, std::string> values_;
  std::map<std::string, std::size_t> lines_;
};

}  // namespace phonoq
