// Copyright 2026 The nqca Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Flat "key = value" configuration files.
//
//   # comment
//   schema_version = 1
//   kind = scenario
//   xi = 0, 0.25, 1        # lists are comma separated
//   phi_sum = pi           # numbers accept pi, k*pi, pi/k, k*pi/m
//
// Keys are unique. Overrides (`key=value`) may only replace keys that the
// file already defines.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace nqca {

inline constexpr int kSchemaVersion = 1;

double parse_number(std::string_view text, std::string_view key = {});

class KeyValueConfig {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };

  static KeyValueConfig parse(std::istream& in, std::string source = "<input>");
  static KeyValueConfig load(const std::filesystem::path& path);

  const std::string& source() const noexcept { return source_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  bool has(std::string_view key) const;
  const std::string& raw(std::string_view key) const;

  /// "key=value"; throws ConfigError if the key is not already present.
  void apply_override(std::string_view assignment);
  void set(std::string_view key, std::string value);

  std::string text(std::string_view key) const;
  double number(std::string_view key) const;
  int integer(std::string_view key) const;
  bool boolean(std::string_view key) const;
  std::vector<double> numbers(std::string_view key) const;

  /// Throws ConfigError naming the first key not in `allowed`.
  void reject_unknown(const std::vector<std::string_view>& allowed) const;

 private:
  const Entry* find(std::string_view key) const;
  Entry* find(std::string_view key);

  std::string source_;
  std::vector<Entry> entries_;
};

}  // namespace nqca
