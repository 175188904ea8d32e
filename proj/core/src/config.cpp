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

#include "nqca/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>

#include "nqca/error.hpp"

namespace nqca {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_key(std::string_view key) {
  return !key.empty() && std::all_of(key.begin(), key.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
  });
}

bool plain_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

[[noreturn]] void bad_number(std::string_view text, std::string_view key) {
  throw ConfigError(std::string(key), "value '" + std::string(text) +
                                          "' for key '" + std::string(key) +
                                          "' is not a number");
}

}  // namespace

double parse_number(std::string_view text, std::string_view key) {
  text = trim(text);
  double value = 0.0;
  if (plain_double(text, value)) return value;

  const auto at = text.find("pi");
  if (at == std::string_view::npos) bad_number(text, key);

  std::string_view coeff = trim(text.substr(0, at));
  std::string_view rest = trim(text.substr(at + 2));
  if (!coeff.empty() && coeff.back() == '*') coeff = trim(coeff.substr(0, coeff.size() - 1));

  double scale = 1.0;
  if (coeff == "-") {
    scale = -1.0;
  } else if (!coeff.empty() && !plain_double(coeff, scale)) {
    bad_number(text, key);
  }
  double divisor = 1.0;
  if (!rest.empty()) {
    if (rest.front() != '/') bad_number(text, key);
    if (!plain_double(trim(rest.substr(1)), divisor) || divisor == 0.0) {
      bad_number(text, key);
    }
  }
  return scale * std::numbers::pi / divisor;
}

KeyValueConfig KeyValueConfig::parse(std::istream& in, std::string source) {
  KeyValueConfig config;
  config.source_ = std::move(source);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    const std::string where = config.source_ + ":" + std::to_string(number);
    if (eq == std::string_view::npos) {
      throw ConfigError("", where + ": expected 'key = value'");
    }
    const std::string_view key = trim(view.substr(0, eq));
    const std::string_view value = trim(view.substr(eq + 1));
    if (!valid_key(key)) {
      throw ConfigError(std::string(key), where + ": invalid key '" +
                                              std::string(key) + "'");
    }
    if (config.find(key) != nullptr) {
      throw ConfigError(std::string(key), where + ": duplicate key '" +
                                              std::string(key) + "'");
    }
    config.entries_.push_back({std::string(key), std::string(value), number});
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path.string(), "cannot open config file");
  return parse(in, path.string());
}

const KeyValueConfig::Entry* KeyValueConfig::find(std::string_view key) const {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.key == key; });
  return it == entries_.end() ? nullptr : &*it;
}

KeyValueConfig::Entry* KeyValueConfig::find(std::string_view key) {
  const auto it = std::find_if(entries_.begin(), entries_.end(),
                               [&](const Entry& e) { return e.key == key; });
  return it == entries_.end() ? nullptr : &*it;
}

bool KeyValueConfig::has(std::string_view key) const {
  return find(key) != nullptr;
}

const std::string& KeyValueConfig::raw(std::string_view key) const {
  const Entry* entry = find(key);
  if (entry == nullptr) {
    throw ConfigError(std::string(key), source_ + ": missing required key '" +
                                            std::string(key) + "'");
  }
  return entry->value;
}

void KeyValueConfig::apply_override(std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("", "override '" + std::string(assignment) +
                              "' is not of the form key=value");
  }
  const std::string_view key = trim(assignment.substr(0, eq));
  const std::string_view value = trim(assignment.substr(eq + 1));
  Entry* entry = find(key);
  if (entry == nullptr) {
    throw ConfigError(std::string(key), "override of key '" + std::string(key) +
                                            "' which is not present in " +
                                            source_);
  }
  entry->value = std::string(value);
}

void KeyValueConfig::set(std::string_view key, std::string value) {
  if (!valid_key(key)) {
    throw ConfigError(std::string(key), "invalid key '" + std::string(key) + "'");
  }
  if (Entry* entry = find(key)) {
    entry->value = std::move(value);
  } else {
    entries_.push_back({std::string(key), std::move(value), 0});
  }
}

std::string KeyValueConfig::text(std::string_view key) const {
  return raw(key);
}

double KeyValueConfig::number(std::string_view key) const {
  return parse_number(raw(key), key);
}

int KeyValueConfig::integer(std::string_view key) const {
  const std::string& value = raw(key);
  int out = 0;
  const char* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(std::string(key), "value '" + value + "' for key '" +
                                            std::string(key) +
                                            "' is not an integer");
  }
  return out;
}

bool KeyValueConfig::boolean(std::string_view key) const {
  const std::string& value = raw(key);
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError(std::string(key), "value '" + value + "' for key '" +
                                          std::string(key) +
                                          "' is not a boolean");
}

std::vector<double> KeyValueConfig::numbers(std::string_view key) const {
  std::vector<double> out;
  std::string_view rest = raw(key);
  while (true) {
    const auto comma = rest.find(',');
    out.push_back(parse_number(rest.substr(0, comma), key));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return out;
}

void KeyValueConfig::reject_unknown(
    const std::vector<std::string_view>& allowed) const {
  for (const Entry& e : entries_) {
    if (std::find(allowed.begin(), allowed.end(), e.key) == allowed.end()) {
      throw ConfigError(e.key, source_ + ":" + std::to_string(e.line) +
                                   ": unknown key '" + e.key + "'");
    }
  }
}

}  // namespace nqca
