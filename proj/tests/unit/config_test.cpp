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

#include <numbers>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "nqca/error.hpp"

namespace nqca {
namespace {

constexpr double kPi = std::numbers::pi;

KeyValueConfig parse(const std::string& text) {
  std::istringstream in(text);
  return KeyValueConfig::parse(in, "test.cfg");
}

TEST(ParseNumber, PlainAndPiForms) {
  EXPECT_DOUBLE_EQ(parse_number("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_number("+3"), 3.0);
  EXPECT_DOUBLE_EQ(parse_number("1e-3"), 1e-3);
  EXPECT_DOUBLE_EQ(parse_number("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_number("-pi"), -kPi);
  EXPECT_DOUBLE_EQ(parse_number("2pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_number("2*pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_number("pi/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_number(" 3*pi/4 "), 3 * kPi / 4);
}

TEST(ParseNumber, RejectsGarbage) {
  for (const char* bad : {"", "abc", "pi/0", "2+pi", "pi*2", "1.0x", "nan", "inf"}) {
    EXPECT_THROW(parse_number(bad, "k"), ConfigError) << bad;
  }
}

TEST(KeyValueConfig, ParsesCommentsAndLists) {
  const KeyValueConfig c = parse(
      "# header\n"
      "schema_version = 1\n"
      "\n"
      "xi = 0, 0.05 ,1   # trailing comment\n"
      "name=fig\n"
      "flag = yes\n");
  EXPECT_EQ(c.entries().size(), 4u);
  EXPECT_EQ(c.integer("schema_version"), 1);
  EXPECT_EQ(c.numbers("xi"), (std::vector<double>{0.0, 0.05, 1.0}));
  EXPECT_EQ(c.text("name"), "fig");
  EXPECT_TRUE(c.boolean("flag"));
  EXPECT_FALSE(c.has("missing"));
}

TEST(KeyValueConfig, Errors) {
  EXPECT_THROW(parse("a = 1\na = 2\n"), ConfigError);
  EXPECT_THROW(parse("just text\n"), ConfigError);
  EXPECT_THROW(parse("bad key = 1\n"), ConfigError);
  const KeyValueConfig c = parse("n = 1.5\nb = maybe\n");
  EXPECT_THROW(c.integer("n"), ConfigError);
  EXPECT_THROW(c.boolean("b"), ConfigError);
  try {
    c.raw("absent");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "absent");
  }
}

TEST(KeyValueConfig, OverridesOnlyReplaceExistingKeys) {
  KeyValueConfig c = parse("xi = 0, 1\np = 0.7\n");
  c.apply_override("xi=0");
  EXPECT_EQ(c.numbers("xi"), (std::vector<double>{0.0}));
  c.apply_override(" p = pi/4 ");
  EXPECT_DOUBLE_EQ(c.number("p"), kPi / 4);
  try {
    c.apply_override("q=0.5");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "q");
  }
  EXPECT_THROW(c.apply_override("novalue"), ConfigError);
}

TEST(KeyValueConfig, RejectUnknownNamesTheKey) {
  const KeyValueConfig c = parse("p = 1\nwhat = 2\n");
  try {
    c.reject_unknown({"p"});
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.key(), "what");
    EXPECT_NE(std::string(e.what()).find("test.cfg:2"), std::string::npos);
  }
  EXPECT_NO_THROW(c.reject_unknown({"p", "what"}));
}

TEST(KeyValueConfig, LoadMissingFileIsIoError) {
  EXPECT_THROW(KeyValueConfig::load("/nonexistent/dir/none.scenario"), IoError);
}

}  // namespace
}  // namespace nqca
