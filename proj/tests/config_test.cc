// Copyright 2026 The netdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netdp/config.h"

#include <vector>

#include "gtest/gtest.h"

namespace netdp {
namespace {

TEST(ConfigTest, ParsesValuesAndComments) {
  auto config = Config::Parse(
      "# comment\n"
      "n = 200\n"
      "eps = 0.5  # trailing\n"
      "\n"
      "grid = 1, 2,3\n"
      "flag = true\n"
      "name = synthetic\n");
  ASSERT_TRUE(config.ok());
  EXPECT_EQ(*config->GetInt("n", 0), 200);
  EXPECT_DOUBLE_EQ(*config->GetDouble("eps", 0), 0.5);
  EXPECT_EQ(*config->GetIntList("grid", ""), (std::vector<int64_t>{1, 2, 3}));
  EXPECT_TRUE(*config->GetBool("flag", false));
  EXPECT_EQ(config->GetString("name", ""), "synthetic");
  EXPECT_TRUE(config->CheckAllUsed().ok());
}

TEST(ConfigTest, DefaultsAreRecorded) {
  Config config;
  EXPECT_EQ(*config.GetInt("runs", 7), 7);
  EXPECT_EQ(*config.GetDoubleList("etas", "0.1,0.2"),
            (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(config.resolved()["runs"], 7);
  EXPECT_EQ(config.resolved().begin().key(), "runs");
}

TEST(ConfigTest, RejectsMalformedLines) {
  EXPECT_FALSE(Config::Parse("no equals sign\n").ok());
  EXPECT_FALSE(Config::Parse("= 3\n").ok());
}

TEST(ConfigTest, RejectsBadNumbers) {
  auto config = Config::Parse("n = abc\nx = 1.5\n");
  ASSERT_TRUE(config.ok());
  EXPECT_FALSE(config->GetInt("n", 0).ok());
  EXPECT_FALSE(config->GetInt("x", 0).ok());
  EXPECT_FALSE(config->GetBool("x", false).ok());
}

TEST(ConfigTest, UnknownKeysAreReported) {
  auto config = Config::Parse("n = 3\ntypo = 4\n");
  ASSERT_TRUE(config.ok());
  ASSERT_TRUE(config->GetInt("n", 0).ok());
  const absl::Status s = config->CheckAllUsed();
  EXPECT_EQ(s.code(), absl::StatusCode::kInvalidArgument);
  EXPECT_NE(s.message().find("typo"), absl::string_view::npos);
}

TEST(ConfigTest, OverridesFromCommandLine) {
  auto config = Config::Parse("n = 3\n");
  ASSERT_TRUE(config.ok());
  ASSERT_TRUE(config->SetFromString("n=9").ok());
  EXPECT_FALSE(config->SetFromString("n").ok());
  EXPECT_EQ(*config->GetInt("n", 0), 9);
}

TEST(ConfigTest, MissingFile) {
  EXPECT_FALSE(Config::Load("/nonexistent/netdp.cfg").ok());
}

}  // namespace
}  // namespace netdp
