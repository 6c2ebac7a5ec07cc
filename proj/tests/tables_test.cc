// Copyright 2026 The FDP Accountant Authors
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

#include "fdp/tables.h"

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "reference_values.h"

namespace fdp {
namespace {

using testing::kTableTolerance;

TEST(Tables, GdStronglyConvex) {
  const Table t = *GdScTable();
  ASSERT_EQ(t.rows.size(), 15u);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 5; ++j) {
      const auto& row = t.rows[i * 5 + j];
      EXPECT_NEAR(row[2], testing::kGdScMu[i][j], kTableTolerance)
          << "t=" << row[0] << " c=" << row[1];
      EXPECT_NEAR(row[3], testing::kGdScComposition[i], kTableTolerance);
    }
  }
}

TEST(Tables, CgdStronglyConvex) {
  const Table t = *CgdScTable();
  ASSERT_EQ(t.rows.size(), 27u);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const auto& row = t.rows[(i * 3 + j) * 3 + k];
        EXPECT_NEAR(row[3], testing::kCgdScMu[i][j][k], kTableTolerance)
            << "l=" << row[0] << " c=" << row[1] << " E=" << row[2];
        EXPECT_NEAR(row[4], testing::kCgdScComposition[k], kTableTolerance);
      }
    }
  }
}

TEST(Tables, GdProjected) {
  const Table t = *GdProjTable();
  ASSERT_EQ(t.rows.size(), 9u);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto& row = t.rows[i * 3 + j];
      EXPECT_NEAR(row[3], testing::kGdProjMu[i][j], kTableTolerance);
      EXPECT_EQ(row[2], testing::kGdProjTStar[i][j]);
    }
  }
}

TEST(Tables, CgdProjected) {
  const Table t = *CgdProjTable();
  ASSERT_EQ(t.rows.size(), 27u);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const auto& row = t.rows[(i * 3 + j) * 3 + k];
        EXPECT_NEAR(row[4], testing::kCgdProjMu[i][j][k], kTableTolerance)
            << "l=" << row[0] << " L/b=" << row[1] << " eta=" << row[2];
      }
    }
  }
}

TEST(Tables, LookupAndCsv) {
  for (const std::string& name : TableNames()) {
    EXPECT_TRUE(TableByName(name).ok()) << name;
  }
  EXPECT_EQ(TableByName("nope").status().code(),
            absl::StatusCode::kInvalidArgument);
  std::ostringstream os;
  WriteTableCsv(*GdScTable(), os);
  const std::string text = os.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "t,c,mu,composition");
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 16);
}

}  // namespace
}  // namespace fdp
