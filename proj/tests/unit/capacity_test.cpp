// Copyright 2026 The pcsi Authors
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

#include <gtest/gtest.h>

#include <json.hpp>

#include "pcsi/capacity/capacity.hpp"
#include "pcsi/error.hpp"

namespace pcsi {
namespace {

uint32_t smallest_cover(uint32_t K, uint32_t size) {
  uint32_t n = 0;
  while (n * size < K) ++n;
  return n;
}

TEST(CapacityTest, Examples) {
  EXPECT_EQ(ipc_capacity(12, 2, 2), Rational(1, 3));
  EXPECT_EQ(ipc_capacity(11, 2, 2), Rational(1, 3));
  EXPECT_EQ(ipc_capacity(4, 2, 2), Rational(1));
  EXPECT_EQ(jpc_si_lower(12, 2, 2), Rational(1, 5));
  EXPECT_EQ(jpc_csi_lower(12, 2, 2), Rational(1, 5));
  EXPECT_FALSE(jpc_csi_lower(11, 2, 2).has_value());
  EXPECT_EQ(jpc_si_lower(11, 2, 2), Rational(1, 5));
  EXPECT_EQ(jpc_si_lower(10, 3, 1), Rational(1, 3));
  EXPECT_THROW(ipc_capacity(3, 2, 2), Error);
  EXPECT_THROW(ipc_capacity(3, 1, 0), Error);
}

TEST(CapacityTest, MatchesCoveringOracle) {
  for (uint32_t K = 1; K <= 30; ++K)
    for (uint32_t D = 1; D <= K; ++D)
      for (uint32_t M = 0; M + D <= K; ++M) {
        EXPECT_EQ(ipc_capacity(K, M, D), Rational(1, smallest_cover(K, M + D)));
        uint32_t s = M / D + 1;
        EXPECT_EQ(jpc_si_lower(K, M, D), Rational(1, smallest_cover(K - M - D, s) + 1));
      }
}

// Individual privacy is never more expensive than joint privacy, and costs
// grow with K.
TEST(CapacityTest, Invariants) {
  for (uint32_t D = 1; D <= 4; ++D)
    for (uint32_t M = 0; M <= 6; ++M)
      for (uint32_t K = M + D; K <= 40; ++K) {
        EXPECT_GE(ipc_capacity(K, M, D), jpc_si_lower(K, M, D));
        if (auto c = jpc_csi_lower(K, M, D)) EXPECT_EQ(*c, jpc_si_lower(K, M, D));
        if (K > M + D) {
          EXPECT_LE(ipc_capacity(K, M, D), ipc_capacity(K - 1, M, D));
          EXPECT_LE(jpc_si_lower(K, M, D), jpc_si_lower(K - 1, M, D));
        }
      }
}

TEST(CapacityTest, EntriesAndGrid) {
  auto e = capacity_entries(11, 2, 2);
  ASSERT_EQ(e.size(), 4u);
  EXPECT_EQ(e[0].setting, "IPC-SI");
  EXPECT_EQ(e[1].setting, "IPC-CSI");
  EXPECT_EQ(e[2].setting, "JPC-SI");
  EXPECT_EQ(e[3].setting, "JPC-CSI");
  EXPECT_EQ(e[0].kind, BoundKind::kExact);
  EXPECT_EQ(e[2].kind, BoundKind::kLowerBound);
  EXPECT_EQ(e[3].kind, BoundKind::kNotCovered);
  EXPECT_FALSE(e[3].rate.has_value());
  EXPECT_EQ(*e[2].cost, Rational(5));

  auto g = capacity_grid(1, 12, 2, 2);
  EXPECT_EQ(g.size(), 4u * 9);
  EXPECT_EQ(g.front().K, 4u);
  EXPECT_EQ(g.back().K, 12u);
  EXPECT_THROW(capacity_grid(5, 4, 1, 1), Error);
}

TEST(CapacityTest, ComparisonTable) {
  auto rows = comparison_table(12, 2, 2);
  ASSERT_EQ(rows.size(), 5u);
  std::vector<std::string> names;
  std::vector<Rational> costs;
  for (const auto& r : rows) {
    names.push_back(r.setting);
    costs.push_back(*r.cost);
    EXPECT_EQ(*r.rate * *r.cost, Rational(1));
  }
  EXPECT_EQ(names, (std::vector<std::string>{"IPC", "IPIR-SI", "JPC-SI", "JPIR-retrieve-two",
                                             "JPIR-CSI"}));
  EXPECT_EQ(costs, (std::vector<Rational>{Rational(3), Rational(6), Rational(5), Rational(8),
                                          Rational(11)}));
  EXPECT_EQ(comparison_table(12, 1, 2).size(), 4u);
  // Private computation beats the retrieval baselines on the same instance.
  for (uint32_t K = 5; K <= 30; ++K) {
    auto t = comparison_table(K, 2, 2);
    EXPECT_LE(*t[0].cost, *t[1].cost) << K;
    EXPECT_LE(*t[2].cost, *t[3].cost) << K;
    EXPECT_LE(*t[2].cost, *t[4].cost) << K;
  }
}

TEST(CapacityTest, Formats) {
  auto rows = capacity_entries(5, 2, 2);
  std::string csv = format_table(rows, TableFormat::kCsv);
  EXPECT_EQ(csv,
            "K,M,D,setting,rate,cost,kind\n"
            "5,2,2,IPC-SI,1/2,2,exact\n"
            "5,2,2,IPC-CSI,1/2,2,exact\n"
            "5,2,2,JPC-SI,1/2,2,lower-bound\n"
            "5,2,2,JPC-CSI,,,not-covered\n");
  auto j = nlohmann::json::parse(format_table(rows, TableFormat::kJson));
  ASSERT_EQ(j.size(), 4u);
  EXPECT_EQ(j[0]["rate"], "1/2");
  EXPECT_TRUE(j[3]["rate"].is_null());
  EXPECT_NE(format_table(rows, TableFormat::kText).find("not-covered"), std::string::npos);
  EXPECT_EQ(parse_table_format("json"), TableFormat::kJson);
  EXPECT_THROW(parse_table_format("xml"), Error);
}

}  // namespace
}  // namespace pcsi
