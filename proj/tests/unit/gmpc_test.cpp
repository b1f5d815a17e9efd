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

#include <boost/math/distributions/chi_squared.hpp>
#include <map>

#include "pcsi/error.hpp"
#include "pcsi/gmpc/gmpc.hpp"
#include "pcsi/gmpc/gmpc_json.hpp"
#include "pcsi/model/json_io.hpp"
#include "pcsi/verify/decodability.hpp"
#include "support/oracles.hpp"

namespace pcsi {
namespace {

std::string forms(const Query& q) {
  std::string s;
  for (const auto& p : q.parts) s += format_linear_form(part_form(p)) + ";";
  return s;
}

TEST(GmpcParamsTest, WorkedExamples) {
  GmpcParams p = gmpc_params(ProblemInstance(12, 2, 2, 7));
  EXPECT_EQ(p.n, 3u);
  EXPECT_EQ(p.m, 0u);
  EXPECT_EQ(p.r, 4u);
  EXPECT_EQ(p.alpha, Rational(2, 3));
  EXPECT_EQ(p.beta, Rational(1, 4));
  EXPECT_EQ(p.mu, 0u);
  EXPECT_EQ(p.rho, 2u);

  p = gmpc_params(ProblemInstance(11, 2, 2, 7));
  EXPECT_EQ(p.n, 3u);
  EXPECT_EQ(p.m, 1u);
  EXPECT_EQ(p.r, 3u);
  EXPECT_EQ(p.alpha, Rational(7, 11));
  EXPECT_EQ(p.beta, Rational(2, 7));
  EXPECT_EQ(p.mu, 1u);
  EXPECT_EQ(p.rho, 2u);
  EXPECT_EQ(p.blocks[2], (std::vector<uint32_t>{1, 9, 10, 11}));

  p = gmpc_params(ProblemInstance(8, 2, 2, 3));
  EXPECT_EQ(p.n, 2u);
  EXPECT_EQ(p.m, 0u);
  EXPECT_EQ(p.r, 4u);
  EXPECT_EQ(p.alpha, Rational(1));
}

TEST(GmpcParamsTest, BetaTableCases) {
  // D <= m, D <= r.
  GmpcParams p = gmpc_params(ProblemInstance(7, 2, 1, 3));
  EXPECT_EQ(p.m, 2u);
  EXPECT_EQ(p.r, 1u);
  EXPECT_EQ(p.beta, Rational(2, 4));
  // D > m, D <= r.
  EXPECT_EQ(gmpc_params(ProblemInstance(12, 2, 2, 7)).beta, Rational(2, 8));
  // D <= m, D > r.
  p = gmpc_params(ProblemInstance(5, 2, 2, 3));
  EXPECT_EQ(p.m, 3u);
  EXPECT_EQ(p.r, 1u);
  EXPECT_EQ(p.beta, Rational(1, 5));
  // D > m, D > r, M > 0.
  p = gmpc_params(ProblemInstance(10, 1, 3, 5));
  EXPECT_EQ(p.m, 2u);
  EXPECT_EQ(p.r, 2u);
  EXPECT_EQ(p.beta, Rational(0));
  EXPECT_FALSE(p.beta_m0_rule);
}

TEST(GmpcParamsTest, RemainderNeverZero) {
  for (uint32_t K = 1; K <= 20; ++K)
    for (uint32_t D = 1; D <= K; ++D)
      for (uint32_t M = 0; M + D <= K; ++M) {
        GmpcParams p = gmpc_params(ProblemInstance(K, M, D, 3));
        EXPECT_GE(p.r, 1u);
        EXPECT_EQ(p.m + p.r, M + D);
        EXPECT_EQ(p.n * (M + D) - p.m, K);
      }
}

TEST(GmpcParamsTest, BetaOutOfRangeIsFlagged) {
  ProblemInstance inst(8, 1, 5, 7);
  GmpcParams p = gmpc_params(inst);
  EXPECT_TRUE(p.beta_out_of_range);
  EXPECT_EQ(p.beta, Rational(-1, 2));
  Scenario sc = sample_scenario(inst, 1);
  CounterRng rng(1);
  EXPECT_THROW(gmpc_query(inst, sc, rng), Error);
}

TEST(GmpcParamsTest, ZeroSideInformationRule) {
  GmpcParams p = gmpc_params(ProblemInstance(5, 0, 2, 3));
  EXPECT_TRUE(p.beta_m0_rule);
  EXPECT_EQ(p.beta, Rational(0));
  EXPECT_FALSE(p.beta_out_of_range);
}

struct Replay {
  GmpcFixture fx;
  Scenario sc;
  Query query;
  GmpcTrace trace;
};

Replay replay(const std::string& file) {
  GmpcFixture fx = gmpc_fixture_from_json(testing::read_fixture(file));
  CounterRng rng(1);
  Scenario sc = make_scenario(fx.instance, sample_dataset(fx.instance, rng), fx.tuple);
  auto [q, t] = gmpc_query(fx.instance, sc, fx.trace);
  return {fx, sc, q, t};
}

TEST(GoldenGmpc, ExampleOne) {
  Replay r = replay("example1.json");
  EXPECT_EQ(query_to_json(r.query),
            R"({"parts":[{"indices":[2,4,1,3],"coeffs":[3,1,1,5]},)"
            R"({"indices":[10,8,6,5],"coeffs":[3,1,1,5]},)"
            R"({"indices":[11,9,12,7],"coeffs":[3,1,1,5]}]})");
  EXPECT_EQ(forms(r.query), "3X_2+X_4+X_1+5X_3;3X_10+X_8+X_6+5X_5;3X_11+X_9+X_12+5X_7;");
  EXPECT_EQ(gmpc_recover(r.fx.instance, gmpc_answer(r.query, r.sc.dataset), r.trace, r.sc),
            r.sc.Z);
  EXPECT_EQ(GmpcProtocol(r.fx.instance).permutation(r.trace),
            (std::vector<Index>{2, 4, 1, 3, 10, 8, 6, 5, 11, 9, 12, 7}));
  EXPECT_EQ(r.trace.weight, Rational(1, 11612160));
}

TEST(GoldenGmpc, ExampleTwo) {
  Replay r = replay("example2.json");
  EXPECT_EQ(r.query.parts[2].indices, (std::vector<Index>{2, 11, 9, 7}));
  EXPECT_EQ(forms(r.query), "3X_2+X_4+X_1+5X_3;3X_10+X_8+X_6+5X_5;3X_2+X_11+X_9+5X_7;");
  EXPECT_EQ(gmpc_recover(r.fx.instance, gmpc_answer(r.query, r.sc.dataset), r.trace, r.sc),
            r.sc.Z);
  EXPECT_EQ(r.trace.branch, GmpcBranch::kBeta);
  EXPECT_EQ(r.trace.weight, Rational(1, 665280));
}

TEST(GoldenGmpc, ExampleOneIsDecodable) {
  Replay r = replay("example1.json");
  std::vector<Index> S{3, 4}, W{1, 2};
  std::vector<uint32_t> V{1, 3};
  EXPECT_TRUE(decodable(system_with_side_rows(r.query, r.fx.instance, S), demand_form(12, W, V)));
}

TEST(GmpcTraceTest, ImpossibleScriptsAreRejected) {
  GmpcFixture fx = gmpc_fixture_from_json(testing::read_fixture("example1.json"));
  CounterRng rng(1);
  Scenario sc = make_scenario(fx.instance, sample_dataset(fx.instance, rng), fx.tuple);
  GmpcTrace t = fx.trace;
  std::swap(t.block_assignment[0], t.rest_assignment[0]);
  EXPECT_THROW(gmpc_query(fx.instance, sc, t), Error);
  t = fx.trace;
  t.rest_assignment.pop_back();
  EXPECT_THROW(gmpc_query(fx.instance, sc, t), Error);
  t = fx.trace;
  t.branch = GmpcBranch::kMiddle;
  EXPECT_THROW(gmpc_query(fx.instance, sc, t), Error);
}

TEST(GmpcTraceTest, JsonRoundTrip) {
  GmpcFixture fx = gmpc_fixture_from_json(testing::read_fixture("example2.json"));
  GmpcTrace back = gmpc_trace_from_json(gmpc_trace_to_json(fx.trace));
  EXPECT_EQ(back, fx.trace);
  EXPECT_THROW(gmpc_trace_from_json(R"({"l_star":1})"), Error);
}

// Every enumerated trace carries the closed-form weight, and the weights of
// one (W, S) sum to one.
TEST(GmpcEnumerationTest, WeightsMatchClosedFormAndSumToOne) {
  for (auto [K, M, D] : std::vector<std::array<uint32_t, 3>>{
           {4, 2, 2}, {5, 1, 1}, {6, 1, 2}, {7, 2, 1}, {9, 2, 2}, {5, 0, 2}, {7, 1, 2}}) {
    ProblemInstance inst(K, M, D, 3);
    GmpcProtocol proto(inst);
    CounterRng rng(K * 100 + M * 10 + D);
    DemandTuple tuple = sample_tuple(inst, rng);
    Rational total(0);
    uint64_t runs = enumerate_gmpc_traces(inst, tuple, [&](const Query&, const GmpcTrace& t) {
      EXPECT_EQ(t.weight, proto.trace_weight(t));
      proto.validate_trace(t, tuple.W, tuple.S);
      total += t.weight;
    });
    EXPECT_GT(runs, 0u);
    EXPECT_EQ(total, Rational(1)) << K << " " << M << " " << D;
  }
}

TEST(GmpcEnumerationTest, SingleBlockFamily) {
  ProblemInstance inst(4, 2, 2, 3);
  DemandTuple tuple{{1, 3}, {inst.element(1), inst.element(2)}, {2, 4},
                    {inst.element(1), inst.element(1)}};
  uint64_t runs = enumerate_gmpc_traces(inst, tuple, [&](const Query& q, const GmpcTrace& t) {
    EXPECT_EQ(q.parts.size(), 1u);
    EXPECT_EQ(t.branch, GmpcBranch::kSingle);
    EXPECT_EQ(t.weight, Rational(1, 24));
  });
  EXPECT_EQ(runs, 24u);
}

TEST(GmpcEnumerationTest, BudgetIsEnforced) {
  ProblemInstance inst(8, 2, 2, 3);
  CounterRng rng(1);
  DemandTuple tuple = sample_tuple(inst, rng);
  EXPECT_THROW(enumerate_gmpc_traces(inst, tuple, [](const Query&, const GmpcTrace&) {}, 10),
               BudgetExceeded);
}

TEST(GmpcSamplingTest, SamplerFollowsTraceWeights) {
  ProblemInstance inst(5, 1, 1, 3);
  DemandTuple tuple{{2}, {inst.element(1)}, {4}, {inst.element(2)}};
  Scenario sc = make_scenario(inst, std::vector<Message>(5, Message::zero(1, inst.field())), tuple);
  std::map<std::string, Rational> expected;
  enumerate_gmpc_traces(inst, tuple, [&](const Query&, const GmpcTrace& t) {
    expected[gmpc_trace_to_json(GmpcTrace{t.l_star, t.branch, t.overlap_assignment,
                                          t.block_assignment, t.rest_assignment, Rational(0)})] +=
        t.weight;
  });
  std::map<std::string, uint64_t> counts;
  const uint64_t n = 60000;
  for (uint64_t k = 0; k < n; ++k) {
    CounterRng rng(17, k);
    auto [q, t] = gmpc_query(inst, sc, rng);
    t.weight = Rational(0);
    ++counts[gmpc_trace_to_json(t)];
  }
  double chi = 0;
  for (const auto& [key, p] : expected) {
    double e = n * p.to_double();
    chi += (counts[key] - e) * (counts[key] - e) / e;
  }
  for (const auto& [key, c] : counts) EXPECT_TRUE(expected.count(key)) << key;
  double crit = boost::math::quantile(
      boost::math::chi_squared(static_cast<double>(expected.size() - 1)), 0.999);
  EXPECT_LT(chi, crit);
}

TEST(GmpcRecoveryTest, RandomScenariosRecover) {
  for (auto [K, M, D, q] : std::vector<std::array<uint32_t, 4>>{
           {12, 2, 2, 7}, {11, 2, 2, 7}, {9, 0, 2, 5}, {10, 3, 1, 3}, {4, 2, 2, 3}, {13, 2, 3, 11}}) {
    for (SideInfo mode : {SideInfo::kCoded, SideInfo::kUncoded}) {
      ProblemInstance inst(K, M, D, q, 3, mode);
      for (uint64_t s = 0; s < 30; ++s) {
        Scenario sc = sample_scenario(inst, s);
        CounterRng rng(s, 9);
        auto [query, trace] = gmpc_query(inst, sc, rng);
        Answer a = gmpc_answer(query, sc.dataset);
        auto naive = testing::naive_answers(query, sc.dataset);
        for (size_t l = 0; l < a.symbols.size(); ++l)
          for (size_t e = 0; e < 3; ++e) EXPECT_EQ(a.symbols[l][e].value(), naive[l][e]);
        EXPECT_EQ(gmpc_recover(inst, a, trace, sc), sc.Z);
        EXPECT_EQ(measured_rate(query, inst), Rational(1, (K + M + D - 1) / (M + D)));
      }
    }
  }
}

TEST(GmpcRecoveryTest, NoSideInformationReturnsAnswer) {
  ProblemInstance inst(6, 0, 2, 5);
  Scenario sc = sample_scenario(inst, 4);
  CounterRng rng(2);
  auto [query, trace] = gmpc_query(inst, sc, rng);
  Answer a = gmpc_answer(query, sc.dataset);
  EXPECT_EQ(gmpc_recover(inst, a, trace, sc), a.symbols[trace.l_star - 1]);
}

}  // namespace
}  // namespace pcsi
