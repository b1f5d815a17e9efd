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

#include <map>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/error.hpp"
#include "pcsi/gmpc/gmpc.hpp"
#include "pcsi/model/json_io.hpp"
#include "pcsi/pcia/pcia.hpp"
#include "pcsi/verify/decodability.hpp"
#include "pcsi/verify/lemmas.hpp"
#include "pcsi/verify/monte_carlo.hpp"
#include "pcsi/verify/posterior.hpp"
#include "support/demand_first.hpp"
#include "support/oracles.hpp"

namespace pcsi {
namespace {

Query make_query(const ProblemInstance& inst, std::vector<std::vector<Index>> idx,
                 std::vector<std::vector<uint32_t>> coeffs = {}) {
  Query q;
  for (size_t l = 0; l < idx.size(); ++l) {
    QueryPart p;
    p.indices = idx[l];
    for (size_t k = 0; k < idx[l].size(); ++k)
      p.coeffs.push_back(inst.element(coeffs.empty() ? 1 : coeffs[l][k]));
    q.parts.push_back(std::move(p));
  }
  return q;
}

// Engine output against explicit enumeration of tuples and runs.
void expect_matches_brute_force(const QueryProtocol& proto, PrivacyKind kind) {
  const ProblemInstance& inst = proto.instance();
  auto brute = testing::brute_force_posteriors(proto);
  VerifyOptions opt;
  opt.keep_queries = SIZE_MAX;
  PosteriorReport r = verify_privacy(proto, kind, opt);
  EXPECT_EQ(r.mass, Rational(1));
  ASSERT_EQ(r.queries, brute.size());
  ASSERT_EQ(r.retained.size(), brute.size());
  Rational mass(0);
  for (const QueryPosterior& qp : r.retained) {
    auto it = brute.find(query_to_json(qp.query));
    ASSERT_NE(it, brute.end()) << query_to_json(qp.query);
    const testing::BruteQuery& b = it->second;
    EXPECT_EQ(qp.probability, b.total);
    mass += b.total;
    Rational dev(0);
    for (const auto& [label, post] : qp.posteriors) {
      Rational expect(0);
      for (const auto& [w, pr] : b.by_w) {
        if (kind == PrivacyKind::kJoint ? w == label
                                        : std::find(w.begin(), w.end(), label[0]) != w.end())
          expect += pr;
      }
      expect = expect / b.total;
      EXPECT_EQ(post, expect);
      Rational d = post > r.target ? post - r.target : r.target - post;
      if (d > dev) dev = d;
    }
    EXPECT_EQ(qp.max_deviation, dev);
  }
  EXPECT_EQ(mass, Rational(1));
  Rational target = kind == PrivacyKind::kJoint
                        ? Rational(1, static_cast<long>(binomial(inst.K(), inst.D())))
                        : Rational(inst.D(), inst.K());
  EXPECT_EQ(r.target, target);
}

TEST(PosteriorEngineTest, GmpcMatchesBruteForce) {
  for (auto [K, M, D] : std::vector<std::array<uint32_t, 3>>{{4, 1, 1}, {4, 2, 1}, {5, 1, 1}, {4, 0, 2}}) {
    for (SideInfo mode : {SideInfo::kCoded, SideInfo::kUncoded}) {
      GmpcProtocol proto(ProblemInstance(K, M, D, 3, 1, mode));
      expect_matches_brute_force(proto, PrivacyKind::kIndividual);
    }
  }
}

TEST(PosteriorEngineTest, PciaMatchesBruteForce) {
  for (PciaPlacement placement : {PciaPlacement::kUniformSlots, PciaPlacement::kDistinctOwnBlocks}) {
    PciaProtocol proto(ProblemInstance(4, 1, 1, 3), placement);
    expect_matches_brute_force(proto, PrivacyKind::kJoint);
    expect_matches_brute_force(proto, PrivacyKind::kIndividual);
  }
}

TEST(PosteriorEngineTest, NegativeControlMatchesBruteForce) {
  testing::DemandFirstProtocol proto(ProblemInstance(5, 1, 1, 3));
  expect_matches_brute_force(proto, PrivacyKind::kIndividual);
}

TEST(PosteriorEngineTest, PosteriorsSumToDemandSize) {
  GmpcProtocol proto(ProblemInstance(7, 1, 2, 3));
  VerifyOptions opt;
  opt.keep_queries = 50;
  PosteriorReport r = posterior_individual(proto, opt);
  ASSERT_EQ(r.retained.size(), 50u);
  for (const auto& qp : r.retained) {
    Rational sum(0);
    for (const auto& [label, p] : qp.posteriors) sum += p;
    EXPECT_EQ(sum, Rational(2));
  }
  EXPECT_TRUE(r.pass());
}

TEST(PosteriorEngineTest, ThreadCountDoesNotChangeReport) {
  GmpcProtocol proto(ProblemInstance(7, 0, 2, 3));
  VerifyOptions one, two;
  one.threads = 1;
  two.threads = 2;
  one.keep_queries = two.keep_queries = 20;
  PosteriorReport a = posterior_individual(proto, one);
  PosteriorReport b = posterior_individual(proto, two);
  EXPECT_EQ(a.queries, b.queries);
  EXPECT_EQ(a.pairs, b.pairs);
  EXPECT_EQ(a.violating_queries, b.violating_queries);
  EXPECT_EQ(a.worst_deviation, b.worst_deviation);
  ASSERT_EQ(a.violations.size(), b.violations.size());
  for (size_t k = 0; k < a.violations.size(); ++k)
    EXPECT_EQ(a.violations[k].query, b.violations[k].query);
  ASSERT_EQ(a.retained.size(), b.retained.size());
  for (size_t k = 0; k < a.retained.size(); ++k)
    EXPECT_EQ(a.retained[k].posteriors, b.retained[k].posteriors);
}

TEST(PosteriorEngineTest, ZeroSideInformationOddKViolates) {
  PosteriorReport r = posterior_individual(GmpcProtocol(ProblemInstance(5, 0, 2, 3)));
  EXPECT_FALSE(r.pass());
  EXPECT_GT(r.violating_queries, 0u);
  EXPECT_EQ(r.worst_deviation, Rational(1, 5));
}

TEST(PosteriorEngineTest, BudgetIsEnforced) {
  VerifyOptions opt;
  opt.budget = 1000;
  EXPECT_THROW(posterior_individual(GmpcProtocol(ProblemInstance(8, 2, 2, 3)), opt),
               BudgetExceeded);
}

TEST(PosteriorEngineTest, NegativeControlIsFlagged) {
  testing::DemandFirstProtocol proto(ProblemInstance(6, 1, 1, 3));
  PosteriorReport r = posterior_individual(proto);
  EXPECT_FALSE(r.pass());
  EXPECT_EQ(r.violating_queries, r.queries);
  EXPECT_FALSE(posterior_joint(PciaProtocol(ProblemInstance(6, 2, 2, 7),
                                            PciaPlacement::kDistinctOwnBlocks))
                   .pass());
}

TEST(PosteriorEngineTest, VisitorSeesEveryQueryOnce) {
  GmpcProtocol proto(ProblemInstance(5, 1, 1, 3));
  std::map<std::string, int> seen;
  PosteriorReport r = posterior_individual(proto);
  verify_privacy(proto, PrivacyKind::kIndividual, {},
                 [&](const std::vector<std::vector<Index>>& parts, std::span<const uint32_t> c) {
                   ++seen[layout_key(parts) + std::string(c.begin(), c.end())];
                 });
  EXPECT_EQ(seen.size(), r.queries);
  for (const auto& [k, n] : seen) EXPECT_EQ(n, 1);
}

TEST(PosteriorEngineTest, SingleQueryAgreesWithFullRun) {
  for (PrivacyKind kind : {PrivacyKind::kIndividual, PrivacyKind::kJoint}) {
    GmpcProtocol proto(ProblemInstance(6, 1, 2, 3));
    VerifyOptions opt;
    opt.keep_queries = 30;
    PosteriorReport r = verify_privacy(proto, kind, opt);
    for (const auto& qp : r.retained) {
      QueryPosterior single = posterior_for_query(proto, qp.query, kind);
      EXPECT_EQ(single.probability, qp.probability);
      EXPECT_EQ(single.posteriors, qp.posteriors);
    }
  }
  GmpcProtocol proto(ProblemInstance(6, 1, 2, 3));
  Query unreachable = make_query(proto.instance(), {{1, 2, 3}, {4, 5, 6}, {1, 2, 3}});
  EXPECT_EQ(posterior_for_query(proto, unreachable, PrivacyKind::kIndividual).probability,
            Rational(0));
}

TEST(PosteriorEngineTest, LayoutKeyIsInjective) {
  EXPECT_NE(layout_key({{1, 2}, {3}}), layout_key({{1}, {2, 3}}));
  EXPECT_NE(layout_key({{1, 2}}), layout_key({{2, 1}}));
  EXPECT_EQ(layout_key({{5, 300}}), layout_key({{5, 300}}));
  EXPECT_NE(layout_key({{256}}), layout_key({{1}}));
}

TEST(MonteCarloTest, RejectsTooFewTrials) {
  McOptions opt;
  opt.trials = 999;
  EXPECT_THROW(monte_carlo_privacy(GmpcProtocol(ProblemInstance(4, 1, 1, 3)),
                                   PrivacyKind::kIndividual, opt),
               Error);
}

TEST(MonteCarloTest, BinomialIntervalCoversMass) {
  auto [lo, hi] = binomial_interval(1000, Rational(1, 4), 0.99);
  EXPECT_LT(lo, 250u);
  EXPECT_GT(hi, 250u);
  EXPECT_GT(lo, 200u);
  EXPECT_LT(hi, 300u);
  auto [lo1, hi1] = binomial_interval(50, Rational(1), 0.99);
  EXPECT_EQ(lo1, 50u);
  EXPECT_EQ(hi1, 50u);
  auto [lo0, hi0] = binomial_interval(50, Rational(0), 0.99);
  EXPECT_EQ(lo0, 0u);
  EXPECT_EQ(hi0, 0u);
}

TEST(MonteCarloTest, PrivateProtocolPasses) {
  McOptions opt;
  opt.trials = 20000;
  McReport r = monte_carlo_privacy(GmpcProtocol(ProblemInstance(12, 2, 2, 7)),
                                   PrivacyKind::kIndividual, opt);
  EXPECT_TRUE(r.pass()) << r.pass_fraction();
  EXPECT_GT(r.cells, 0u);
  EXPECT_EQ(r.trials, 20000u);
}

TEST(MonteCarloTest, SameSeedSameReport) {
  McOptions opt;
  opt.trials = 2000;
  GmpcProtocol proto(ProblemInstance(6, 1, 1, 3));
  McReport a = monte_carlo_privacy(proto, PrivacyKind::kIndividual, opt);
  McReport b = monte_carlo_privacy(proto, PrivacyKind::kIndividual, opt);
  EXPECT_EQ(a.cells, b.cells);
  EXPECT_EQ(a.failing_cells, b.failing_cells);
  EXPECT_EQ(a.class_count, b.class_count);
}

TEST(MonteCarloTest, ExactReferenceMatchesSmallInstance) {
  McOptions opt;
  opt.trials = 20000;
  opt.classes = McClasses::kExact;
  opt.exact_reference = true;
  McReport r = monte_carlo_privacy(testing::DemandFirstProtocol(ProblemInstance(4, 1, 1, 3)),
                                   PrivacyKind::kIndividual, opt);
  EXPECT_TRUE(r.pass()) << r.pass_fraction();
}

TEST(MonteCarloTest, NegativeControlIsFlagged) {
  McOptions opt;
  opt.trials = 5000;
  McReport r = monte_carlo_privacy(testing::DemandFirstProtocol(ProblemInstance(8, 1, 1, 3)),
                                   PrivacyKind::kIndividual, opt);
  EXPECT_FALSE(r.pass());
  EXPECT_FALSE(r.flagged.empty());
}

TEST(DecodabilityTest, Examples) {
  ProblemInstance inst(4, 1, 1, 3);
  Query q = make_query(inst, {{1, 2}, {3, 4}}, {{1, 2}, {1, 1}});
  std::vector<Index> S{2}, W{1};
  std::vector<uint32_t> V{1}, U{2};
  EXPECT_TRUE(decodable(system_with_side_rows(q, inst, S), demand_form(4, W, V)));
  EXPECT_TRUE(decodable(system_with_coded_row(q, inst, S, U), demand_form(4, W, V)));
  // X_2 alone is needed; the coded row X_2+X_3 cannot supply it.
  std::vector<Index> S23{2, 3};
  std::vector<uint32_t> U11{1, 1};
  EXPECT_TRUE(decodable(system_with_side_rows(q, inst, S23), demand_form(4, W, V)));
  EXPECT_FALSE(decodable(system_with_coded_row(q, inst, S23, U11), demand_form(4, W, V)));
  std::vector<Index> W3{3};
  EXPECT_FALSE(decodable(system_with_side_rows(q, inst, S), demand_form(4, W3, V)));
  EXPECT_EQ(demand_form(4, std::vector<Index>{2, 4}, std::vector<uint32_t>{1, 2}),
            (std::vector<uint32_t>{0, 1, 0, 2}));
}

// Adding side rows never destroys decodability.
TEST(DecodabilityTest, MonotoneInSideRows) {
  ProblemInstance inst(6, 2, 1, 5);
  CounterRng rng(44);
  for (int trial = 0; trial < 300; ++trial) {
    Query q;
    size_t parts = 1 + rng.uniform(3);
    for (size_t l = 0; l < parts; ++l) {
      QueryPart p;
      for (Index i = 1; i <= 6; ++i)
        if (rng.uniform(2)) {
          p.indices.push_back(i);
          p.coeffs.push_back(inst.element(1 + rng.uniform(4)));
        }
      if (p.indices.empty()) {
        p.indices.push_back(1);
        p.coeffs.push_back(inst.element(1));
      }
      q.parts.push_back(p);
    }
    std::vector<Index> W{static_cast<Index>(1 + rng.uniform(6))};
    std::vector<uint32_t> V{static_cast<uint32_t>(1 + rng.uniform(4))};
    std::vector<Index> S;
    bool before = decodable(system_with_side_rows(q, inst, S), demand_form(6, W, V));
    for (Index j = 1; j <= 6; ++j) {
      if (j == W[0]) continue;
      S.push_back(j);
      bool now = decodable(system_with_side_rows(q, inst, S), demand_form(6, W, V));
      EXPECT_TRUE(!before || now);
      before = now;
    }
  }
}

TEST(DecodabilityTest, MeasuredRate) {
  ProblemInstance inst(12, 2, 2, 7);
  Scenario sc = sample_scenario(inst, 3);
  CounterRng rng(3);
  EXPECT_EQ(measured_rate(gmpc_query(inst, sc, rng).first, inst), Rational(1, 3));
  EXPECT_EQ(measured_rate(pcia_query(inst, sc, rng).first, inst), Rational(1, 5));
  ProblemInstance small(4, 2, 2, 3);
  EXPECT_EQ(measured_rate(make_query(small, {{1, 2, 3, 4}}), small), Rational(1));
  try {
    measured_rate(make_query(small, {{1, 2}, {1, 2}}), small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("answer symbols dependent"), std::string::npos);
  }
}

TEST(LemmaTest, IndexNeverQueriedHasNoWitness) {
  ProblemInstance inst(7, 1, 1, 3);
  Query q = make_query(inst, {{1, 2}, {3, 4}, {5, 6}});
  LemmaReport r = lemma1_condition(q, inst);
  EXPECT_FALSE(r.pass);
  ASSERT_EQ(r.labels.size(), 7u);
  for (Index i = 1; i <= 6; ++i) EXPECT_TRUE(r.labels[i - 1].pass) << i;
  EXPECT_FALSE(r.labels[6].pass);
  EXPECT_EQ(r.labels[6].label, std::vector<Index>{7});
}

TEST(LemmaTest, WitnessIsDecodable) {
  ProblemInstance inst(7, 1, 1, 3);
  Query q = make_query(inst, {{1, 2}, {3, 4}, {5, 6}});
  LemmaReport r = lemma1_condition(q, inst);
  const LemmaWitness& w = r.labels[2];
  EXPECT_EQ(w.W, std::vector<Index>{3});
  EXPECT_EQ(w.S, std::vector<Index>{4});
  EXPECT_TRUE(decodable(system_with_side_rows(q, inst, w.S), demand_form(7, w.W, w.V)));
}

TEST(LemmaTest, WholeDatasetInOnePart) {
  ProblemInstance inst(4, 2, 2, 3);
  Query q = make_query(inst, {{3, 1, 4, 2}});
  EXPECT_TRUE(lemma1_condition(q, inst).pass);
  EXPECT_TRUE(lemma2_condition(q, inst, SupportMode::kCSI).pass);
  EXPECT_EQ(lemma2_condition(q, inst).labels.size(), 6u);
}

TEST(LemmaTest, JointConditionNeedsCsiSupports) {
  ProblemInstance inst(11, 2, 2, 7);
  Query iii = make_query(inst, {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {1, 8, 9}, {1, 10, 11}});
  EXPECT_TRUE(lemma2_condition(iii, inst, SupportMode::kSI).pass);
  EXPECT_FALSE(lemma2_condition(iii, inst, SupportMode::kCSI).pass);
}

TEST(LemmaTest, SweepCachesFamilies) {
  ProblemInstance inst(5, 1, 1, 3);
  GmpcProtocol proto(inst);
  LemmaSweep sweep(inst, PrivacyKind::kIndividual, SupportMode::kSI);
  verify_privacy(proto, PrivacyKind::kIndividual, {},
                 [&](const std::vector<std::vector<Index>>& parts, std::span<const uint32_t> c) {
                   sweep.check(parts, c);
                 });
  EXPECT_GT(sweep.queries(), sweep.families());
  EXPECT_EQ(sweep.failures(), 0u);
  EXPECT_FALSE(sweep.first_failure().has_value());
  Query bad = make_query(inst, {{1, 2}, {3, 4}});
  EXPECT_FALSE(sweep.check(bad));
  EXPECT_EQ(sweep.failures(), 1u);
  ASSERT_TRUE(sweep.first_failure().has_value());
  EXPECT_EQ(*sweep.first_failure(), bad);
}

}  // namespace
}  // namespace pcsi
