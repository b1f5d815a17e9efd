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

#ifndef PCSI_MODEL_SCENARIO_HPP_
#define PCSI_MODEL_SCENARIO_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "pcsi/algebra/message.hpp"
#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/instance.hpp"
#include "pcsi/model/rng.hpp"

namespace pcsi {

// Demand and side-information supports with their coefficients. W and S are
// sorted ascending; V[k] belongs to W[k] and U[k] to S[k].
struct DemandTuple {
  std::vector<Index> W;
  std::vector<FieldElement> V;
  std::vector<Index> S;
  std::vector<FieldElement> U;
};

struct Scenario {
  std::vector<Message> dataset;  // dataset[i-1] is X_i
  DemandTuple tuple;
  Message Y;                     // sum_k U[k] X_{S[k]}
  std::vector<Message> X_S;      // filled in uncoded mode
  Message Z;                     // sum_k V[k] X_{W[k]}

  const std::vector<Index>& W() const { return tuple.W; }
  const std::vector<Index>& S() const { return tuple.S; }
  const std::vector<FieldElement>& V() const { return tuple.V; }
  const std::vector<FieldElement>& U() const { return tuple.U; }
};

// Throws pcsi::Error if the tuple is malformed for the instance or W and S
// intersect.
void validate_tuple(const ProblemInstance& inst, const DemandTuple& t);

DemandTuple sample_tuple(const ProblemInstance& inst, CounterRng& rng);

Message linear_combination(std::span<const Message> dataset,
                           std::span<const Index> indices,
                           std::span<const FieldElement> coeffs);

Scenario make_scenario(const ProblemInstance& inst, std::vector<Message> dataset,
                       DemandTuple tuple);
// Recomputes Y, X_S and Z and throws if they disagree.
void validate_scenario(const ProblemInstance& inst, const Scenario& sc);

std::vector<Message> sample_dataset(const ProblemInstance& inst, CounterRng& rng);
Scenario sample_scenario(const ProblemInstance& inst, uint64_t seed);

// Pr(W, V, S, U): uniform over valid tuples, zero when W and S intersect.
Rational prior_probability(const ProblemInstance& inst, const DemandTuple& t);
// Pr(W, S) with the coefficient draws summed out.
Rational support_prior(const ProblemInstance& inst);
// Pr(i in W).
Rational marginal_demand_prior(const ProblemInstance& inst, Index i);
// Pr(W = W*).
Rational marginal_demand_prior(const ProblemInstance& inst,
                               std::span<const Index> w_star);

}  // namespace pcsi

#endif  // PCSI_MODEL_SCENARIO_HPP_
