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

#include "pcsi/model/scenario.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

namespace {

void check_support(const ProblemInstance& inst, const std::vector<Index>& idx,
                   const std::vector<FieldElement>& coeffs, uint32_t size,
                   const char* name) {
  if (idx.size() != size) {
    throw Error(std::string(name) + " must have " + std::to_string(size) +
                " indices, got " + std::to_string(idx.size()));
  }
  if (coeffs.size() != size) {
    throw Error(std::string(name) + " coefficient count mismatch");
  }
  for (size_t k = 0; k < idx.size(); ++k) {
    if (idx[k] < 1 || idx[k] > inst.K()) {
      throw Error(std::string(name) + " index " + std::to_string(idx[k]) +
                  " out of range");
    }
    if (k > 0 && idx[k] <= idx[k - 1]) {
      throw Error(std::string(name) + " must be strictly increasing");
    }
    if (coeffs[k].modulus() != inst.q() || coeffs[k].is_zero()) {
      throw Error(std::string(name) + " coefficients must be non-zero in F_q");
    }
  }
}

bool intersects(const std::vector<Index>& a, const std::vector<Index>& b) {
  for (Index x : a)
    if (std::binary_search(b.begin(), b.end(), x)) return true;
  return false;
}

}  // namespace

void validate_tuple(const ProblemInstance& inst, const DemandTuple& t) {
  check_support(inst, t.W, t.V, inst.D(), "W");
  check_support(inst, t.S, t.U, inst.M(), "S");
  if (intersects(t.W, t.S)) throw Error("W and S must be disjoint");
}

DemandTuple sample_tuple(const ProblemInstance& inst, CounterRng& rng) {
  std::vector<Index> pool(inst.K());
  std::iota(pool.begin(), pool.end(), Index{1});
  // Partial Fisher-Yates: first M entries form S, next D form W.
  uint32_t take = inst.M() + inst.D();
  for (uint32_t i = 0; i < take; ++i) {
    uint64_t j = i + rng.uniform(inst.K() - i);
    std::swap(pool[i], pool[j]);
  }
  DemandTuple t;
  t.S.assign(pool.begin(), pool.begin() + inst.M());
  t.W.assign(pool.begin() + inst.M(), pool.begin() + take);
  std::sort(t.S.begin(), t.S.end());
  std::sort(t.W.begin(), t.W.end());
  for (size_t k = 0; k < t.S.size(); ++k)
    t.U.push_back(inst.element(1 + rng.uniform(inst.q() - 1)));
  for (size_t k = 0; k < t.W.size(); ++k)
    t.V.push_back(inst.element(1 + rng.uniform(inst.q() - 1)));
  return t;
}

Message linear_combination(std::span<const Message> dataset,
                           std::span<const Index> indices,
                           std::span<const FieldElement> coeffs) {
  if (dataset.empty()) throw Error("empty dataset");
  if (indices.size() != coeffs.size()) throw Error("coefficient count mismatch");
  PrimeField f(dataset.front().modulus());
  Message acc = Message::zero(dataset.front().length(), f);
  for (size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 1 || indices[k] > dataset.size()) {
      throw Error("index " + std::to_string(indices[k]) + " out of range");
    }
    msg_axpy(coeffs[k], dataset[indices[k] - 1], acc);
  }
  return acc;
}

Scenario make_scenario(const ProblemInstance& inst, std::vector<Message> dataset,
                       DemandTuple tuple) {
  if (dataset.size() != inst.K()) throw Error("dataset must hold K messages");
  for (const auto& x : dataset) {
    if (x.length() != inst.ell() || x.modulus() != inst.q()) {
      throw Error("dataset message has wrong length or field");
    }
  }
  validate_tuple(inst, tuple);
  Message y = inst.M() == 0 ? Message::zero(inst.ell(), inst.field())
                            : linear_combination(dataset, tuple.S, tuple.U);
  Message z = linear_combination(dataset, tuple.W, tuple.V);
  std::vector<Message> xs;
  if (inst.mode() == SideInfo::kUncoded) {
    for (Index i : tuple.S) xs.push_back(dataset[i - 1]);
  }
  return Scenario{std::move(dataset), std::move(tuple), std::move(y),
                  std::move(xs), std::move(z)};
}

void validate_scenario(const ProblemInstance& inst, const Scenario& sc) {
  Scenario fresh = make_scenario(inst, sc.dataset, sc.tuple);
  if (!(fresh.Y == sc.Y)) throw Error("scenario Y disagrees with S, U");
  if (!(fresh.Z == sc.Z)) throw Error("scenario Z disagrees with W, V");
  if (!(fresh.X_S == sc.X_S)) throw Error("scenario X_S disagrees with S");
}

std::vector<Message> sample_dataset(const ProblemInstance& inst, CounterRng& rng) {
  std::vector<Message> data;
  data.reserve(inst.K());
  for (uint32_t i = 0; i < inst.K(); ++i) {
    std::vector<FieldElement> c;
    for (uint32_t j = 0; j < inst.ell(); ++j) c.push_back(inst.element(rng.uniform(inst.q())));
    data.emplace_back(std::move(c));
  }
  return data;
}

Scenario sample_scenario(const ProblemInstance& inst, uint64_t seed) {
  CounterRng root(seed);
  CounterRng tuple_rng = root.split(1);
  CounterRng data_rng = root.split(2);
  DemandTuple t = sample_tuple(inst, tuple_rng);
  return make_scenario(inst, sample_dataset(inst, data_rng), std::move(t));
}

Rational support_prior(const ProblemInstance& inst) {
  mpz_class count = binomial_big(inst.K(), inst.M()) *
                    binomial_big(inst.K() - inst.M(), inst.D());
  return Rational(mpq_class(mpz_class(1), count));
}

Rational prior_probability(const ProblemInstance& inst, const DemandTuple& t) {
  check_support(inst, t.W, t.V, inst.D(), "W");
  check_support(inst, t.S, t.U, inst.M(), "S");
  if (intersects(t.W, t.S)) return Rational(0);
  mpz_class draws;
  mpz_ui_pow_ui(draws.get_mpz_t(), inst.q() - 1, inst.M() + inst.D());
  return support_prior(inst) / Rational(draws);
}

Rational marginal_demand_prior(const ProblemInstance& inst, Index i) {
  if (i < 1 || i > inst.K()) throw Error("index out of range");
  return Rational(inst.D(), inst.K());
}

Rational marginal_demand_prior(const ProblemInstance& inst,
                               std::span<const Index> w_star) {
  if (w_star.size() != inst.D()) return Rational(0);
  for (size_t k = 0; k < w_star.size(); ++k) {
    if (w_star[k] < 1 || w_star[k] > inst.K()) throw Error("index out of range");
    if (k > 0 && w_star[k] <= w_star[k - 1]) throw Error("W* must be increasing");
  }
  return Rational(mpq_class(mpz_class(1), binomial_big(inst.K(), inst.D())));
}

}  // namespace pcsi
