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

#ifndef PCSI_VERIFY_MONTE_CARLO_HPP_
#define PCSI_VERIFY_MONTE_CARLO_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/protocol.hpp"
#include "pcsi/verify/posterior.hpp"

namespace pcsi {

// kExact groups trials by the full query. kPositional groups, for each
// label, the trials by where the label's indices sit in the query.
enum class McClasses { kExact, kPositional };

std::string to_string(McClasses classes);
McClasses parse_mc_classes(std::string_view text);

struct McOptions {
  uint64_t trials = 100000;
  uint64_t seed = 1;
  McClasses classes = McClasses::kPositional;
  double confidence = 0.99;
  // Compare each exact class with its exact posterior instead of the target.
  // Requires kExact classes.
  bool exact_reference = false;
  uint64_t budget = 1000000000;
  size_t max_flagged = 16;
};

struct McCell {
  std::string cls;  // printable class description
  std::vector<Index> label;
  uint64_t n = 0;
  uint64_t count = 0;
  Rational expected;
  uint64_t lo = 0, hi = 0;  // acceptance interval for count
  bool pass = true;
  // Inside the Bonferroni-widened interval at confidence 1 - (1 - c) / cells.
  bool familywise_pass = true;
  double estimate() const { return n == 0 ? 0.0 : static_cast<double>(count) / n; }
};

struct McReport {
  std::string protocol;
  PrivacyKind kind = PrivacyKind::kIndividual;
  McClasses classes = McClasses::kPositional;
  uint64_t trials = 0;
  uint64_t class_count = 0;
  uint64_t cells = 0;
  uint64_t failing_cells = 0;
  uint64_t familywise_failing = 0;
  Rational target;
  std::vector<McCell> flagged;
  double pass_fraction() const {
    return cells == 0 ? 1.0 : 1.0 - static_cast<double>(failing_cells) / cells;
  }
  // Holds when at least the given share of cells lies inside its interval.
  bool pass(double required = 0.99) const { return pass_fraction() >= required; }
  // Holds when no cell leaves its Bonferroni-widened interval. Under exact
  // privacy this fails with probability at most 1 - confidence, whatever the
  // correlation between cells.
  bool familywise_pass() const { return familywise_failing == 0; }
};

// Central interval [lo, hi] of Binomial(n, p) holding at least the given
// probability mass.
std::pair<uint64_t, uint64_t> binomial_interval(uint64_t n, const Rational& p, double confidence);

// Samples (W, V, S, U) from the prior and a query from the protocol, trial t
// using stream t of the seed. Throws pcsi::Error when trials < 1000.
McReport monte_carlo_privacy(const QueryProtocol& protocol, PrivacyKind kind,
                             const McOptions& options);

}  // namespace pcsi

#endif  // PCSI_VERIFY_MONTE_CARLO_HPP_
