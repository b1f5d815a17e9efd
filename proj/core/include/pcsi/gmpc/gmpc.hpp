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

#ifndef PCSI_GMPC_GMPC_HPP_
#define PCSI_GMPC_GMPC_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/choice.hpp"
#include "pcsi/model/protocol.hpp"
#include "pcsi/model/query.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

struct GmpcParams {
  uint32_t n = 0;  // number of parts
  uint32_t m = 0;  // overlap size between the first and last part
  uint32_t r = 0;  // M + D - m
  uint32_t mu = 0;
  uint32_t rho = 0;
  Rational alpha;
  Rational beta;
  // beta taken from the table before any adjustment.
  Rational beta_table;
  // M = 0 in the D > m, D > r case: both branches coincide, beta set to 0.
  bool beta_m0_rule = false;
  // The table gives beta outside [0, 1]; queries cannot be generated.
  bool beta_out_of_range = false;
  // blocks[l-1] lists the positions of I_l in query order (1-based).
  std::vector<std::vector<uint32_t>> blocks;
};

GmpcParams gmpc_params(const ProblemInstance& inst);

enum class GmpcBranch { kBeta, kComplement, kMiddle, kSingle };

std::string to_string(GmpcBranch b);
GmpcBranch parse_gmpc_branch(std::string_view text);

// One protocol run for fixed (W, S). overlap fills positions 1..m when l* is
// 1 or n, block fills the remaining positions of I_{l*}, rest fills every
// other position in increasing order.
struct GmpcTrace {
  uint32_t l_star = 1;
  GmpcBranch branch = GmpcBranch::kBeta;
  std::vector<Index> overlap_assignment;
  std::vector<Index> block_assignment;
  std::vector<Index> rest_assignment;
  Rational weight;

  friend bool operator==(const GmpcTrace& a, const GmpcTrace& b) {
    return a.l_star == b.l_star && a.branch == b.branch &&
           a.overlap_assignment == b.overlap_assignment &&
           a.block_assignment == b.block_assignment &&
           a.rest_assignment == b.rest_assignment;
  }
};

class GmpcProtocol : public QueryProtocol {
 public:
  explicit GmpcProtocol(const ProblemInstance& inst);

  std::string name() const override { return "gmpc"; }
  const GmpcParams& params() const { return params_; }

  LayoutTrace build_layout(std::span<const Index> W, std::span<const Index> S,
                           Chooser& chooser) const override;
  std::optional<std::vector<Index>> positions_of(
      const std::vector<std::vector<Index>>& parts) const override;

  // Draws l*, the branch and the assignments. The weight is left unset.
  GmpcTrace draw_trace(std::span<const Index> W, std::span<const Index> S,
                       Chooser& chooser) const;
  // Throws pcsi::Error if the trace is not a possible run for (W, S).
  void validate_trace(const GmpcTrace& trace, std::span<const Index> W,
                      std::span<const Index> S) const;
  // Probability of the trace given (W, S), from the closed form.
  Rational trace_weight(const GmpcTrace& trace) const;
  // pi as a position -> index map.
  std::vector<Index> permutation(const GmpcTrace& trace) const;
  LayoutTrace layout_from_trace(const GmpcTrace& trace, std::span<const Index> W,
                                std::span<const Index> S) const;

 private:
  GmpcParams params_;
};

// Samples a query for the scenario. The returned trace carries its weight.
std::pair<Query, GmpcTrace> gmpc_query(const ProblemInstance& inst,
                                       const Scenario& scenario, CounterRng& rng);
// Realizes a scripted trace; throws if the trace is impossible. The weight of
// the returned trace is filled in.
std::pair<Query, GmpcTrace> gmpc_query(const ProblemInstance& inst,
                                       const Scenario& scenario, GmpcTrace trace);

Answer gmpc_answer(const Query& query, std::span<const Message> dataset);

// A_{l*} - Y (or minus the X_S terms in uncoded mode).
Message gmpc_recover(const ProblemInstance& inst, const Answer& answer,
                     const GmpcTrace& trace, const Scenario& scenario);

// Every trace with non-zero probability for the tuple, in lexicographic
// choice order, with its realized query.
uint64_t enumerate_gmpc_traces(
    const ProblemInstance& inst, const DemandTuple& tuple,
    const std::function<void(const Query&, const GmpcTrace&)>& fn,
    uint64_t budget = UINT64_MAX);

}  // namespace pcsi

#endif  // PCSI_GMPC_GMPC_HPP_
