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

#ifndef PCSI_PCIA_PCIA_HPP_
#define PCSI_PCIA_PCIA_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcsi/algebra/rational.hpp"
#include "pcsi/model/choice.hpp"
#include "pcsi/model/protocol.hpp"
#include "pcsi/model/query.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

// Blocks B_1..B_m of size s. B_1..B_t are shared by every answer, answer i
// also holds its own block B_{t+i}.
struct PciaParams {
  uint32_t s = 0;
  uint32_t m = 0;
  uint32_t t = 0;
  uint32_t n = 0;
  std::vector<uint32_t> x;  // x_1..x_n
  std::vector<uint32_t> y;  // y_0..y_t
};

// Throws pcsi::Error outside the divisible case or when q < n + t + 1.
PciaParams pcia_params(const ProblemInstance& inst);

// omega_{i,j} = 1 / (x_i - y_j), 1-based i and j.
uint32_t pcia_omega(const PciaParams& p, const PrimeField& f, uint32_t i, uint32_t j);

enum class PciaPlacement {
  // Demand slots uniform over all K slots.
  kUniformSlots,
  // Demand indices only in own blocks, at most one per block. Not private;
  // kept as a negative control.
  kDistinctOwnBlocks,
};

std::string to_string(PciaPlacement p);
PciaPlacement parse_pcia_placement(std::string_view text);

// Recovery structure fixed by where the demand indices sit.
struct PciaAlignment {
  std::vector<uint32_t> J;  // blocks holding demand indices
  std::vector<uint32_t> I;  // answers combined for recovery
  std::vector<uint32_t> H;  // shared blocks cancelled by the combination
  std::vector<uint32_t> recovery_blocks;
  std::vector<uint32_t> c;  // c_i for i in I, c_{I[0]} = 1
  // denominators[j-1]: sum_{i in I} c_i omega_{i,j} for kept shared blocks,
  // c_{j-t} for own blocks in I, 0 for blocks outside the recovery set.
  std::vector<uint32_t> denominators;
};

// demand_blocks: the (1-based) block of every demand slot.
PciaAlignment pcia_alignment(const PciaParams& p, const PrimeField& f,
                             std::span<const uint32_t> demand_blocks);

struct PciaTrace {
  std::vector<std::vector<Index>> blocks;
  PciaAlignment alignment;
  // alphas[j-1][k-1] = alpha_{j,k}; filled once coefficients are drawn.
  std::vector<std::vector<uint32_t>> alphas;
  std::vector<uint32_t> free_draws;  // in slot order
  uint32_t csi_rejections = 0;
  Rational weight;
};

class PciaProtocol : public QueryProtocol {
 public:
  PciaProtocol(const ProblemInstance& inst,
               PciaPlacement placement = PciaPlacement::kUniformSlots);

  std::string name() const override { return "pcia"; }
  const PciaParams& params() const { return params_; }
  PciaPlacement placement() const { return placement_; }

  LayoutTrace build_layout(std::span<const Index> W, std::span<const Index> S,
                           Chooser& chooser) const override;
  std::optional<std::vector<Index>> positions_of(
      const std::vector<std::vector<Index>>& parts) const override;

  // Blocks from a position map (slot p at block (p-1)/s + 1).
  std::vector<std::vector<Index>> blocks_of(std::span<const Index> slots) const;
  // Position map of a block list; throws if it is not a partition of [K].
  std::vector<Index> slots_of(const std::vector<std::vector<Index>>& blocks) const;
  PciaAlignment alignment_for(const std::vector<std::vector<Index>>& blocks,
                              std::span<const Index> W) const;

 private:
  PciaParams params_;
  PciaPlacement placement_;
};

// alpha_{j,k} read back from a realized query: own blocks directly, shared
// blocks from answer 1 divided by omega_{1,j}.
std::vector<std::vector<uint32_t>> pcia_coefficients(const PciaProtocol& proto,
                                                     const Query& query);

// Samples a query. In CSI mode the free coefficients are redrawn until the
// recovery combination for every possible set of demand blocks has support
// exactly M + D.
std::pair<Query, PciaTrace> pcia_query(const ProblemInstance& inst, const Scenario& scenario,
                                       CounterRng& rng,
                                       PciaPlacement placement = PciaPlacement::kUniformSlots);

// Scripted run from explicit blocks and free coefficients (keyed by 1-based
// block number, one value per slot). Throws if the blocks are not a possible
// run for the scenario.
std::pair<Query, PciaTrace> pcia_query(
    const ProblemInstance& inst, const Scenario& scenario,
    const std::vector<std::vector<Index>>& blocks,
    const std::map<uint32_t, std::vector<uint32_t>>& free_alphas,
    PciaPlacement placement = PciaPlacement::kUniformSlots);

Answer pcia_answer(const Query& query, std::span<const Message> dataset);

// sum_{i in I} c_i A_i - Y.
Message pcia_recover(const ProblemInstance& inst, const Answer& answer,
                     const PciaTrace& trace, const Scenario& scenario);

}  // namespace pcsi

#endif  // PCSI_PCIA_PCIA_HPP_
