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

#ifndef PCSI_MODEL_PROTOCOL_HPP_
#define PCSI_MODEL_PROTOCOL_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcsi/algebra/message.hpp"
#include "pcsi/model/choice.hpp"
#include "pcsi/model/instance.hpp"
#include "pcsi/model/query.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

// A query coefficient is scale * (one uniform non-zero symbol): the demand
// coefficient V[slot], the side coefficient U[slot], or free draw [slot].
struct CoefSource {
  enum class Kind : uint8_t { kDemand, kSide, kFree };
  Kind kind;
  uint32_t slot;
  uint32_t scale;  // non-zero residue
};

// Everything a protocol decides before the coefficient symbols are drawn.
struct LayoutTrace {
  std::vector<std::vector<Index>> parts;
  std::vector<std::vector<CoefSource>> coeffs;  // parallel to parts
  uint32_t free_count = 0;
  // Z = sum over (part, c) of c * A_part, minus the side information term.
  std::vector<std::pair<size_t, uint32_t>> recovery;
};

// A query-generation protocol bound to one problem instance.
class QueryProtocol {
 public:
  explicit QueryProtocol(const ProblemInstance& inst) : inst_(inst) {}
  virtual ~QueryProtocol() = default;

  virtual std::string name() const = 0;
  const ProblemInstance& instance() const { return inst_; }

  // Draws the layout for a fixed (W, S) through the chooser. Every index put
  // at a position is reported via Chooser::place.
  virtual LayoutTrace build_layout(std::span<const Index> W, std::span<const Index> S,
                                   Chooser& chooser) const = 0;

  // Position -> index map of a layout, as reported through place(). Used to
  // prune enumeration to one layout. Empty when the layout cannot come from
  // this protocol.
  virtual std::optional<std::vector<Index>> positions_of(
      const std::vector<std::vector<Index>>& parts) const = 0;

 protected:
  ProblemInstance inst_;
};

Query realize_query(const LayoutTrace& layout, std::span<const FieldElement> V,
                    std::span<const FieldElement> U,
                    std::span<const FieldElement> free_draws);

// Applies the layout's recovery combination and removes the side
// information (Y in coded mode, the X_S terms in uncoded mode).
Message recover_with_plan(const ProblemInstance& inst, const LayoutTrace& layout,
                          const Answer& answer, const Scenario& scenario);

// Samples a layout and its free draws, then realizes the query.
struct SampledQuery {
  Query query;
  LayoutTrace layout;
  ChoiceTrace choices;
  std::vector<FieldElement> free_draws;
};
SampledQuery sample_query(const QueryProtocol& protocol, const DemandTuple& tuple,
                          CounterRng& rng);

}  // namespace pcsi

#endif  // PCSI_MODEL_PROTOCOL_HPP_
