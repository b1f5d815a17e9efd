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

#include "pcsi/model/protocol.hpp"

#include "pcsi/error.hpp"

namespace pcsi {

Query realize_query(const LayoutTrace& layout, std::span<const FieldElement> V,
                    std::span<const FieldElement> U,
                    std::span<const FieldElement> free_draws) {
  if (free_draws.size() != layout.free_count) throw Error("free draw count mismatch");
  Query q;
  for (size_t l = 0; l < layout.parts.size(); ++l) {
    QueryPart p;
    p.indices = layout.parts[l];
    for (const CoefSource& src : layout.coeffs[l]) {
      const FieldElement* sym = nullptr;
      switch (src.kind) {
        case CoefSource::Kind::kDemand:
          if (src.slot >= V.size()) throw Error("demand slot out of range");
          sym = &V[src.slot];
          break;
        case CoefSource::Kind::kSide:
          if (src.slot >= U.size()) throw Error("side slot out of range");
          sym = &U[src.slot];
          break;
        case CoefSource::Kind::kFree:
          sym = &free_draws[src.slot];
          break;
      }
      p.coeffs.push_back(*sym * FieldElement(src.scale, PrimeField::of(*sym)));
    }
    q.parts.push_back(std::move(p));
  }
  return q;
}

Message recover_with_plan(const ProblemInstance& inst, const LayoutTrace& layout,
                          const Answer& answer, const Scenario& scenario) {
  Message acc = Message::zero(inst.ell(), inst.field());
  for (const auto& [part, c] : layout.recovery) {
    if (part >= answer.symbols.size()) throw Error("answer has too few symbols");
    msg_axpy(inst.element(c), answer.symbols[part], acc);
  }
  if (inst.mode() == SideInfo::kCoded) {
    return acc - scenario.Y;
  }
  if (scenario.X_S.size() != scenario.S().size()) {
    throw Error("uncoded side information missing");
  }
  for (size_t k = 0; k < scenario.S().size(); ++k) {
    msg_axpy(-scenario.U()[k], scenario.X_S[k], acc);
  }
  return acc;
}

SampledQuery sample_query(const QueryProtocol& protocol, const DemandTuple& tuple,
                          CounterRng& rng) {
  const ProblemInstance& inst = protocol.instance();
  SamplingChooser chooser(rng);
  SampledQuery out;
  out.layout = protocol.build_layout(tuple.W, tuple.S, chooser);
  out.choices = chooser.trace();
  for (uint32_t k = 0; k < out.layout.free_count; ++k) {
    out.free_draws.push_back(inst.element(1 + rng.uniform(inst.q() - 1)));
  }
  out.query = realize_query(out.layout, tuple.V, tuple.U, out.free_draws);
  return out;
}

}  // namespace pcsi
