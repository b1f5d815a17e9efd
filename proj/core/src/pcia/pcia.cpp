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

#include "pcsi/pcia/pcia.hpp"

#include <algorithm>

#include "pcsi/algebra/matrix.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

namespace {

uint32_t pick(Chooser& ch, const char* label, size_t options) {
  if (options == 0) throw Error(std::string("PC-IA: no candidates for ") + label);
  if (options == 1) return 0;
  return ch.choose_uniform(label, static_cast<uint32_t>(options));
}

}  // namespace

PciaParams pcia_params(const ProblemInstance& inst) {
  const uint32_t K = inst.K(), M = inst.M(), D = inst.D();
  if (M % D != 0) {
    throw Error("PC-IA divisible case only: D=" + std::to_string(D) +
                " does not divide M=" + std::to_string(M));
  }
  PciaParams p;
  p.s = M / D + 1;
  if ((K - M - D) % p.s != 0) {
    throw Error("PC-IA divisible case only: M/D+1=" + std::to_string(p.s) +
                " does not divide K-M-D=" + std::to_string(K - M - D));
  }
  p.m = K / p.s;
  p.t = D - 1;
  p.n = p.m - p.t;
  const uint64_t q = inst.q();
  if (q < uint64_t{p.n} + p.t + 1) {
    throw Error("PC-IA needs q >= n+t+1 = " + std::to_string(p.n + p.t + 1) +
                " distinct evaluation points, got q=" + std::to_string(q));
  }
  for (uint32_t i = 1; i <= p.n; ++i) p.x.push_back(i - 1);
  for (uint32_t j = 0; j <= p.t; ++j) p.y.push_back(static_cast<uint32_t>(q - 1 - p.t + j));
  return p;
}

uint32_t pcia_omega(const PciaParams& p, const PrimeField& f, uint32_t i, uint32_t j) {
  if (i < 1 || i > p.n || j > p.t) throw Error("omega index out of range");
  return f.inv(f.sub(p.x[i - 1], p.y[j]));
}

std::string to_string(PciaPlacement p) {
  return p == PciaPlacement::kUniformSlots ? "uniform" : "distinct-own-blocks";
}

PciaPlacement parse_pcia_placement(std::string_view text) {
  if (text == "uniform") return PciaPlacement::kUniformSlots;
  if (text == "distinct-own-blocks") return PciaPlacement::kDistinctOwnBlocks;
  throw Error("unknown PC-IA placement '" + std::string(text) + "'");
}

PciaAlignment pcia_alignment(const PciaParams& p, const PrimeField& f,
                             std::span<const uint32_t> demand_blocks) {
  PciaAlignment a;
  a.J.assign(demand_blocks.begin(), demand_blocks.end());
  std::sort(a.J.begin(), a.J.end());
  a.J.erase(std::unique(a.J.begin(), a.J.end()), a.J.end());
  for (uint32_t j : a.J) {
    if (j < 1 || j > p.m) throw Error("PC-IA: block out of range");
    if (j > p.t) a.I.push_back(j - p.t);
  }
  if (a.I.empty()) a.I.push_back(1);
  std::vector<uint32_t> free_shared;
  for (uint32_t j = 1; j <= p.t; ++j)
    if (!std::binary_search(a.J.begin(), a.J.end(), j)) free_shared.push_back(j);
  const size_t h = a.I.size() - 1;
  if (free_shared.size() < h) throw Error("PC-IA: not enough shared blocks to cancel");
  a.H.assign(free_shared.end() - h, free_shared.end());
  for (uint32_t j = 1; j <= p.t; ++j)
    if (!std::binary_search(a.H.begin(), a.H.end(), j)) a.recovery_blocks.push_back(j);
  for (uint32_t i : a.I) a.recovery_blocks.push_back(p.t + i);

  if (h == 0) {
    a.c = {1};
  } else {
    FqMatrix T(a.I.size(), h, f);
    for (size_t r = 0; r < a.I.size(); ++r)
      for (size_t col = 0; col < h; ++col) T.set(r, col, pcia_omega(p, f, a.I[r], a.H[col]));
    auto basis = left_null_space(T);
    if (basis.size() != 1 || basis[0][0] == 0) {
      throw Error("PC-IA: alignment has no combination with c_1 = 1");
    }
    uint32_t lead = f.inv(basis[0][0]);
    for (uint32_t v : basis[0]) a.c.push_back(f.mul(v, lead));
  }
  a.denominators.assign(p.m, 0);
  for (uint32_t j : a.recovery_blocks) {
    uint32_t d = 0;
    if (j <= p.t) {
      for (size_t r = 0; r < a.I.size(); ++r)
        d = f.add(d, f.mul(a.c[r], pcia_omega(p, f, a.I[r], j)));
    } else {
      auto it = std::find(a.I.begin(), a.I.end(), j - p.t);
      d = a.c[it - a.I.begin()];
    }
    if (d == 0) throw Error("PC-IA: recovery block " + std::to_string(j) + " cancels");
    a.denominators[j - 1] = d;
  }
  return a;
}

PciaProtocol::PciaProtocol(const ProblemInstance& inst, PciaPlacement placement)
    : QueryProtocol(inst), params_(pcia_params(inst)), placement_(placement) {}

LayoutTrace PciaProtocol::build_layout(std::span<const Index> W, std::span<const Index> S,
                                       Chooser& ch) const {
  const PciaParams& p = params_;
  const PrimeField& f = inst_.field();
  const uint32_t K = inst_.K();
  if (W.size() != inst_.D() || S.size() != inst_.M()) {
    throw Error("PC-IA: W or S has the wrong size");
  }
  auto block_of = [&](uint32_t slot) { return (slot - 1) / p.s + 1; };
  std::vector<Index> slot(K + 1, 0);
  std::vector<uint32_t> demand_blocks;
  for (Index w : W) {
    std::vector<uint32_t> cand;
    for (uint32_t pos = 1; pos <= K; ++pos) {
      if (slot[pos] != 0) continue;
      if (placement_ == PciaPlacement::kDistinctOwnBlocks) {
        uint32_t b = block_of(pos);
        if (b <= p.t) continue;
        if (std::find(demand_blocks.begin(), demand_blocks.end(), b) != demand_blocks.end()) {
          continue;
        }
      }
      cand.push_back(pos);
    }
    uint32_t pos = cand[pick(ch, "demand_slot", cand.size())];
    slot[pos] = w;
    ch.place(pos, w);
    demand_blocks.push_back(block_of(pos));
  }
  PciaAlignment a = pcia_alignment(p, f, demand_blocks);

  std::vector<uint32_t> side_slots;
  for (uint32_t b : a.recovery_blocks)
    for (uint32_t pos = (b - 1) * p.s + 1; pos <= b * p.s; ++pos)
      if (slot[pos] == 0) side_slots.push_back(pos);
  if (side_slots.size() != S.size()) throw Error("PC-IA: recovery blocks do not fit S");
  std::vector<Index> items(S.begin(), S.end());
  for (uint32_t pos : side_slots) {
    uint32_t k = pick(ch, "side_order", items.size());
    slot[pos] = items[k];
    items.erase(items.begin() + k);
    ch.place(pos, slot[pos]);
  }
  std::vector<bool> used(K + 1, false);
  for (uint32_t pos = 1; pos <= K; ++pos) used[slot[pos]] = true;
  items.clear();
  for (Index x = 1; x <= K; ++x)
    if (!used[x]) items.push_back(x);
  for (uint32_t pos = 1; pos <= K; ++pos) {
    if (slot[pos] != 0) continue;
    uint32_t k = pick(ch, "filler_order", items.size());
    slot[pos] = items[k];
    items.erase(items.begin() + k);
    ch.place(pos, slot[pos]);
  }

  // alpha_{slot} = symbol * alpha_scale.
  std::vector<CoefSource> alpha(K + 1);
  uint32_t free_count = 0;
  for (uint32_t pos = 1; pos <= K; ++pos) {
    Index x = slot[pos];
    uint32_t denom = a.denominators[block_of(pos) - 1];
    uint32_t scale = denom == 0 ? 1 : f.inv(denom);
    auto w = std::find(W.begin(), W.end(), x);
    auto sd = std::find(S.begin(), S.end(), x);
    if (w != W.end()) {
      alpha[pos] = {CoefSource::Kind::kDemand, static_cast<uint32_t>(w - W.begin()), scale};
    } else if (sd != S.end()) {
      alpha[pos] = {CoefSource::Kind::kSide, static_cast<uint32_t>(sd - S.begin()), scale};
    } else {
      alpha[pos] = {CoefSource::Kind::kFree, free_count++, 1};
    }
  }
  LayoutTrace lt;
  lt.free_count = free_count;
  for (uint32_t i = 1; i <= p.n; ++i) {
    std::vector<Index> part;
    std::vector<CoefSource> coeffs;
    for (uint32_t j = 1; j <= p.t; ++j) {
      uint32_t w = pcia_omega(p, f, i, j);
      for (uint32_t pos = (j - 1) * p.s + 1; pos <= j * p.s; ++pos) {
        part.push_back(slot[pos]);
        CoefSource src = alpha[pos];
        src.scale = f.mul(src.scale, w);
        coeffs.push_back(src);
      }
    }
    uint32_t own = p.t + i;
    for (uint32_t pos = (own - 1) * p.s + 1; pos <= own * p.s; ++pos) {
      part.push_back(slot[pos]);
      coeffs.push_back(alpha[pos]);
    }
    lt.parts.push_back(std::move(part));
    lt.coeffs.push_back(std::move(coeffs));
  }
  for (size_t r = 0; r < a.I.size(); ++r) lt.recovery.push_back({a.I[r] - 1, a.c[r]});
  return lt;
}

std::optional<std::vector<Index>> PciaProtocol::positions_of(
    const std::vector<std::vector<Index>>& parts) const {
  const PciaParams& p = params_;
  if (parts.size() != p.n) return std::nullopt;
  const size_t shared = size_t{p.t} * p.s;
  std::vector<Index> slots(inst_.K(), 0);
  for (uint32_t i = 1; i <= p.n; ++i) {
    const auto& part = parts[i - 1];
    if (part.size() != shared + p.s) return std::nullopt;
    for (size_t k = 0; k < shared; ++k) {
      if (part[k] != parts[0][k]) return std::nullopt;
      slots[k] = part[k];
    }
    for (size_t k = 0; k < p.s; ++k) slots[(p.t + i - 1) * p.s + k] = part[shared + k];
  }
  return slots;
}

std::vector<std::vector<Index>> PciaProtocol::blocks_of(std::span<const Index> slots) const {
  const PciaParams& p = params_;
  if (slots.size() != size_t{p.m} * p.s) throw Error("PC-IA: slot map has the wrong size");
  std::vector<std::vector<Index>> blocks(p.m);
  for (size_t pos = 0; pos < slots.size(); ++pos) blocks[pos / p.s].push_back(slots[pos]);
  return blocks;
}

std::vector<Index> PciaProtocol::slots_of(const std::vector<std::vector<Index>>& blocks) const {
  const PciaParams& p = params_;
  if (blocks.size() != p.m) {
    throw Error("PC-IA: expected " + std::to_string(p.m) + " blocks, got " +
                std::to_string(blocks.size()));
  }
  std::vector<Index> slots;
  std::vector<bool> seen(inst_.K() + 1, false);
  for (const auto& b : blocks) {
    if (b.size() != p.s) throw Error("PC-IA: block size must be " + std::to_string(p.s));
    for (Index x : b) {
      if (x < 1 || x > inst_.K() || seen[x]) throw Error("PC-IA: blocks must partition [K]");
      seen[x] = true;
      slots.push_back(x);
    }
  }
  return slots;
}

PciaAlignment PciaProtocol::alignment_for(const std::vector<std::vector<Index>>& blocks,
                                          std::span<const Index> W) const {
  std::vector<uint32_t> demand_blocks;
  for (Index w : W) {
    bool found = false;
    for (size_t b = 0; b < blocks.size() && !found; ++b) {
      if (std::find(blocks[b].begin(), blocks[b].end(), w) != blocks[b].end()) {
        demand_blocks.push_back(static_cast<uint32_t>(b + 1));
        found = true;
      }
    }
    if (!found) throw Error("PC-IA: demand index missing from blocks");
  }
  return pcia_alignment(params_, inst_.field(), demand_blocks);
}

std::vector<std::vector<uint32_t>> pcia_coefficients(const PciaProtocol& proto,
                                                     const Query& query) {
  const PciaParams& p = proto.params();
  const PrimeField& f = proto.instance().field();
  if (query.parts.size() != p.n) throw Error("PC-IA: query has the wrong number of parts");
  std::vector<std::vector<uint32_t>> alphas(p.m);
  for (uint32_t j = 1; j <= p.t; ++j) {
    uint32_t w = pcia_omega(p, f, 1, j);
    for (uint32_t k = 0; k < p.s; ++k) {
      alphas[j - 1].push_back(f.div(query.parts[0].coeffs[(j - 1) * p.s + k].value(), w));
    }
  }
  for (uint32_t i = 1; i <= p.n; ++i) {
    for (uint32_t k = 0; k < p.s; ++k) {
      alphas[p.t + i - 1].push_back(query.parts[i - 1].coeffs[p.t * p.s + k].value());
    }
  }
  return alphas;
}

namespace {

// The recovery combination for every multiset of demand blocks has support
// exactly M + D.
bool recovery_supports_exact(const PciaProtocol& proto, const Query& q) {
  const ProblemInstance& inst = proto.instance();
  const PciaParams& p = proto.params();
  const uint32_t D = inst.D();
  std::vector<uint32_t> J(D, 1);
  while (true) {
    bool fits = true;
    for (uint32_t k = 0; k < D; ++k) {
      uint32_t run = 1;
      while (k + run < D && J[k + run] == J[k]) ++run;
      fits = fits && run <= p.s;
    }
    if (fits) {
      PciaAlignment a = pcia_alignment(p, inst.field(), J);
      std::vector<std::pair<size_t, FieldElement>> comb;
      for (size_t k = 0; k < a.I.size(); ++k) comb.emplace_back(a.I[k] - 1, inst.element(a.c[k]));
      if (combine_parts(q, comb).size() != inst.M() + D) return false;
    }
    // Next non-decreasing sequence over 1..m.
    int k = static_cast<int>(D) - 1;
    while (k >= 0 && J[k] == p.m) --k;
    if (k < 0) return true;
    ++J[k];
    for (uint32_t r = k + 1; r < D; ++r) J[r] = J[k];
  }
}

std::pair<Query, PciaTrace> finish(const PciaProtocol& proto, const Scenario& sc,
                                   const LayoutTrace& lt, const Rational& weight,
                                   std::vector<FieldElement> free_draws, CounterRng* rng) {
  const ProblemInstance& inst = proto.instance();
  PciaTrace tr;
  tr.weight = weight;
  Query q = realize_query(lt, sc.V(), sc.U(), free_draws);
  if (inst.mode() == SideInfo::kCoded && rng != nullptr) {
    while (!recovery_supports_exact(proto, q)) {
      if (++tr.csi_rejections > 10000) throw Error("PC-IA: CSI support requirement unmet");
      for (auto& v : free_draws) v = inst.element(1 + rng->uniform(inst.q() - 1));
      q = realize_query(lt, sc.V(), sc.U(), free_draws);
    }
  }
  auto slots = proto.positions_of(query_layout(q));
  tr.blocks = proto.blocks_of(*slots);
  tr.alignment = proto.alignment_for(tr.blocks, sc.W());
  tr.alphas = pcia_coefficients(proto, q);
  for (const auto& v : free_draws) tr.free_draws.push_back(v.value());
  return {std::move(q), std::move(tr)};
}

}  // namespace

std::pair<Query, PciaTrace> pcia_query(const ProblemInstance& inst, const Scenario& scenario,
                                       CounterRng& rng, PciaPlacement placement) {
  PciaProtocol proto(inst, placement);
  SamplingChooser ch(rng);
  LayoutTrace lt = proto.build_layout(scenario.W(), scenario.S(), ch);
  std::vector<FieldElement> free_draws;
  for (uint32_t k = 0; k < lt.free_count; ++k) {
    free_draws.push_back(inst.element(1 + rng.uniform(inst.q() - 1)));
  }
  return finish(proto, scenario, lt, ch.trace().weight(), std::move(free_draws), &rng);
}

std::pair<Query, PciaTrace> pcia_query(
    const ProblemInstance& inst, const Scenario& scenario,
    const std::vector<std::vector<Index>>& blocks,
    const std::map<uint32_t, std::vector<uint32_t>>& free_alphas, PciaPlacement placement) {
  PciaProtocol proto(inst, placement);
  std::vector<Index> target = proto.slots_of(blocks);
  std::optional<LayoutTrace> found;
  Rational weight;
  uint64_t runs = enumerate_choices(
      [&](Chooser& ch) { return proto.build_layout(scenario.W(), scenario.S(), ch); },
      [&](LayoutTrace lt, const EnumeratingChooser& ch) {
        found = std::move(lt);
        weight = ch.weight();
      },
      target);
  if (!found) throw Error("PC-IA: blocks are not a possible run for this scenario");
  if (runs != 1) throw Error("PC-IA: scripted blocks match several runs");

  const PciaParams& p = proto.params();
  std::vector<bool> fixed(inst.K() + 1, false);
  for (Index w : scenario.W()) fixed[w] = true;
  for (Index x : scenario.S()) fixed[x] = true;
  std::vector<FieldElement> free_draws;
  std::vector<bool> consumed(p.m + 1, false);
  for (uint32_t b = 1; b <= p.m; ++b) {
    const auto& blk = blocks[b - 1];
    bool all_free = std::none_of(blk.begin(), blk.end(), [&](Index x) { return fixed[x]; });
    if (!all_free) continue;
    auto it = free_alphas.find(b);
    if (it == free_alphas.end()) {
      throw Error("PC-IA: missing free coefficients for block " + std::to_string(b));
    }
    if (it->second.size() != p.s) throw Error("PC-IA: free coefficient count mismatch");
    for (uint32_t v : it->second) {
      if (v == 0 || v >= inst.q()) throw Error("PC-IA: free coefficients must be non-zero");
      free_draws.push_back(inst.element(v));
    }
    consumed[b] = true;
  }
  for (const auto& [b, vals] : free_alphas) {
    if (b < 1 || b > p.m || !consumed[b]) {
      throw Error("PC-IA: block " + std::to_string(b) + " has no free coefficients");
    }
  }
  if (free_draws.size() != found->free_count) throw Error("PC-IA: free coefficient mismatch");
  return finish(proto, scenario, *found, weight, std::move(free_draws), nullptr);
}

Answer pcia_answer(const Query& query, std::span<const Message> dataset) {
  return evaluate_answer(query, dataset);
}

Message pcia_recover(const ProblemInstance& inst, const Answer& answer,
                     const PciaTrace& trace, const Scenario& scenario) {
  LayoutTrace plan;
  const PciaAlignment& a = trace.alignment;
  for (size_t r = 0; r < a.I.size(); ++r) plan.recovery.push_back({a.I[r] - 1, a.c[r]});
  return recover_with_plan(inst, plan, answer, scenario);
}

}  // namespace pcsi
