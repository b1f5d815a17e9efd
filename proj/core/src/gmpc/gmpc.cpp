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

#include "pcsi/gmpc/gmpc.hpp"

#include <algorithm>
#include <numeric>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

namespace {

bool contains(std::span<const Index> v, Index x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

uint32_t pick(Chooser& ch, const char* label, size_t options) {
  if (options == 1) return 0;
  return ch.choose_uniform(label, static_cast<uint32_t>(options));
}

// Uniformly random bijection of items onto positions, one pick per position.
void assign_uniform(Chooser& ch, const char* label, std::vector<Index> items,
                    std::span<const uint32_t> positions, std::vector<Index>& out) {
  for (uint32_t pos : positions) {
    uint32_t k = pick(ch, label, items.size());
    Index idx = items[k];
    items.erase(items.begin() + k);
    ch.place(pos, idx);
    out.push_back(idx);
  }
}

Rational inv_factorial(unsigned long n) { return Rational(mpq_class(1, factorial_big(n))); }
Rational inv_binomial(unsigned long n, unsigned long k) {
  return Rational(mpq_class(1, binomial_big(n, k)));
}

}  // namespace

std::string to_string(GmpcBranch b) {
  switch (b) {
    case GmpcBranch::kBeta: return "beta";
    case GmpcBranch::kComplement: return "complement";
    case GmpcBranch::kMiddle: return "middle";
    case GmpcBranch::kSingle: return "single";
  }
  return "?";
}

GmpcBranch parse_gmpc_branch(std::string_view text) {
  if (text == "beta") return GmpcBranch::kBeta;
  if (text == "complement") return GmpcBranch::kComplement;
  if (text == "middle") return GmpcBranch::kMiddle;
  if (text == "single") return GmpcBranch::kSingle;
  throw Error("unknown GMPC branch '" + std::string(text) + "'");
}

GmpcParams gmpc_params(const ProblemInstance& inst) {
  const uint32_t K = inst.K(), M = inst.M(), D = inst.D();
  const uint32_t g = M + D;
  GmpcParams p;
  p.n = (K + g - 1) / g;
  p.m = p.n * g - K;
  p.r = g - p.m;
  p.mu = std::min(D, p.m);
  p.rho = std::min(D, p.r);
  if (p.n == 1) {
    p.alpha = Rational(1);
  } else {
    p.alpha = Rational(p.m + 2 * p.r, K);
  }
  const long m = p.m, r = p.r, d = D;
  const Rational span(m + 2 * r);
  if (D <= p.m && D <= p.r) {
    p.beta_table = Rational(m) / span;
  } else if (D > p.m && D <= p.r) {
    p.beta_table = Rational(d) / span;
  } else if (D <= p.m && D > p.r) {
    p.beta_table = Rational(1) - Rational(2 * d) / span;
  } else if (M == 0) {
    p.beta_m0_rule = true;
    p.beta_table = Rational(0);
  } else {
    p.beta_table = Rational(r, M) * (Rational(1) - Rational(2 * d) / span);
  }
  p.beta = p.beta_table;
  if (p.n > 1 && (p.beta < Rational(0) || p.beta > Rational(1))) {
    p.beta_out_of_range = true;
  }
  // I_l = {(l-1)g+1..lg} for l < n; I_n = {1..m} then {(n-1)g+1..K}.
  for (uint32_t l = 1; l <= p.n; ++l) {
    std::vector<uint32_t> b;
    if (l < p.n) {
      for (uint32_t j = (l - 1) * g + 1; j <= l * g; ++j) b.push_back(j);
    } else {
      for (uint32_t j = 1; j <= p.m; ++j) b.push_back(j);
      for (uint32_t j = (p.n - 1) * g + 1; j <= K; ++j) b.push_back(j);
    }
    p.blocks.push_back(std::move(b));
  }
  return p;
}

GmpcProtocol::GmpcProtocol(const ProblemInstance& inst)
    : QueryProtocol(inst), params_(gmpc_params(inst)) {}

GmpcTrace GmpcProtocol::draw_trace(std::span<const Index> W, std::span<const Index> S,
                                   Chooser& ch) const {
  const GmpcParams& p = params_;
  const uint32_t K = inst_.K(), M = inst_.M(), D = inst_.D();
  if (W.size() != D || S.size() != M) throw Error("GMPC: W or S has the wrong size");
  if (p.beta_out_of_range) {
    throw Error("GMPC beta " + p.beta.to_string() + " lies outside [0,1] for " +
                inst_.describe());
  }
  GmpcTrace t;
  std::vector<Index> ws(W.begin(), W.end());
  ws.insert(ws.end(), S.begin(), S.end());
  std::sort(ws.begin(), ws.end());

  std::vector<uint32_t> block_positions;
  std::vector<bool> in_star(K + 1, false);
  if (p.n == 1) {
    t.l_star = 1;
    t.branch = GmpcBranch::kSingle;
    assign_uniform(ch, "block_order", ws, p.blocks[0], t.block_assignment);
    return t;
  }
  const Rational half_alpha = p.alpha / Rational(2);
  const Rational lstar_probs[3] = {half_alpha, half_alpha, Rational(1) - p.alpha};
  uint32_t which = ch.choose("l_star", lstar_probs);
  if (which == 0) {
    t.l_star = 1;
  } else if (which == 1) {
    t.l_star = p.n;
  } else {
    t.l_star = 2 + pick(ch, "l_star_middle", p.n - 2);
  }
  const auto& star = p.blocks[t.l_star - 1];
  for (uint32_t pos : star) in_star[pos] = true;

  std::vector<Index> remaining = ws;
  if (t.l_star == 1 || t.l_star == p.n) {
    const Rational branch_probs[2] = {p.beta, Rational(1) - p.beta};
    t.branch = ch.choose("branch", branch_probs) == 0 ? GmpcBranch::kBeta
                                                     : GmpcBranch::kComplement;
    uint32_t w_o = t.branch == GmpcBranch::kBeta ? p.mu : D - p.rho;
    if (w_o > p.m || p.m - w_o > M) throw Error("GMPC: overlap composition infeasible");
    uint32_t s_o = p.m - w_o;
    std::vector<uint32_t> wsub =
        unrank_combination(D, w_o, pick(ch, "overlap_demand", binomial(D, w_o)));
    std::vector<uint32_t> ssub =
        unrank_combination(M, s_o, pick(ch, "overlap_side", binomial(M, s_o)));
    std::vector<Index> overlap;
    for (uint32_t k : wsub) overlap.push_back(W[k]);
    for (uint32_t k : ssub) overlap.push_back(S[k]);
    std::sort(overlap.begin(), overlap.end());
    std::vector<uint32_t> overlap_positions(p.m);
    std::iota(overlap_positions.begin(), overlap_positions.end(), 1u);
    assign_uniform(ch, "overlap_order", overlap, overlap_positions, t.overlap_assignment);
    for (Index x : overlap) remaining.erase(std::find(remaining.begin(), remaining.end(), x));
    for (uint32_t pos : star)
      if (pos > p.m) block_positions.push_back(pos);
  } else {
    t.branch = GmpcBranch::kMiddle;
    block_positions = star;
  }
  assign_uniform(ch, "block_order", remaining, block_positions, t.block_assignment);

  std::vector<Index> rest;
  for (Index i = 1; i <= K; ++i)
    if (!std::binary_search(ws.begin(), ws.end(), i)) rest.push_back(i);
  std::vector<uint32_t> rest_positions;
  for (uint32_t pos = 1; pos <= K; ++pos)
    if (!in_star[pos]) rest_positions.push_back(pos);
  assign_uniform(ch, "rest_order", rest, rest_positions, t.rest_assignment);
  return t;
}

std::vector<Index> GmpcProtocol::permutation(const GmpcTrace& t) const {
  const GmpcParams& p = params_;
  const uint32_t K = inst_.K();
  if (t.l_star < 1 || t.l_star > p.n) throw Error("GMPC trace: l* out of range");
  std::vector<bool> in_star(K + 1, false);
  for (uint32_t pos : p.blocks[t.l_star - 1]) in_star[pos] = true;
  const bool edge = p.n > 1 && (t.l_star == 1 || t.l_star == p.n);
  std::vector<Index> pi(K + 1, 0);
  std::vector<uint32_t> overlap_pos, block_pos, rest_pos;
  for (uint32_t pos = 1; pos <= K; ++pos) {
    if (!in_star[pos]) {
      rest_pos.push_back(pos);
    } else if (edge && pos <= p.m) {
      overlap_pos.push_back(pos);
    }
  }
  for (uint32_t pos : p.blocks[t.l_star - 1])
    if (!(edge && pos <= p.m)) block_pos.push_back(pos);
  auto fill = [&](const std::vector<uint32_t>& pos, const std::vector<Index>& items,
                  const char* what) {
    if (pos.size() != items.size()) {
      throw Error(std::string("GMPC trace: ") + what + " assignment has " +
                  std::to_string(items.size()) + " entries, expected " +
                  std::to_string(pos.size()));
    }
    for (size_t k = 0; k < pos.size(); ++k) pi[pos[k]] = items[k];
  };
  fill(overlap_pos, t.overlap_assignment, "overlap");
  fill(block_pos, t.block_assignment, "block");
  fill(rest_pos, t.rest_assignment, "rest");
  std::vector<bool> seen(K + 1, false);
  for (uint32_t pos = 1; pos <= K; ++pos) {
    Index x = pi[pos];
    if (x < 1 || x > K || seen[x]) throw Error("GMPC trace: assignments are not a permutation");
    seen[x] = true;
  }
  pi.erase(pi.begin());
  return pi;
}

void GmpcProtocol::validate_trace(const GmpcTrace& t, std::span<const Index> W,
                                  std::span<const Index> S) const {
  const GmpcParams& p = params_;
  if (W.size() != inst_.D() || S.size() != inst_.M()) {
    throw Error("GMPC: W or S has the wrong size");
  }
  permutation(t);
  const bool edge = p.n > 1 && (t.l_star == 1 || t.l_star == p.n);
  GmpcBranch expect_kind = p.n == 1 ? GmpcBranch::kSingle
                                    : (edge ? t.branch : GmpcBranch::kMiddle);
  if (t.branch != expect_kind ||
      (edge && t.branch != GmpcBranch::kBeta && t.branch != GmpcBranch::kComplement)) {
    throw Error("GMPC trace: branch '" + to_string(t.branch) + "' impossible for l*=" +
                std::to_string(t.l_star));
  }
  for (Index x : t.rest_assignment) {
    if (contains(W, x) || contains(S, x)) {
      throw Error("GMPC trace: index " + std::to_string(x) + " of W or S outside I_{l*}");
    }
  }
  if (edge) {
    uint32_t w_o = 0, s_o = 0;
    for (Index x : t.overlap_assignment) {
      if (contains(W, x)) ++w_o;
      else if (contains(S, x)) ++s_o;
    }
    uint32_t want_w = t.branch == GmpcBranch::kBeta ? p.mu : inst_.D() - p.rho;
    if (w_o != want_w || s_o != p.m - want_w) {
      throw Error("GMPC trace: overlap holds " + std::to_string(w_o) + " demand and " +
                  std::to_string(s_o) + " side indices, branch needs " +
                  std::to_string(want_w) + " and " + std::to_string(p.m - want_w));
    }
  }
  if (trace_weight(t).is_zero()) throw Error("GMPC trace has probability zero");
}

Rational GmpcProtocol::trace_weight(const GmpcTrace& t) const {
  const GmpcParams& p = params_;
  const uint32_t K = inst_.K(), M = inst_.M(), D = inst_.D();
  if (p.n == 1) return inv_factorial(K);
  const Rational rest = inv_factorial(K - M - D);
  if (t.l_star != 1 && t.l_star != p.n) {
    return (Rational(1) - p.alpha) / Rational(p.n - 2) * inv_factorial(M + D) * rest;
  }
  const bool beta = t.branch == GmpcBranch::kBeta;
  const Rational branch = beta ? p.beta : Rational(1) - p.beta;
  const uint32_t w_o = beta ? p.mu : D - p.rho;
  const uint32_t s_o = p.m - w_o;
  return p.alpha / Rational(2) * branch * inv_binomial(D, w_o) * inv_binomial(M, s_o) *
         inv_factorial(p.m) * inv_factorial(p.r) * rest;
}

LayoutTrace GmpcProtocol::layout_from_trace(const GmpcTrace& t, std::span<const Index> W,
                                            std::span<const Index> S) const {
  const GmpcParams& p = params_;
  std::vector<Index> pi = permutation(t);
  LayoutTrace lt;
  std::vector<CoefSource> shared;
  for (uint32_t pos : p.blocks[t.l_star - 1]) {
    Index x = pi[pos - 1];
    auto w = std::find(W.begin(), W.end(), x);
    auto s = std::find(S.begin(), S.end(), x);
    if (w != W.end()) {
      shared.push_back({CoefSource::Kind::kDemand, static_cast<uint32_t>(w - W.begin()), 1});
    } else if (s != S.end()) {
      shared.push_back({CoefSource::Kind::kSide, static_cast<uint32_t>(s - S.begin()), 1});
    } else {
      throw Error("GMPC trace: I_{l*} holds an index outside W and S");
    }
  }
  for (const auto& block : p.blocks) {
    std::vector<Index> part;
    for (uint32_t pos : block) part.push_back(pi[pos - 1]);
    lt.parts.push_back(std::move(part));
    lt.coeffs.push_back(shared);
  }
  lt.recovery.push_back({t.l_star - 1, 1});
  return lt;
}

LayoutTrace GmpcProtocol::build_layout(std::span<const Index> W, std::span<const Index> S,
                                       Chooser& chooser) const {
  return layout_from_trace(draw_trace(W, S, chooser), W, S);
}

std::optional<std::vector<Index>> GmpcProtocol::positions_of(
    const std::vector<std::vector<Index>>& parts) const {
  const GmpcParams& p = params_;
  if (parts.size() != p.n) return std::nullopt;
  std::vector<Index> pi(inst_.K(), 0);
  for (size_t l = 0; l < p.n; ++l) {
    if (parts[l].size() != p.blocks[l].size()) return std::nullopt;
    for (size_t k = 0; k < parts[l].size(); ++k) {
      Index& slot = pi[p.blocks[l][k] - 1];
      if (slot != 0 && slot != parts[l][k]) return std::nullopt;
      slot = parts[l][k];
    }
  }
  return pi;
}

std::pair<Query, GmpcTrace> gmpc_query(const ProblemInstance& inst,
                                       const Scenario& scenario, CounterRng& rng) {
  GmpcProtocol proto(inst);
  SamplingChooser chooser(rng, false);
  GmpcTrace t = proto.draw_trace(scenario.W(), scenario.S(), chooser);
  t.weight = proto.trace_weight(t);
  LayoutTrace lt = proto.layout_from_trace(t, scenario.W(), scenario.S());
  return {realize_query(lt, scenario.V(), scenario.U(), {}), std::move(t)};
}

std::pair<Query, GmpcTrace> gmpc_query(const ProblemInstance& inst,
                                       const Scenario& scenario, GmpcTrace trace) {
  GmpcProtocol proto(inst);
  proto.validate_trace(trace, scenario.W(), scenario.S());
  trace.weight = proto.trace_weight(trace);
  LayoutTrace lt = proto.layout_from_trace(trace, scenario.W(), scenario.S());
  return {realize_query(lt, scenario.V(), scenario.U(), {}), std::move(trace)};
}

Answer gmpc_answer(const Query& query, std::span<const Message> dataset) {
  return evaluate_answer(query, dataset);
}

Message gmpc_recover(const ProblemInstance& inst, const Answer& answer,
                     const GmpcTrace& trace, const Scenario& scenario) {
  LayoutTrace plan;
  plan.recovery.push_back({trace.l_star - 1, 1});
  return recover_with_plan(inst, plan, answer, scenario);
}

uint64_t enumerate_gmpc_traces(
    const ProblemInstance& inst, const DemandTuple& tuple,
    const std::function<void(const Query&, const GmpcTrace&)>& fn, uint64_t budget) {
  validate_tuple(inst, tuple);
  GmpcProtocol proto(inst);
  return enumerate_choices(
      [&](Chooser& ch) { return proto.draw_trace(tuple.W, tuple.S, ch); },
      [&](GmpcTrace t, const EnumeratingChooser& ch) {
        t.weight = ch.weight();
        LayoutTrace lt = proto.layout_from_trace(t, tuple.W, tuple.S);
        fn(realize_query(lt, tuple.V, tuple.U, {}), t);
      },
      {}, budget);
}

}  // namespace pcsi
