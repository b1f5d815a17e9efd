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

#include "cli/demo.hpp"

#include <fstream>
#include <sstream>

#include "pcsi/error.hpp"
#include "pcsi/gmpc/gmpc.hpp"
#include "pcsi/gmpc/gmpc_json.hpp"
#include "pcsi/pcia/pcia.hpp"
#include "pcsi/pcia/pcia_json.hpp"
#include "pcsi/pcia/support.hpp"
#include "pcsi/verify/posterior.hpp"

namespace pcsi::cli {
namespace {

constexpr uint64_t kDemoSeed = 20260101;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class Range>
std::string braces(const Range& r, const char* open = "{", const char* close = "}") {
  std::string s = open;
  bool first = true;
  for (const auto& x : r) {
    if (!first) s += ',';
    first = false;
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, FieldElement>) {
      s += std::to_string(x.value());
    } else {
      s += std::to_string(x);
    }
  }
  return s + close;
}

void print_setup(const ProblemInstance& inst, const DemandTuple& t, std::ostream& out) {
  out << "instance: " << inst.describe() << "\n";
  out << "demand: W = " << braces(t.W) << ", V = " << braces(t.V, "(", ")") << "\n";
  out << "side information: S = " << braces(t.S) << ", U = " << braces(t.U, "(", ")") << "\n";
}

void print_answers(const Query& q, std::ostream& out) {
  for (size_t l = 0; l < q.parts.size(); ++l) {
    out << "Q_" << l + 1 << " = " << braces(q.parts[l].indices, "(", ")") << "   A_" << l + 1
        << " = " << format_linear_form(part_form(q.parts[l])) << "\n";
  }
}

// The demand form left after combining answers and removing the side terms.
LinearForm recovered_form(const Query& q, const std::vector<std::pair<size_t, FieldElement>>& comb,
                          const DemandTuple& t) {
  LinearForm f = combine_parts(q, comb);
  LinearForm out;
  for (const Term& term : f) {
    FieldElement c = term.coef;
    for (size_t k = 0; k < t.S.size(); ++k)
      if (t.S[k] == term.index) c = c - t.U[k];
    if (c.value() != 0) out.push_back({term.index, c});
  }
  return out;
}

std::string recovery_text(const std::vector<std::pair<size_t, FieldElement>>& comb,
                          const ProblemInstance& inst) {
  std::string s;
  for (const auto& [part, c] : comb) {
    if (!s.empty()) s += '+';
    if (c.value() != 1) s += std::to_string(c.value());
    s += "A_" + std::to_string(part + 1);
  }
  return s + (inst.mode() == SideInfo::kCoded ? "-Y" : "-sum_k U_k X_{S_k}");
}

void print_check(const Message& z, const Scenario& sc, std::ostream& out) {
  out << "check on sample data: recovered value " << (z == sc.Z ? "equals" : "DIFFERS FROM")
      << " the demanded combination\n";
}

int demo_gmpc(int example, const std::string& text, std::ostream& out) {
  GmpcFixture fx = gmpc_fixture_from_json(text);
  const ProblemInstance& inst = fx.instance;
  CounterRng rng(kDemoSeed);
  Scenario sc = make_scenario(inst, sample_dataset(inst, rng), fx.tuple);
  auto [query, trace] = gmpc_query(inst, sc, fx.trace);
  out << "Example " << example << ": " << fx.title << "\n";
  print_setup(inst, fx.tuple, out);
  out << "l* = " << trace.l_star << ", branch = " << to_string(trace.branch)
      << ", trace probability = " << trace.weight.to_string() << "\n";
  print_answers(query, out);
  std::vector<std::pair<size_t, FieldElement>> comb{{trace.l_star - 1, inst.element(1)}};
  out << "recovery: " << recovery_text(comb, inst) << "\n";
  out << "Z = " << format_linear_form(recovered_form(query, comb, fx.tuple)) << "\n";
  Message z = gmpc_recover(inst, gmpc_answer(query, sc.dataset), trace, sc);
  print_check(z, sc, out);
  if (z != sc.Z) return 1;
  if (example == 2) {
    GmpcProtocol proto(inst);
    QueryPosterior qp = posterior_for_query(proto, query, PrivacyKind::kIndividual);
    out << "Pr(Q) = " << qp.probability.to_string() << "\n";
    for (const auto& [label, p] : qp.posteriors) {
      out << "Pr(X_" << label[0] << " in X_W | Q) = " << p.to_string() << "\n";
    }
    if (!qp.max_deviation.is_zero()) return 1;
  }
  return 0;
}

int demo_pcia(int example, const std::string& text, std::ostream& out) {
  PciaFixture fx = pcia_fixture_from_json(text);
  const ProblemInstance& inst = fx.instance;
  CounterRng rng(kDemoSeed);
  Scenario sc = make_scenario(inst, sample_dataset(inst, rng), fx.tuple);
  auto [query, trace] = pcia_query(inst, sc, fx.script.blocks, fx.script.free_alphas);
  const PciaParams p = pcia_params(inst);
  out << "Example " << example << ": " << fx.title << "\n";
  print_setup(inst, fx.tuple, out);
  for (size_t j = 0; j < trace.blocks.size(); ++j) {
    out << "B_" << j + 1 << " = " << braces(trace.blocks[j]) << (j + 1 < trace.blocks.size() ? "  " : "\n");
  }
  for (uint32_t j = 1; j <= p.t; ++j) {
    out << "omega_{i," << j << "}, i = 1.." << p.n << ":";
    for (uint32_t i = 1; i <= p.n; ++i) out << ' ' << pcia_omega(p, inst.field(), i, j);
    out << "\n";
  }
  out << "I = " << braces(trace.alignment.I) << ", c = " << braces(trace.alignment.c, "(", ")")
      << "\n";
  print_answers(query, out);
  for (size_t l = 0; l < query.parts.size() && l < fx.reported_coefficients.size(); ++l) {
    const auto& part = query.parts[l];
    const auto& reported = fx.reported_coefficients[l];
    for (size_t k = 0; k < part.coeffs.size() && k < reported.size(); ++k) {
      if (part.coeffs[k].value() == reported[k]) continue;
      out << "note: Q_" << l + 1 << " coefficient of X_" << part.indices[k] << ": printed value "
          << reported[k] << " / recomputed value " << part.coeffs[k].value() << "\n";
    }
  }
  std::vector<std::pair<size_t, FieldElement>> comb;
  for (size_t k = 0; k < trace.alignment.I.size(); ++k) {
    comb.push_back({trace.alignment.I[k] - 1, inst.element(trace.alignment.c[k])});
  }
  out << "recovery: " << recovery_text(comb, inst) << "\n";
  out << "Z = " << format_linear_form(recovered_form(query, comb, fx.tuple)) << "\n";
  Message z = pcia_recover(inst, pcia_answer(query, sc.dataset), trace, sc);
  print_check(z, sc, out);
  return z == sc.Z ? 0 : 1;
}

std::string support_line(const SubsetSupport& s) {
  if (s.pass) return "pass (witness support " + braces(s.witness_support) + ")";
  if (s.best_size == 0) return "fail (no combination covers it)";
  return "fail (smallest covering support " + braces(s.witness_support) + ", size " +
         std::to_string(s.best_size) + ")";
}

int demo_structure(int example, const std::string& text, std::ostream& out) {
  StructureFixture fx = structure_fixture_from_json(text);
  const ProblemInstance& inst = fx.instance;
  out << "Example " << example << ": " << fx.title << "\n";
  out << "instance: " << inst.describe() << "\n";
  for (const StructureCase& c : fx.cases) {
    out << "case (" << c.name << ")\n";
    print_answers(c.query, out);
    SubsetSupport csi = support_for_subset(c.query, inst, SupportMode::kCSI, fx.pair);
    SubsetSupport si = support_for_subset(c.query, inst, SupportMode::kSI, fx.pair);
    SupportReport all = support_requirement_check(c.query, inst, SupportMode::kCSI);
    out << "  CSI support for " << braces(fx.pair) << ": " << support_line(csi) << "\n";
    out << "  SI support for " << braces(fx.pair) << ": " << support_line(si) << "\n";
    out << "  CSI requirement over all pairs: " << (all.pass ? "pass" : "fail");
    if (!all.pass) {
      std::vector<std::string> failing;
      for (const auto& s : all.subsets)
        if (!s.pass) failing.push_back(braces(s.w_star));
      out << " (" << failing.size() << " pairs fail, first " << failing.front() << ")";
    }
    out << "\n";
  }
  return 0;
}

}  // namespace

std::string default_fixture_dir() { return PCSI_FIXTURE_DIR; }

int run_demo(int example, const std::string& fixture_dir, std::ostream& out) {
  if (example < 1 || example > 4) throw Error("--example must be 1, 2, 3 or 4");
  std::string text = read_file(fixture_dir + "/example" + std::to_string(example) + ".json");
  if (example <= 2) return demo_gmpc(example, text, out);
  if (example == 3) return demo_pcia(example, text, out);
  return demo_structure(example, text, out);
}

}  // namespace pcsi::cli
