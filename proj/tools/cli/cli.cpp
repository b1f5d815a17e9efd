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

#include "cli/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "cli/demo.hpp"
#include "pcsi/capacity/capacity.hpp"
#include "pcsi/error.hpp"
#include "pcsi/gmpc/gmpc.hpp"
#include "pcsi/gmpc/gmpc_json.hpp"
#include "pcsi/model/json_io.hpp"
#include "pcsi/pcia/pcia.hpp"
#include "pcsi/pcia/pcia_json.hpp"
#include "pcsi/verify/decodability.hpp"
#include "pcsi/verify/monte_carlo.hpp"
#include "pcsi/verify/posterior.hpp"
#include "pcsi/verify/report_json.hpp"

namespace pcsi::cli {
namespace {

constexpr uint64_t kDefaultSeed = 2026;

struct InstanceFlags {
  uint32_t K = 12, M = 2, D = 2;
  uint64_t q = 7;
  uint32_t ell = 1;
  std::string si = "coded";

  void add(CLI::App* app) {
    app->add_option("--K", K, "number of messages")->capture_default_str();
    app->add_option("--M", M, "side information size")->capture_default_str();
    app->add_option("--D", D, "demand size")->capture_default_str();
    app->add_option("--q", q, "field size (prime)")->capture_default_str();
    app->add_option("--ell", ell, "message length in field symbols")->capture_default_str();
    app->add_option("--si", si, "side information: coded or uncoded")
        ->check(CLI::IsMember({"coded", "uncoded"}))
        ->capture_default_str();
  }

  ProblemInstance build() const { return ProblemInstance(K, M, D, q, ell, parse_side_info(si)); }
};

std::unique_ptr<QueryProtocol> make_protocol(const std::string& name, const ProblemInstance& inst,
                                             const std::string& placement) {
  if (name == "gmpc") return std::make_unique<GmpcProtocol>(inst);
  return std::make_unique<PciaProtocol>(inst, parse_pcia_placement(placement));
}

// Writes to --out when given, else to the stream.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

struct VerifyFlags {
  InstanceFlags inst;
  std::string protocol = "gmpc";
  std::string privacy;
  std::string mode = "exact";
  std::string placement = "uniform";
  std::string classes = "positional";
  std::string format = "text";
  std::string out;
  uint64_t trials = 100000;
  uint64_t seed = kDefaultSeed;
  uint64_t budget = 1000000000;
  unsigned threads = 1;
  size_t max_violations = 16;
};

std::string exact_text(const PosteriorReport& r) {
  std::ostringstream s;
  s << "protocol " << r.protocol << ", " << to_string(r.kind) << " privacy, K=" << r.K
    << " M=" << r.M << " D=" << r.D << " q=" << r.q << "\n";
  s << "layouts " << r.layouts << ", traces " << r.traces << ", (trace, draw) pairs " << r.pairs
    << "\n";
  s << "queries " << r.queries << ", mass " << r.mass.to_display() << ", target "
    << r.target.to_string() << "\n";
  s << "violating queries " << r.violating_queries << ", worst deviation "
    << r.worst_deviation.to_display() << "\n";
  for (const auto& v : r.violations) {
    s << "  violation " << query_to_json(v.query) << " Pr(Q) = " << v.probability.to_string()
      << ":";
    for (const auto& [label, p] : v.posteriors) {
      if (p == r.target) continue;
      s << " [";
      for (size_t k = 0; k < label.size(); ++k) s << (k ? "," : "") << label[k];
      s << "]=" << p.to_display();
    }
    s << "\n";
  }
  s << "result: " << (r.pass() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

std::string mc_text(const McReport& r) {
  std::ostringstream s;
  s << "protocol " << r.protocol << ", " << to_string(r.kind) << " privacy, Monte-Carlo "
    << r.trials << " trials, " << to_string(r.classes) << " classes\n";
  s << "classes " << r.class_count << ", cells " << r.cells << ", outside 99% interval "
    << r.failing_cells << ", pass fraction " << r.pass_fraction() << "\n";
  s << "outside family-wise interval " << r.familywise_failing << "\n";
  for (const McCell& c : r.flagged) {
    s << "  flagged " << c.cls << " n=" << c.n << " count=" << c.count << " expected "
      << c.expected.to_string() << " interval [" << c.lo << "," << c.hi << "]"
      << (c.familywise_pass ? "" : " family-wise violation") << "\n";
  }
  s << "result: " << (r.familywise_pass() ? "PASS" : "FAIL") << "\n";
  return s.str();
}

int run_verify(const VerifyFlags& f, std::ostream& out) {
  ProblemInstance inst = f.inst.build();
  auto proto = make_protocol(f.protocol, inst, f.placement);
  PrivacyKind kind = f.privacy.empty()
                         ? (f.protocol == "gmpc" ? PrivacyKind::kIndividual : PrivacyKind::kJoint)
                         : parse_privacy_kind(f.privacy);
  if (f.mode == "exact") {
    VerifyOptions opt;
    opt.budget = f.budget;
    opt.threads = f.threads;
    opt.max_violations = f.max_violations;
    PosteriorReport r = verify_privacy(*proto, kind, opt);
    emit(f.format == "json" ? posterior_report_to_json(r) + "\n" : exact_text(r), f.out, out);
    return r.pass() ? 0 : 1;
  }
  McOptions opt;
  opt.trials = f.trials;
  opt.seed = f.seed;
  opt.classes = parse_mc_classes(f.classes);
  McReport r = monte_carlo_privacy(*proto, kind, opt);
  emit(f.format == "json" ? mc_report_to_json(r) + "\n" : mc_text(r), f.out, out);
  return r.familywise_pass() ? 0 : 1;
}

struct CapacityFlags {
  std::string grid;
  uint32_t K = 0, M = 2, D = 2;
  bool compare = false;
  std::string format = "text";
  std::string out;
};

int run_capacity(const CapacityFlags& f, std::ostream& out) {
  std::vector<CapacityEntry> rows;
  if (f.compare) {
    if (f.K == 0) throw Error("--compare needs --K");
    rows = comparison_table(f.K, f.M, f.D);
  } else {
    uint32_t lo = 0, hi = 0;
    char colon = 0;
    std::istringstream in(f.grid);
    if (!(in >> lo >> colon >> hi) || colon != ':' || !in.eof()) {
      throw Error("--grid expects Kmin:Kmax");
    }
    rows = capacity_grid(lo, hi, f.M, f.D);
  }
  emit(format_table(rows, parse_table_format(f.format)), f.out, out);
  return 0;
}

struct SimulateFlags {
  InstanceFlags inst;
  std::string protocol = "gmpc";
  std::string placement = "uniform";
  uint64_t trials = 1000;
  uint64_t seed = kDefaultSeed;
  std::string traces;
  std::string format = "text";
  std::string out;
};

int run_simulate(const SimulateFlags& f, std::ostream& out) {
  ProblemInstance inst = f.inst.build();
  if (f.trials == 0) throw Error("--trials must be positive");
  const bool gmpc = f.protocol == "gmpc";
  const PciaPlacement placement = parse_pcia_placement(f.placement);
  const Rational capacity =
      gmpc ? ipc_capacity(inst.K(), inst.M(), inst.D()) : jpc_si_lower(inst.K(), inst.M(), inst.D());
  std::ofstream trace_file;
  if (!f.traces.empty()) {
    trace_file.open(f.traces);
    if (!trace_file) throw Error("cannot write " + f.traces);
  }
  uint64_t recovered = 0, rejections = 0;
  std::set<Rational> rates;
  for (uint64_t t = 0; t < f.trials; ++t) {
    CounterRng rng(f.seed, t);
    CounterRng tuple_rng = rng.split(1), data_rng = rng.split(2), query_rng = rng.split(3);
    DemandTuple tuple = sample_tuple(inst, tuple_rng);
    Scenario sc = make_scenario(inst, sample_dataset(inst, data_rng), std::move(tuple));
    Query q;
    bool same = false;
    std::string trace_json;
    if (gmpc) {
      auto [query, trace] = gmpc_query(inst, sc, query_rng);
      same = gmpc_recover(inst, gmpc_answer(query, sc.dataset), trace, sc) == sc.Z;
      q = std::move(query);
      if (trace_file.is_open()) trace_json = gmpc_trace_to_json(trace);
    } else {
      auto [query, trace] = pcia_query(inst, sc, query_rng, placement);
      same = pcia_recover(inst, pcia_answer(query, sc.dataset), trace, sc) == sc.Z;
      rejections += trace.csi_rejections;
      q = std::move(query);
      if (trace_file.is_open()) trace_json = pcia_trace_to_json(trace);
    }
    recovered += same;
    rates.insert(measured_rate(q, inst));
    if (trace_file.is_open()) {
      trace_file << "{\"trial\":" << t << ",\"query\":" << query_to_json(q)
                 << ",\"trace\":" << trace_json << "}\n";
    }
  }
  const bool rate_ok = rates.size() == 1 && *rates.begin() == capacity;
  const bool ok = recovered == f.trials && rate_ok;
  std::ostringstream s;
  std::string rate_list;
  for (const Rational& r : rates) rate_list += (rate_list.empty() ? "" : ",") + r.to_string();
  if (f.format == "json") {
    s << "{\"protocol\":\"" << f.protocol << "\",\"trials\":" << f.trials
      << ",\"recovered\":" << recovered << ",\"measured_rate\":\"" << rate_list
      << "\",\"capacity\":\"" << capacity.to_string() << "\",\"csi_rejections\":" << rejections
      << ",\"pass\":" << (ok ? "true" : "false") << "}\n";
  } else {
    s << "protocol " << f.protocol << ", " << inst.describe() << "\n";
    s << "trials " << f.trials << ", recovered " << recovered << "\n";
    s << "measured rate " << rate_list << ", expected " << capacity.to_string() << "\n";
    if (!gmpc) s << "CSI rejections " << rejections << "\n";
    s << "result: " << (ok ? "PASS" : "FAIL") << "\n";
  }
  emit(s.str(), f.out, out);
  return ok ? 0 : 1;
}

}  // namespace

int run_command(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Private computation with side information: protocols and verifiers", "pcsi"};
  app.require_subcommand(1);

  int example = 0;
  std::string fixtures = default_fixture_dir();
  auto* demo = app.add_subcommand("demo", "replay a worked example");
  demo->add_option("--example", example, "example number 1-4")->required();
  demo->add_option("--fixtures", fixtures, "fixture directory")->capture_default_str();

  VerifyFlags vf;
  auto* verify = app.add_subcommand("verify", "check privacy exactly or by sampling");
  vf.inst.add(verify);
  verify->add_option("--protocol", vf.protocol)->check(CLI::IsMember({"gmpc", "pcia"}));
  verify->add_option("--privacy", vf.privacy, "individual or joint (default by protocol)")
      ->check(CLI::IsMember({"individual", "joint"}));
  verify->add_option("--mode", vf.mode)->check(CLI::IsMember({"exact", "mc"}));
  verify->add_option("--placement", vf.placement, "PC-IA demand placement")
      ->check(CLI::IsMember({"uniform", "distinct-own-blocks"}));
  verify->add_option("--classes", vf.classes, "Monte-Carlo classes")
      ->check(CLI::IsMember({"exact", "positional"}));
  verify->add_option("--trials", vf.trials);
  verify->add_option("--seed", vf.seed);
  verify->add_option("--budget", vf.budget, "exact mode (trace, draw) budget");
  verify->add_option("--threads", vf.threads)->check(CLI::Range(1u, 256u));
  verify->add_option("--max-violations", vf.max_violations);
  verify->add_option("--format", vf.format)->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", vf.out);

  CapacityFlags cf;
  auto* capacity = app.add_subcommand("capacity", "capacity tables");
  auto* grid_opt = capacity->add_option("--grid", cf.grid, "Kmin:Kmax");
  auto* compare_opt = capacity->add_flag("--compare", cf.compare, "comparison table at --K");
  grid_opt->excludes(compare_opt);
  capacity->add_option("--K", cf.K);
  capacity->add_option("--M", cf.M)->capture_default_str();
  capacity->add_option("--D", cf.D)->capture_default_str();
  capacity->add_option("--format", cf.format)->check(CLI::IsMember({"csv", "json", "text"}));
  capacity->add_option("--out", cf.out);

  SimulateFlags sf;
  auto* simulate = app.add_subcommand("simulate", "run the protocol and check recovery");
  sf.inst.add(simulate);
  simulate->add_option("--protocol", sf.protocol)->check(CLI::IsMember({"gmpc", "pcia"}));
  simulate->add_option("--placement", sf.placement)
      ->check(CLI::IsMember({"uniform", "distinct-own-blocks"}));
  simulate->add_option("--trials", sf.trials);
  simulate->add_option("--seed", sf.seed);
  simulate->add_option("--traces", sf.traces, "write one JSON line per trial");
  simulate->add_option("--format", sf.format)->check(CLI::IsMember({"text", "json"}));
  simulate->add_option("--out", sf.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  try {
    if (*demo) return run_demo(example, fixtures, out);
    if (*verify) return run_verify(vf, out);
    if (*capacity) {
      if (cf.grid.empty() && !cf.compare) throw Error("capacity needs --grid or --compare");
      return run_capacity(cf, out);
    }
    return run_simulate(sf, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (rerun with --mode mc)\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace pcsi::cli
