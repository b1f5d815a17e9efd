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

#include "pcsi/verify/report_json.hpp"

#include "../model/json_internal.hpp"

namespace pcsi {
namespace {

using detail::OrderedJson;

OrderedJson posterior_json(const QueryPosterior& qp) {
  OrderedJson j;
  j["query"] = detail::query_json(qp.query);
  j["probability"] = qp.probability.to_string();
  j["max_deviation"] = qp.max_deviation.to_string();
  OrderedJson posts = OrderedJson::array();
  for (const auto& [label, p] : qp.posteriors) {
    posts.push_back({{"label", label}, {"posterior", p.to_string()}});
  }
  j["posteriors"] = std::move(posts);
  return j;
}

}  // namespace

std::string query_posterior_to_json(const QueryPosterior& qp, int indent) {
  return posterior_json(qp).dump(indent);
}

std::string posterior_report_to_json(const PosteriorReport& r, int indent) {
  OrderedJson j;
  j["protocol"] = r.protocol;
  j["privacy"] = to_string(r.kind);
  j["K"] = r.K;
  j["M"] = r.M;
  j["D"] = r.D;
  j["q"] = r.q;
  j["queries"] = r.queries;
  j["mass"] = r.mass.to_string();
  j["target"] = r.target.to_string();
  j["pass"] = r.pass();
  j["layouts"] = r.layouts;
  j["traces"] = r.traces;
  j["pairs"] = r.pairs;
  j["violating_queries"] = r.violating_queries;
  j["worst_deviation"] = r.worst_deviation.to_string();
  OrderedJson v = OrderedJson::array();
  for (const auto& qp : r.violations) v.push_back(posterior_json(qp));
  j["violations"] = std::move(v);
  if (!r.retained.empty()) {
    OrderedJson kept = OrderedJson::array();
    for (const auto& qp : r.retained) kept.push_back(posterior_json(qp));
    j["retained"] = std::move(kept);
  }
  return j.dump(indent);
}

std::string mc_report_to_json(const McReport& r, int indent) {
  OrderedJson j;
  j["protocol"] = r.protocol;
  j["privacy"] = to_string(r.kind);
  j["classes"] = to_string(r.classes);
  j["trials"] = r.trials;
  j["class_count"] = r.class_count;
  j["cells"] = r.cells;
  j["failing_cells"] = r.failing_cells;
  j["pass_fraction"] = r.pass_fraction();
  j["familywise_failing"] = r.familywise_failing;
  j["target"] = r.target.to_string();
  j["pass"] = r.familywise_pass();
  OrderedJson flagged = OrderedJson::array();
  for (const McCell& c : r.flagged) {
    flagged.push_back({{"class", c.cls},
                       {"label", c.label},
                       {"n", c.n},
                       {"count", c.count},
                       {"estimate", c.estimate()},
                       {"expected", c.expected.to_string()},
                       {"interval", {c.lo, c.hi}},
                       {"familywise_pass", c.familywise_pass}});
  }
  j["flagged"] = std::move(flagged);
  return j.dump(indent);
}

std::string lemma_report_to_json(const LemmaReport& r, int indent) {
  OrderedJson j;
  j["mode"] = to_string(r.mode);
  j["pass"] = r.pass;
  OrderedJson labels = OrderedJson::array();
  for (const LemmaWitness& w : r.labels) {
    OrderedJson e{{"label", w.label}, {"pass", w.pass}};
    if (w.pass) {
      e["W"] = w.W;
      e["V"] = w.V;
      e["S"] = w.S;
      if (!w.U.empty()) e["U"] = w.U;
      e["combination"] = w.combination;
    }
    labels.push_back(std::move(e));
  }
  j["labels"] = std::move(labels);
  return j.dump(indent);
}

std::string support_report_to_json(const SupportReport& r, int indent) {
  OrderedJson j;
  j["mode"] = to_string(r.mode);
  j["pass"] = r.pass;
  j["combinations"] = r.combinations;
  OrderedJson subsets = OrderedJson::array();
  for (const SubsetSupport& s : r.subsets) {
    subsets.push_back({{"w_star", s.w_star},
                       {"pass", s.pass},
                       {"best_size", s.best_size},
                       {"witness", s.witness},
                       {"support", s.witness_support}});
  }
  j["subsets"] = std::move(subsets);
  return j.dump(indent);
}

}  // namespace pcsi
