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

#include "pcsi/verify/monte_carlo.hpp"

#include <algorithm>
#include <boost/math/distributions/binomial.hpp>
#include <map>
#include <unordered_map>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/error.hpp"
#include "pcsi/model/json_io.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

std::string to_string(McClasses classes) {
  return classes == McClasses::kExact ? "exact" : "positional";
}

McClasses parse_mc_classes(std::string_view text) {
  if (text == "exact") return McClasses::kExact;
  if (text == "positional") return McClasses::kPositional;
  throw Error("unknown class mode '" + std::string(text) + "'");
}

std::pair<uint64_t, uint64_t> binomial_interval(uint64_t n, const Rational& p, double confidence) {
  if (p.sign() <= 0) return {0, 0};
  if (p >= Rational(1)) return {n, n};
  if (n == 0) return {0, 0};
  const double tail = (1.0 - confidence) / 2.0;
  boost::math::binomial_distribution<double> dist(static_cast<double>(n), p.to_double());
  double lo = boost::math::quantile(dist, tail);
  double hi = boost::math::quantile(boost::math::complement(dist, tail));
  return {static_cast<uint64_t>(std::max(0.0, lo)),
          std::min(n, static_cast<uint64_t>(hi))};
}

namespace {

std::vector<std::vector<Index>> all_labels(const ProblemInstance& inst, PrivacyKind kind) {
  std::vector<std::vector<Index>> labels;
  if (kind == PrivacyKind::kIndividual) {
    for (Index i = 1; i <= inst.K(); ++i) labels.push_back({i});
  } else {
    for_each_combination(inst.K(), inst.D(), [&](std::span<const uint32_t> c) {
      std::vector<Index> w;
      for (uint32_t x : c) w.push_back(x + 1);
      labels.push_back(std::move(w));
    });
  }
  return labels;
}

bool hit(PrivacyKind kind, const std::vector<Index>& label, const std::vector<Index>& W) {
  if (kind == PrivacyKind::kIndividual) return std::binary_search(W.begin(), W.end(), label[0]);
  return label == W;
}

std::string exact_key(const Query& q) {
  std::string key = layout_key(query_layout(q));
  for (const auto& part : q.parts)
    for (const auto& c : part.coeffs) {
      uint32_t v = c.value();
      key.append(reinterpret_cast<const char*>(&v), sizeof v);
    }
  return key;
}

std::string describe_positions(const std::vector<Index>& label,
                               const std::vector<std::pair<int, int>>& pos) {
  std::string s;
  for (size_t k = 0; k < label.size(); ++k) {
    if (k) s += ' ';
    s += "X_" + std::to_string(label[k]) + "@";
    if (pos[k].first < 0) {
      s += "-";
    } else {
      s += std::to_string(pos[k].first + 1) + "." + std::to_string(pos[k].second + 1);
    }
  }
  return s;
}

struct ExactClass {
  Query representative;
  uint64_t n = 0;
  std::vector<uint64_t> counts;  // per label
};

struct PosCell {
  std::vector<Index> label;
  std::string desc;
  uint64_t n = 0;
  uint64_t count = 0;
};

}  // namespace

McReport monte_carlo_privacy(const QueryProtocol& protocol, PrivacyKind kind,
                             const McOptions& options) {
  if (options.trials < 1000) throw Error("Monte-Carlo mode needs at least 1000 trials");
  if (options.exact_reference && options.classes != McClasses::kExact) {
    throw Error("exact reference requires exact classes");
  }
  const ProblemInstance& inst = protocol.instance();
  const auto labels = all_labels(inst, kind);
  const Rational target = kind == PrivacyKind::kIndividual
                              ? Rational(inst.D(), inst.K())
                              : Rational(mpq_class(mpz_class(1), binomial_big(inst.K(), inst.D())));

  std::unordered_map<std::string, size_t> exact_index;
  std::vector<ExactClass> exact;
  std::map<std::string, PosCell> positional;

  for (uint64_t t = 0; t < options.trials; ++t) {
    CounterRng rng(options.seed, t);
    CounterRng tuple_rng = rng.split(1), query_rng = rng.split(2);
    DemandTuple tuple = sample_tuple(inst, tuple_rng);
    Query q = sample_query(protocol, tuple, query_rng).query;
    if (options.classes == McClasses::kExact) {
      auto [it, fresh] = exact_index.try_emplace(exact_key(q), exact.size());
      if (fresh) exact.push_back({q, 0, std::vector<uint64_t>(labels.size(), 0)});
      ExactClass& cl = exact[it->second];
      ++cl.n;
      for (size_t l = 0; l < labels.size(); ++l) cl.counts[l] += hit(kind, labels[l], tuple.W);
      continue;
    }
    std::vector<std::pair<int, int>> where(inst.K() + 1, {-1, -1});
    for (size_t p = 0; p < q.parts.size(); ++p)
      for (size_t k = 0; k < q.parts[p].indices.size(); ++k)
        if (where[q.parts[p].indices[k]].first < 0)
          where[q.parts[p].indices[k]] = {static_cast<int>(p), static_cast<int>(k)};
    for (const auto& label : labels) {
      std::string key;
      std::vector<std::pair<int, int>> pos;
      for (Index i : label) {
        key.push_back(static_cast<char>(i));
        key.push_back(static_cast<char>(where[i].first));
        key.push_back(static_cast<char>(where[i].second));
        pos.push_back(where[i]);
      }
      PosCell& cell = positional[key];
      if (cell.n == 0) {
        cell.label = label;
        cell.desc = describe_positions(label, pos);
      }
      ++cell.n;
      cell.count += hit(kind, label, tuple.W);
    }
  }

  McReport report;
  report.protocol = protocol.name();
  report.kind = kind;
  report.classes = options.classes;
  report.trials = options.trials;
  report.target = target;
  const uint64_t total_cells = options.classes == McClasses::kExact
                                   ? exact.size() * labels.size()
                                   : positional.size();
  const double familywise =
      1.0 - (1.0 - options.confidence) / static_cast<double>(std::max<uint64_t>(total_cells, 1));
  auto judge = [&](McCell cell) {
    auto [lo, hi] = binomial_interval(cell.n, cell.expected, options.confidence);
    cell.lo = lo;
    cell.hi = hi;
    cell.pass = cell.count >= lo && cell.count <= hi;
    auto [flo, fhi] = binomial_interval(cell.n, cell.expected, familywise);
    cell.familywise_pass = cell.count >= flo && cell.count <= fhi;
    report.familywise_failing += !cell.familywise_pass;
    ++report.cells;
    if (!cell.pass) {
      ++report.failing_cells;
      if (report.flagged.size() < options.max_flagged) report.flagged.push_back(std::move(cell));
    }
  };
  if (options.classes == McClasses::kExact) {
    report.class_count = exact.size();
    for (const ExactClass& cl : exact) {
      std::vector<Rational> expected(labels.size(), target);
      if (options.exact_reference) {
        QueryPosterior qp = posterior_for_query(protocol, cl.representative, kind, options.budget);
        for (size_t l = 0; l < labels.size(); ++l) expected[l] = qp.posteriors[l].second;
      }
      const std::string desc = query_to_json(cl.representative);
      for (size_t l = 0; l < labels.size(); ++l) {
        McCell cell;
        cell.cls = desc;
        cell.label = labels[l];
        cell.n = cl.n;
        cell.count = cl.counts[l];
        cell.expected = expected[l];
        judge(std::move(cell));
      }
    }
  } else {
    report.class_count = positional.size();
    for (auto& [key, pc] : positional) {
      McCell cell;
      cell.cls = pc.desc;
      cell.label = pc.label;
      cell.n = pc.n;
      cell.count = pc.count;
      cell.expected = target;
      judge(std::move(cell));
    }
  }
  return report;
}

}  // namespace pcsi
