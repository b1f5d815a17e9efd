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

#include "pcsi/capacity/capacity.hpp"

#include <algorithm>
#include <sstream>

#include "../model/json_internal.hpp"
#include "pcsi/error.hpp"

namespace pcsi {

std::string to_string(Setting s) {
  switch (s) {
    case Setting::kIpcSi: return "IPC-SI";
    case Setting::kIpcCsi: return "IPC-CSI";
    case Setting::kJpcSi: return "JPC-SI";
    case Setting::kJpcCsi: return "JPC-CSI";
  }
  return "";
}

std::string to_string(BoundKind k) {
  switch (k) {
    case BoundKind::kExact: return "exact";
    case BoundKind::kLowerBound: return "lower-bound";
    case BoundKind::kNotCovered: return "not-covered";
  }
  return "";
}

namespace {

void check(uint32_t K, uint32_t M, uint32_t D) {
  if (D < 1) throw Error("D must be at least 1");
  if (uint64_t{M} + D > K) throw Error("need M + D <= K");
}

uint32_t ceil_div(uint32_t a, uint32_t b) { return (a + b - 1) / b; }

CapacityEntry entry(uint32_t K, uint32_t M, uint32_t D, std::string setting,
                    std::optional<Rational> rate, BoundKind kind) {
  CapacityEntry e{K, M, D, std::move(setting), rate, std::nullopt, kind};
  if (rate) e.cost = Rational(1) / *rate;
  return e;
}

CapacityEntry cost_entry(uint32_t K, uint32_t M, uint32_t D, std::string setting, uint32_t cost,
                         BoundKind kind) {
  return entry(K, M, D, std::move(setting), Rational(1, static_cast<long>(cost)), kind);
}

}  // namespace

Rational ipc_capacity(uint32_t K, uint32_t M, uint32_t D) {
  check(K, M, D);
  return Rational(1, static_cast<long>(ceil_div(K, M + D)));
}

Rational jpc_si_lower(uint32_t K, uint32_t M, uint32_t D) {
  check(K, M, D);
  return Rational(1, static_cast<long>(ceil_div(K - M - D, M / D + 1) + 1));
}

std::optional<Rational> jpc_csi_lower(uint32_t K, uint32_t M, uint32_t D) {
  check(K, M, D);
  const uint32_t s = M / D + 1;
  if ((K - M - D) % s != 0) return std::nullopt;
  return Rational(1, static_cast<long>((K - M - D) / s + 1));
}

std::vector<CapacityEntry> capacity_entries(uint32_t K, uint32_t M, uint32_t D) {
  const Rational ipc = ipc_capacity(K, M, D);
  const auto csi = jpc_csi_lower(K, M, D);
  return {
      entry(K, M, D, to_string(Setting::kIpcSi), ipc, BoundKind::kExact),
      entry(K, M, D, to_string(Setting::kIpcCsi), ipc, BoundKind::kExact),
      entry(K, M, D, to_string(Setting::kJpcSi), jpc_si_lower(K, M, D), BoundKind::kLowerBound),
      entry(K, M, D, to_string(Setting::kJpcCsi), csi,
            csi ? BoundKind::kLowerBound : BoundKind::kNotCovered),
  };
}

std::vector<CapacityEntry> capacity_grid(uint32_t k_min, uint32_t k_max, uint32_t M, uint32_t D) {
  if (k_min > k_max) throw Error("empty K range");
  if (D < 1) throw Error("D must be at least 1");
  std::vector<CapacityEntry> rows;
  for (uint32_t K = std::max(k_min, M + D); K <= k_max; ++K) {
    auto e = capacity_entries(K, M, D);
    rows.insert(rows.end(), e.begin(), e.end());
  }
  return rows;
}

std::vector<CapacityEntry> comparison_table(uint32_t K, uint32_t M, uint32_t D) {
  check(K, M, D);
  const uint32_t n = ceil_div(K, M + D);
  std::vector<CapacityEntry> rows;
  rows.push_back(cost_entry(K, M, D, "IPC", n, BoundKind::kExact));
  rows.push_back(cost_entry(K, M, D, "IPIR-SI", std::min(K - M * (K / (M + D)), D * n),
                            BoundKind::kLowerBound));
  rows.push_back(entry(K, M, D, "JPC-SI", jpc_si_lower(K, M, D), BoundKind::kLowerBound));
  if (M == 2 && D == 2) {
    rows.push_back(cost_entry(K, M, D, "JPIR-retrieve-two", std::min(K - 2, K - K / 3),
                              BoundKind::kLowerBound));
  }
  rows.push_back(cost_entry(K, M, D, "JPIR-CSI", K - 1, BoundKind::kExact));
  return rows;
}

TableFormat parse_table_format(std::string_view text) {
  if (text == "csv") return TableFormat::kCsv;
  if (text == "json") return TableFormat::kJson;
  if (text == "text") return TableFormat::kText;
  throw Error("unknown format '" + std::string(text) + "'");
}

std::string format_table(const std::vector<CapacityEntry>& rows, TableFormat format) {
  auto show = [](const std::optional<Rational>& r) { return r ? r->to_display() : std::string(); };
  if (format == TableFormat::kJson) {
    detail::OrderedJson arr = detail::OrderedJson::array();
    for (const auto& e : rows) {
      detail::OrderedJson j;
      j["K"] = e.K;
      j["M"] = e.M;
      j["D"] = e.D;
      j["setting"] = e.setting;
      j["rate"] = e.rate ? detail::OrderedJson(e.rate->to_display()) : detail::OrderedJson();
      j["cost"] = e.cost ? detail::OrderedJson(e.cost->to_display()) : detail::OrderedJson();
      j["kind"] = to_string(e.kind);
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::ostringstream out;
  if (format == TableFormat::kCsv) {
    out << "K,M,D,setting,rate,cost,kind\n";
    for (const auto& e : rows) {
      out << e.K << ',' << e.M << ',' << e.D << ',' << e.setting << ',' << show(e.rate) << ','
          << show(e.cost) << ',' << to_string(e.kind) << '\n';
    }
    return out.str();
  }
  std::vector<std::vector<std::string>> cells{{"K", "M", "D", "setting", "rate", "cost", "kind"}};
  for (const auto& e : rows) {
    cells.push_back({std::to_string(e.K), std::to_string(e.M), std::to_string(e.D), e.setting,
                     e.rate ? show(e.rate) : "-", e.cost ? show(e.cost) : "-", to_string(e.kind)});
  }
  std::vector<size_t> width(cells[0].size(), 0);
  for (const auto& r : cells)
    for (size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  for (const auto& r : cells) {
    for (size_t c = 0; c < r.size(); ++c) {
      out << r[c];
      if (c + 1 < r.size()) out << std::string(width[c] - r[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pcsi
