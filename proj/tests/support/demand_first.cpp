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

#include "support/demand_first.hpp"

#include <algorithm>

namespace pcsi::testing {

std::vector<uint32_t> DemandFirstProtocol::part_sizes() const {
  const uint32_t g = inst_.M() + inst_.D();
  std::vector<uint32_t> sizes;
  for (uint32_t left = inst_.K(); left > 0; left -= std::min(left, g)) {
    sizes.push_back(std::min(left, g));
  }
  return sizes;
}

LayoutTrace DemandFirstProtocol::build_layout(std::span<const Index> W, std::span<const Index> S,
                                              Chooser& ch) const {
  std::vector<Index> first(W.begin(), W.end());
  first.insert(first.end(), S.begin(), S.end());
  std::vector<Index> rest;
  for (Index i = 1; i <= inst_.K(); ++i)
    if (std::find(first.begin(), first.end(), i) == first.end()) rest.push_back(i);

  LayoutTrace lt;
  uint32_t pos = 0, free_slot = 0;
  auto take = [&](std::vector<Index>& pool, const char* label) {
    uint32_t k = pool.size() == 1 ? 0 : ch.choose_uniform(label, pool.size());
    Index x = pool[k];
    pool.erase(pool.begin() + k);
    ch.place(++pos, x);
    return x;
  };
  const auto sizes = part_sizes();
  for (size_t l = 0; l < sizes.size(); ++l) {
    std::vector<Index> part;
    std::vector<CoefSource> coeffs;
    for (uint32_t k = 0; k < sizes[l]; ++k) {
      if (l == 0) {
        Index x = take(first, "first_order");
        auto w = std::find(W.begin(), W.end(), x);
        if (w != W.end()) {
          coeffs.push_back({CoefSource::Kind::kDemand, static_cast<uint32_t>(w - W.begin()), 1});
        } else {
          auto s = std::find(S.begin(), S.end(), x);
          coeffs.push_back({CoefSource::Kind::kSide, static_cast<uint32_t>(s - S.begin()), 1});
        }
        part.push_back(x);
      } else {
        part.push_back(take(rest, "rest_order"));
        coeffs.push_back({CoefSource::Kind::kFree, free_slot++, 1});
      }
    }
    lt.parts.push_back(std::move(part));
    lt.coeffs.push_back(std::move(coeffs));
  }
  lt.free_count = free_slot;
  lt.recovery.push_back({0, 1});
  return lt;
}

std::optional<std::vector<Index>> DemandFirstProtocol::positions_of(
    const std::vector<std::vector<Index>>& parts) const {
  const auto sizes = part_sizes();
  if (parts.size() != sizes.size()) return std::nullopt;
  std::vector<Index> pi;
  for (size_t l = 0; l < parts.size(); ++l) {
    if (parts[l].size() != sizes[l]) return std::nullopt;
    pi.insert(pi.end(), parts[l].begin(), parts[l].end());
  }
  return pi;
}

}  // namespace pcsi::testing
