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

#include "pcsi/model/rng.hpp"

#include "pcsi/error.hpp"

namespace pcsi {

namespace {
constexpr uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
}

uint64_t splitmix64(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

CounterRng::CounterRng(uint64_t seed, uint64_t stream)
    : key_(splitmix64(seed + kGamma) ^ splitmix64(~stream * kGamma)) {}

uint64_t CounterRng::next() {
  ++counter_;
  return splitmix64(key_ + counter_ * kGamma);
}

uint64_t CounterRng::uniform(uint64_t n) {
  if (n == 0) throw Error("uniform() over an empty range");
  // Lemire's multiply-shift with rejection.
  unsigned __int128 m = static_cast<unsigned __int128>(next()) * n;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < n) {
    uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(next()) * n;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

CounterRng CounterRng::split(uint64_t stream) const {
  CounterRng child(0);
  child.key_ = splitmix64(key_ ^ splitmix64(stream + 1) ^ (counter_ * kGamma));
  return child;
}

}  // namespace pcsi
