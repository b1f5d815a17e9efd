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

#ifndef PCSI_MODEL_RNG_HPP_
#define PCSI_MODEL_RNG_HPP_

#include <cstdint>
#include <limits>

namespace pcsi {

// Counter-based generator: output n is a SplitMix64 finaliser applied to
// key + n * gamma. split() derives independent streams, so results do not
// depend on how work is divided between threads.
class CounterRng {
 public:
  using result_type = uint64_t;

  explicit CounterRng(uint64_t seed, uint64_t stream = 0);

  uint64_t next();
  uint64_t operator()() { return next(); }
  // Uniform on [0, n). n must be positive.
  uint64_t uniform(uint64_t n);

  CounterRng split(uint64_t stream) const;

  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() { return std::numeric_limits<uint64_t>::max(); }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

uint64_t splitmix64(uint64_t x);

}  // namespace pcsi

#endif  // PCSI_MODEL_RNG_HPP_
