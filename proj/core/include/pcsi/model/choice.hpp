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

#ifndef PCSI_MODEL_CHOICE_HPP_
#define PCSI_MODEL_CHOICE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcsi/algebra/rational.hpp"
#include "pcsi/error.hpp"
#include "pcsi/model/instance.hpp"
#include "pcsi/model/rng.hpp"

namespace pcsi {

struct ChoiceRecord {
  const char* label;
  uint32_t branch;
  uint32_t options;
  Rational probability;
};

// Ordered record of every random decision of one protocol run.
struct ChoiceTrace {
  std::vector<ChoiceRecord> records;

  Rational weight() const;
};

// Thrown by Chooser::place when a run leaves the admitted set. Only the
// enumerator catches it.
struct PrunedRun {};

// Source of randomness for protocol generators. Sampling, exhaustive
// enumeration and scripted replays all drive the same generator code.
class Chooser {
 public:
  virtual ~Chooser() = default;

  // Picks a branch with the given probabilities (which sum to one).
  virtual uint32_t choose(const char* label, std::span<const Rational> probs) = 0;
  virtual uint32_t choose_uniform(const char* label, uint32_t options) = 0;

  // Generators report every index they put at a position.
  void place(uint32_t position, Index index) {
    if (!admit(position, index)) throw PrunedRun{};
  }

 protected:
  virtual bool admit(uint32_t /*position*/, Index /*index*/) { return true; }
};

class SamplingChooser : public Chooser {
 public:
  explicit SamplingChooser(CounterRng& rng, bool record = true)
      : rng_(rng), record_(record) {}

  uint32_t choose(const char* label, std::span<const Rational> probs) override;
  uint32_t choose_uniform(const char* label, uint32_t options) override;

  const ChoiceTrace& trace() const { return trace_; }

 private:
  CounterRng& rng_;
  bool record_;
  ChoiceTrace trace_;
};

// Depth-first enumeration of every run with non-zero probability, visiting
// branches in increasing order. Positions listed in the target (non-zero
// entries, target[p-1] for position p) prune runs that place another index
// there.
class EnumeratingChooser : public Chooser {
 public:
  explicit EnumeratingChooser(std::vector<Index> target = {})
      : target_(std::move(target)) {}

  uint32_t choose(const char* label, std::span<const Rational> probs) override;
  uint32_t choose_uniform(const char* label, uint32_t options) override;

  void begin_run() { depth_ = 0; }
  // Moves to the next unexplored run. False when the tree is exhausted.
  bool advance();

  // Probability of the run that just finished.
  const Rational& weight() const;
  ChoiceTrace trace() const;

 protected:
  bool admit(uint32_t position, Index index) override;

 private:
  struct Frame {
    const char* label;
    uint32_t branch;
    uint32_t options;
    std::vector<Rational> probs;  // empty for uniform choices
    Rational cumulative;
  };
  Rational branch_probability(const Frame& f, uint32_t b) const;
  uint32_t next_branch(const Frame& f, uint32_t from) const;
  uint32_t visit(const char* label, uint32_t options, std::span<const Rational> probs);

  std::vector<Index> target_;
  std::vector<Frame> stack_;
  size_t depth_ = 0;
  Rational one_{1};
};

// Runs body(chooser) over all runs; sink(result, chooser) sees each completed
// run. Returns the number of completed runs.
template <class Body, class Sink>
uint64_t enumerate_choices(Body&& body, Sink&& sink, std::vector<Index> target = {},
                           uint64_t budget = UINT64_MAX) {
  EnumeratingChooser chooser(std::move(target));
  uint64_t runs = 0;
  do {
    chooser.begin_run();
    try {
      auto result = body(static_cast<Chooser&>(chooser));
      if (++runs > budget) {
        throw BudgetExceeded("trace enumeration exceeds budget of " +
                             std::to_string(budget));
      }
      sink(std::move(result), static_cast<const EnumeratingChooser&>(chooser));
    } catch (const PrunedRun&) {
    }
  } while (chooser.advance());
  return runs;
}

}  // namespace pcsi

#endif  // PCSI_MODEL_CHOICE_HPP_
