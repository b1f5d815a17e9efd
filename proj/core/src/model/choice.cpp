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

#include "pcsi/model/choice.hpp"

namespace pcsi {

Rational ChoiceTrace::weight() const {
  Rational w(1);
  for (const auto& r : records) w *= r.probability;
  return w;
}

uint32_t SamplingChooser::choose(const char* label, std::span<const Rational> probs) {
  if (probs.empty()) throw Error(std::string("choice '") + label + "' has no options");
  mpz_class den = 1;
  for (const auto& p : probs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), p.denominator().get_mpz_t());
  if (!den.fits_ulong_p()) throw Error("choice probabilities too fine to sample");
  uint64_t u = rng_.uniform(den.get_ui());
  mpz_class acc = 0;
  uint32_t pick = static_cast<uint32_t>(probs.size()) - 1;
  for (uint32_t b = 0; b < probs.size(); ++b) {
    acc += probs[b].numerator() * (den / probs[b].denominator());
    if (acc > u) {
      pick = b;
      break;
    }
  }
  if (record_) {
    trace_.records.push_back(
        {label, pick, static_cast<uint32_t>(probs.size()), probs[pick]});
  }
  return pick;
}

uint32_t SamplingChooser::choose_uniform(const char* label, uint32_t options) {
  if (options == 0) throw Error(std::string("choice '") + label + "' has no options");
  uint32_t pick = static_cast<uint32_t>(rng_.uniform(options));
  if (record_) {
    trace_.records.push_back({label, pick, options, Rational(1, options)});
  }
  return pick;
}

Rational EnumeratingChooser::branch_probability(const Frame& f, uint32_t b) const {
  if (f.probs.empty()) return Rational(1, f.options);
  return f.probs[b];
}

uint32_t EnumeratingChooser::next_branch(const Frame& f, uint32_t from) const {
  for (uint32_t b = from; b < f.options; ++b) {
    if (f.probs.empty() || !f.probs[b].is_zero()) return b;
  }
  return f.options;
}

uint32_t EnumeratingChooser::visit(const char* label, uint32_t options,
                                   std::span<const Rational> probs) {
  if (options == 0) throw Error(std::string("choice '") + label + "' has no options");
  if (depth_ < stack_.size()) {
    const Frame& f = stack_[depth_];
    if (f.options != options) {
      throw Error(std::string("non-deterministic generator at choice '") + label + "'");
    }
    ++depth_;
    return f.branch;
  }
  Frame f{label, 0, options, {}, Rational(0)};
  if (!probs.empty()) f.probs.assign(probs.begin(), probs.end());
  f.branch = next_branch(f, 0);
  if (f.branch == options) throw Error(std::string("choice '") + label + "' has zero mass");
  const Rational& prev = depth_ == 0 ? one_ : stack_[depth_ - 1].cumulative;
  f.cumulative = prev * branch_probability(f, f.branch);
  stack_.push_back(std::move(f));
  ++depth_;
  return stack_.back().branch;
}

uint32_t EnumeratingChooser::choose(const char* label, std::span<const Rational> probs) {
  return visit(label, static_cast<uint32_t>(probs.size()), probs);
}

uint32_t EnumeratingChooser::choose_uniform(const char* label, uint32_t options) {
  return visit(label, options, {});
}

bool EnumeratingChooser::admit(uint32_t position, Index index) {
  if (position == 0 || position > target_.size()) return true;
  Index want = target_[position - 1];
  return want == 0 || want == index;
}

bool EnumeratingChooser::advance() {
  stack_.resize(depth_);
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    uint32_t b = next_branch(f, f.branch + 1);
    if (b < f.options) {
      f.branch = b;
      const Rational& prev = stack_.size() == 1 ? one_ : stack_[stack_.size() - 2].cumulative;
      f.cumulative = prev * branch_probability(f, b);
      return true;
    }
    stack_.pop_back();
  }
  return false;
}

const Rational& EnumeratingChooser::weight() const {
  return depth_ == 0 ? one_ : stack_[depth_ - 1].cumulative;
}

ChoiceTrace EnumeratingChooser::trace() const {
  ChoiceTrace t;
  for (size_t d = 0; d < depth_; ++d) {
    const Frame& f = stack_[d];
    t.records.push_back({f.label, f.branch, f.options, branch_probability(f, f.branch)});
  }
  return t;
}

}  // namespace pcsi
