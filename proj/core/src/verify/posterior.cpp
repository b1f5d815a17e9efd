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

#include "pcsi/verify/posterior.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "pcsi/algebra/combinatorics.hpp"
#include "pcsi/error.hpp"
#include "pcsi/model/scenario.hpp"

namespace pcsi {

std::string to_string(PrivacyKind kind) {
  return kind == PrivacyKind::kIndividual ? "individual" : "joint";
}

PrivacyKind parse_privacy_kind(std::string_view text) {
  if (text == "individual") return PrivacyKind::kIndividual;
  if (text == "joint") return PrivacyKind::kJoint;
  throw Error("unknown privacy kind '" + std::string(text) + "'");
}

std::string layout_key(const std::vector<std::vector<Index>>& parts) {
  std::string key;
  for (const auto& part : parts) {
    key.push_back(static_cast<char>(part.size()));
    for (Index x : part) {
      key.push_back(static_cast<char>(x & 0xff));
      key.push_back(static_cast<char>(x >> 8));
    }
  }
  return key;
}

namespace {

using u128 = unsigned __int128;

struct ProgEntry {
  uint32_t source;
  uint32_t scale;
};

struct Member {
  uint64_t w_mask;
  uint32_t unit_id;
  uint32_t prog_offset;
  uint32_t sources;
};

struct Group {
  std::vector<std::vector<Index>> parts;
  std::vector<uint32_t> members;
};

struct Enumeration {
  std::vector<Member> members;
  std::vector<ProgEntry> program;
  std::vector<Rational> units;  // probability of the member times one draw
  std::vector<std::pair<std::string, Group>> groups;
  uint64_t pairs = 0;
};

uint64_t saturating_pow(uint64_t b, uint32_t e, uint64_t cap) {
  uint64_t r = 1;
  for (uint32_t k = 0; k < e; ++k) {
    if (b != 0 && r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

Rational inverse_power(uint32_t base, uint32_t e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, e);
  return Rational(mpq_class(mpz_class(1), p));
}

uint32_t source_id(const CoefSource& s, uint32_t D, uint32_t M) {
  switch (s.kind) {
    case CoefSource::Kind::kDemand: return s.slot;
    case CoefSource::Kind::kSide: return D + s.slot;
    case CoefSource::Kind::kFree: return D + M + s.slot;
  }
  return 0;
}

uint64_t mask_of(std::span<const Index> w) {
  uint64_t m = 0;
  for (Index i : w) m |= uint64_t{1} << (i - 1);
  return m;
}

// Visits every (W, S) pair: S in lexicographic order, then W among the rest.
template <class Fn>
void for_each_support(const ProblemInstance& inst, Fn&& fn) {
  const uint32_t K = inst.K();
  for_each_combination(K, inst.M(), [&](std::span<const uint32_t> s0) {
    std::vector<Index> S, rest;
    for (uint32_t x : s0) S.push_back(x + 1);
    for (Index i = 1; i <= K; ++i)
      if (!std::binary_search(S.begin(), S.end(), i)) rest.push_back(i);
    for_each_combination(K - inst.M(), inst.D(), [&](std::span<const uint32_t> w0) {
      std::vector<Index> W;
      for (uint32_t x : w0) W.push_back(rest[x]);
      fn(std::span<const Index>(W), std::span<const Index>(S));
    });
  });
}

Enumeration enumerate_layouts(const QueryProtocol& proto, uint64_t budget) {
  const ProblemInstance& inst = proto.instance();
  const uint32_t M = inst.M(), D = inst.D(), q = inst.q();
  if (inst.K() > 64) throw Error("exact verifier supports K <= 64");
  Enumeration e;
  const Rational base = support_prior(inst);
  std::unordered_map<std::string, uint32_t> group_index;
  std::map<Rational, uint32_t> unit_ids;
  std::map<uint32_t, Rational> draw_prob;
  for_each_support(inst, [&](std::span<const Index> W, std::span<const Index> S) {
    const uint64_t mask = mask_of(W);
    enumerate_choices(
        [&](Chooser& ch) { return proto.build_layout(W, S, ch); },
        [&](LayoutTrace lt, const EnumeratingChooser& ch) {
          const uint32_t d = D + M + lt.free_count;
          e.pairs += saturating_pow(q - 1, d, budget);
          if (e.pairs > budget) {
            throw BudgetExceeded("exact enumeration needs more than " + std::to_string(budget) +
                                 " (trace, draw) pairs; use Monte-Carlo mode");
          }
          auto dp = draw_prob.find(d);
          if (dp == draw_prob.end()) dp = draw_prob.emplace(d, inverse_power(q - 1, d)).first;
          Rational unit = base * ch.weight() * dp->second;
          auto [uit, fresh] = unit_ids.try_emplace(unit, static_cast<uint32_t>(e.units.size()));
          if (fresh) e.units.push_back(unit);
          Member mem{mask, uit->second, static_cast<uint32_t>(e.program.size()), d};
          for (const auto& part : lt.coeffs)
            for (const CoefSource& src : part) e.program.push_back({source_id(src, D, M), src.scale});
          std::string key = layout_key(lt.parts);
          auto [git, gnew] = group_index.try_emplace(key, static_cast<uint32_t>(e.groups.size()));
          if (gnew) e.groups.push_back({key, Group{std::move(lt.parts), {}}});
          e.groups[git->second].second.members.push_back(static_cast<uint32_t>(e.members.size()));
          e.members.push_back(mem);
        });
  });
  std::sort(e.groups.begin(), e.groups.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return e;
}

template <class T>
void radix_sort(std::vector<T>& v) {
  if (v.size() < 512) {
    std::sort(v.begin(), v.end());
    return;
  }
  T maxv = *std::max_element(v.begin(), v.end());
  int bits = 0;
  while (maxv != 0) {
    ++bits;
    maxv >>= 1;
  }
  std::vector<T> tmp(v.size());
  std::vector<size_t> count(65537);
  for (int shift = 0; shift < bits; shift += 16) {
    std::fill(count.begin(), count.end(), 0);
    for (const T& x : v) ++count[static_cast<size_t>((x >> shift) & 0xffff) + 1];
    for (size_t k = 1; k < count.size(); ++k) count[k] += count[k - 1];
    for (const T& x : v) tmp[count[static_cast<size_t>((x >> shift) & 0xffff)]++] = x;
    v.swap(tmp);
  }
}

// Coefficient keys: position p contributes digit * q^p.
template <class KeyT>
struct KeyCoder {
  uint32_t q;
  std::vector<KeyT> pow;

  KeyCoder(uint32_t q_, size_t positions) : q(q_), pow(positions) {
    KeyT v = 1;
    for (size_t p = 0; p < positions; ++p) {
      pow[p] = v;
      v *= q;
    }
  }

  // contrib[s * (q-1) + (x-1)] = sum over positions fed by source s.
  void contributions(const ProgEntry* prog, size_t positions, uint32_t sources,
                     std::vector<KeyT>& contrib) const {
    contrib.assign(size_t{sources} * (q - 1), 0);
    for (size_t p = 0; p < positions; ++p) {
      const ProgEntry& pe = prog[p];
      KeyT* row = contrib.data() + size_t{pe.source} * (q - 1);
      for (uint32_t x = 1; x < q; ++x) {
        row[x - 1] += static_cast<KeyT>(uint64_t{pe.scale} * x % q) * pow[p];
      }
    }
  }

  template <class Emit>
  void for_each_key(const std::vector<KeyT>& contrib, uint32_t sources, Emit&& emit) const {
    const uint32_t w = q - 1;
    if (sources == 0) {
      emit(KeyT{0});
      return;
    }
    std::vector<uint32_t> x(sources, 0);
    std::vector<KeyT> partial(sources + 1, 0);
    for (uint32_t s = sources; s-- > 0;) partial[s] = partial[s + 1] + contrib[size_t{s} * w];
    while (true) {
      const KeyT base = partial[1];
      for (uint32_t v = 0; v < w; ++v) emit(base + contrib[v]);
      uint32_t s = 1;
      while (s < sources) {
        if (++x[s] < w) break;
        x[s] = 0;
        ++s;
      }
      if (s >= sources) return;
      for (uint32_t t = s + 1; t-- > 1;) partial[t] = partial[t + 1] + contrib[size_t{t} * w + x[t]];
    }
  }

  void decode(KeyT key, size_t positions, std::vector<uint32_t>& out) const {
    out.resize(positions);
    for (size_t p = 0; p < positions; ++p) {
      out[p] = static_cast<uint32_t>(key % q);
      key /= q;
    }
  }
};

// Returns 64 when q^positions * groups fits in 64 bits, 128 when it fits in
// 128 bits, 0 otherwise.
int key_width(uint32_t q, size_t positions, uint64_t groups) {
  u128 v = groups;
  const u128 lim64 = u128{UINT64_MAX};
  bool fits64 = true;
  for (size_t p = 0; p < positions; ++p) {
    if (v > (~u128{0}) / q) return 0;
    v *= q;
    if (v > lim64) fits64 = false;
  }
  return fits64 ? 64 : 128;
}

Query decode_query(const std::vector<std::vector<Index>>& parts,
                   const std::vector<uint32_t>& digits, const PrimeField& f) {
  Query q;
  size_t p = 0;
  for (const auto& part : parts) {
    QueryPart qp;
    qp.indices = part;
    for (size_t k = 0; k < part.size(); ++k) qp.coeffs.emplace_back(digits[p++], f);
    q.parts.push_back(std::move(qp));
  }
  return q;
}

struct Judge {
  PrivacyKind kind;
  uint32_t K, D;
  Rational target;
  uint64_t subsets;

  Judge(PrivacyKind k, const ProblemInstance& inst) : kind(k), K(inst.K()), D(inst.D()) {
    subsets = binomial(K, D);
    target = kind == PrivacyKind::kIndividual ? Rational(D, K)
                                              : Rational(mpq_class(mpz_class(1), binomial_big(K, D)));
  }

  // Fills posteriors and returns the largest deviation from the target.
  Rational judge(const std::map<uint64_t, Rational>& by_w, const Rational& total,
                 std::vector<std::pair<std::vector<Index>, Rational>>* out) const {
    Rational worst(0);
    if (kind == PrivacyKind::kIndividual) {
      std::vector<Rational> mass(K + 1, Rational(0));
      for (const auto& [w, m] : by_w)
        for (uint32_t i = 0; i < K; ++i)
          if (w >> i & 1) mass[i + 1] += m;
      for (Index i = 1; i <= K; ++i) {
        Rational post = mass[i] / total;
        Rational dev = (post - target).abs();
        if (dev > worst) worst = dev;
        if (out) out->push_back({{i}, post});
      }
      return worst;
    }
    if (out) {
      for_each_combination(K, D, [&](std::span<const uint32_t> c) {
        std::vector<Index> w;
        uint64_t mask = 0;
        for (uint32_t x : c) {
          w.push_back(x + 1);
          mask |= uint64_t{1} << x;
        }
        auto it = by_w.find(mask);
        out->push_back({w, it == by_w.end() ? Rational(0) : it->second / total});
      });
    }
    if (by_w.size() < subsets) worst = target;
    for (const auto& [w, m] : by_w) {
      Rational dev = (m / total - target).abs();
      if (dev > worst) worst = dev;
    }
    return worst;
  }
};

struct Partial {
  uint64_t queries = 0;
  Rational mass{0};
  uint64_t violating = 0;
  Rational worst{0};
  std::vector<QueryPosterior> violations;
  std::vector<QueryPosterior> retained;
};

struct VecHash {
  size_t operator()(const std::vector<uint32_t>& v) const {
    uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (uint32_t x : v) h = (h ^ x) * 0x100000001b3ULL + (h >> 29);
    return static_cast<size_t>(h);
  }
};

class Engine {
 public:
  Engine(const QueryProtocol& proto, PrivacyKind kind, const VerifyOptions& opt,
         const QueryVisitor& visitor, const Enumeration& e)
      : inst_(proto.instance()), judge_(kind, proto.instance()), opt_(opt), visitor_(visitor), e_(e) {}

  void run_groups(size_t begin, size_t end, Partial& out) const {
    for (size_t g = begin; g < end; ++g) {
      const Group& grp = e_.groups[g].second;
      size_t positions = 0;
      for (const auto& p : grp.parts) positions += p.size();
      int width = key_width(inst_.q(), positions, grp.members.size());
      if (width == 64) {
        run_group<uint64_t>(grp, positions, out);
      } else if (width == 128) {
        run_group<u128>(grp, positions, out);
      } else {
        throw Error("queries too wide for the exact verifier");
      }
    }
  }

 private:
  struct Class {
    std::vector<uint32_t> sig;  // member, count, member, count, ...
    uint64_t multiplicity = 0;
    size_t first_key = 0;
  };

  template <class KeyT>
  void run_group(const Group& grp, size_t positions, Partial& out) const {
    const uint32_t q = inst_.q();
    const uint64_t G = grp.members.size();
    KeyCoder<KeyT> coder(q, positions);
    std::vector<KeyT> packed, contrib;
    for (uint64_t a = 0; a < G; ++a) {
      const Member& mem = e_.members[grp.members[a]];
      coder.contributions(e_.program.data() + mem.prog_offset, positions, mem.sources, contrib);
      coder.for_each_key(contrib, mem.sources, [&](KeyT k) { packed.push_back(k * G + a); });
    }
    radix_sort(packed);

    std::unordered_map<std::vector<uint32_t>, uint32_t, VecHash> class_of;
    std::vector<Class> classes;
    std::vector<KeyT> keys;
    std::vector<std::pair<KeyT, uint32_t>> kept;
    const bool keep = out.retained.size() < opt_.keep_queries;
    std::vector<uint32_t> sig, digits;
    size_t i = 0;
    while (i < packed.size()) {
      const KeyT key = packed[i] / G;
      sig.clear();
      while (i < packed.size() && packed[i] / G == key) {
        uint32_t member = static_cast<uint32_t>(packed[i] % G);
        if (!sig.empty() && sig[sig.size() - 2] == member) {
          ++sig.back();
        } else {
          sig.push_back(member);
          sig.push_back(1);
        }
        ++i;
      }
      auto [it, fresh] = class_of.try_emplace(sig, static_cast<uint32_t>(classes.size()));
      if (fresh) {
        classes.push_back({sig, 0, keys.size()});
        keys.push_back(key);
      }
      ++classes[it->second].multiplicity;
      if (keep) kept.push_back({key, it->second});
      if (visitor_) {
        coder.decode(key, positions, digits);
        visitor_(grp.parts, digits);
      }
    }

    std::vector<Rational> totals(classes.size());
    std::vector<std::map<uint64_t, Rational>> by_w(classes.size());
    std::vector<Rational> dev(classes.size());
    for (size_t c = 0; c < classes.size(); ++c) {
      const Class& cl = classes[c];
      Rational total(0);
      for (size_t k = 0; k < cl.sig.size(); k += 2) {
        const Member& mem = e_.members[grp.members[cl.sig[k]]];
        Rational m = e_.units[mem.unit_id] * Rational(cl.sig[k + 1]);
        total += m;
        auto [wit, fresh] = by_w[c].try_emplace(mem.w_mask, m);
        if (!fresh) wit->second += m;
      }
      totals[c] = total;
      dev[c] = judge_.judge(by_w[c], total, nullptr);
      out.mass += total * Rational(cl.multiplicity);
      out.queries += cl.multiplicity;
      if (!dev[c].is_zero()) {
        out.violating += cl.multiplicity;
        if (dev[c] > out.worst) out.worst = dev[c];
        if (out.violations.size() < opt_.max_violations) {
          coder.decode(keys[cl.first_key], positions, digits);
          out.violations.push_back(describe(grp, digits, by_w[c], total));
        }
      }
    }
    for (const auto& [key, c] : kept) {
      if (out.retained.size() >= opt_.keep_queries) break;
      coder.decode(key, positions, digits);
      out.retained.push_back(describe(grp, digits, by_w[c], totals[c]));
    }
  }

  QueryPosterior describe(const Group& grp, const std::vector<uint32_t>& digits,
                          const std::map<uint64_t, Rational>& by_w, const Rational& total) const {
    QueryPosterior qp;
    qp.query = decode_query(grp.parts, digits, inst_.field());
    qp.probability = total;
    qp.max_deviation = judge_.judge(by_w, total, &qp.posteriors);
    return qp;
  }

  const ProblemInstance& inst_;
  Judge judge_;
  const VerifyOptions& opt_;
  const QueryVisitor& visitor_;
  const Enumeration& e_;
};

void merge(Partial& into, Partial&& from, const VerifyOptions& opt) {
  into.queries += from.queries;
  into.mass += from.mass;
  into.violating += from.violating;
  if (from.worst > into.worst) into.worst = from.worst;
  for (auto& v : from.violations) {
    if (into.violations.size() < opt.max_violations) into.violations.push_back(std::move(v));
  }
  for (auto& r : from.retained) {
    if (into.retained.size() < opt.keep_queries) into.retained.push_back(std::move(r));
  }
}

}  // namespace

PosteriorReport verify_privacy(const QueryProtocol& protocol, PrivacyKind kind,
                               const VerifyOptions& options, const QueryVisitor& visitor) {
  const ProblemInstance& inst = protocol.instance();
  Enumeration e = enumerate_layouts(protocol, options.budget);
  Engine engine(protocol, kind, options, visitor, e);

  unsigned threads = visitor ? 1u : std::max(1u, options.threads);
  threads = static_cast<unsigned>(std::min<size_t>(threads, std::max<size_t>(1, e.groups.size())));
  std::vector<Partial> partials(threads);
  const size_t n = e.groups.size();
  if (threads == 1) {
    engine.run_groups(0, n, partials[0]);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          engine.run_groups(n * t / threads, n * (t + 1) / threads, partials[t]);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
      if (err) std::rethrow_exception(err);
  }
  Partial total;
  for (auto& p : partials) merge(total, std::move(p), options);

  PosteriorReport r;
  r.protocol = protocol.name();
  r.kind = kind;
  r.K = inst.K();
  r.M = inst.M();
  r.D = inst.D();
  r.q = inst.q();
  r.target = Judge(kind, inst).target;
  r.queries = total.queries;
  r.layouts = e.groups.size();
  r.traces = e.members.size();
  r.pairs = e.pairs;
  r.mass = total.mass;
  r.violating_queries = total.violating;
  r.worst_deviation = total.worst;
  r.violations = std::move(total.violations);
  r.retained = std::move(total.retained);
  return r;
}

PosteriorReport posterior_individual(const QueryProtocol& protocol, const VerifyOptions& options) {
  return verify_privacy(protocol, PrivacyKind::kIndividual, options);
}

PosteriorReport posterior_joint(const QueryProtocol& protocol, const VerifyOptions& options) {
  return verify_privacy(protocol, PrivacyKind::kJoint, options);
}

QueryPosterior posterior_for_query(const QueryProtocol& protocol, const Query& query,
                                   PrivacyKind kind, uint64_t budget) {
  const ProblemInstance& inst = protocol.instance();
  const uint32_t M = inst.M(), D = inst.D(), q = inst.q();
  validate_query(query, inst);
  Judge judge(kind, inst);
  QueryPosterior out;
  out.query = query;
  out.probability = Rational(0);
  auto layout = query_layout(query);
  auto positions = protocol.positions_of(layout);
  std::map<uint64_t, Rational> by_w;
  if (positions) {
    size_t npos = 0;
    std::vector<uint32_t> digits;
    for (const auto& part : query.parts)
      for (const auto& c : part.coeffs) {
        digits.push_back(c.value());
        ++npos;
      }
    if (key_width(q, npos, 1) != 64) throw Error("query too wide for single-query evaluation");
    KeyCoder<uint64_t> coder(q, npos);
    uint64_t target = 0;
    for (size_t p = 0; p < npos; ++p) target += digits[p] * coder.pow[p];
    const Rational base = support_prior(inst);
    uint64_t pairs = 0;
    std::vector<ProgEntry> prog;
    std::vector<uint64_t> contrib;
    for_each_support(inst, [&](std::span<const Index> W, std::span<const Index> S) {
      enumerate_choices(
          [&](Chooser& ch) { return protocol.build_layout(W, S, ch); },
          [&](LayoutTrace lt, const EnumeratingChooser& ch) {
            if (lt.parts != layout) return;
            const uint32_t d = D + M + lt.free_count;
            pairs += saturating_pow(q - 1, d, budget);
            if (pairs > budget) throw BudgetExceeded("single-query enumeration exceeds budget");
            prog.clear();
            for (const auto& part : lt.coeffs)
              for (const CoefSource& src : part) prog.push_back({source_id(src, D, M), src.scale});
            coder.contributions(prog.data(), npos, d, contrib);
            uint64_t hits = 0;
            coder.for_each_key(contrib, d, [&](uint64_t k) { hits += k == target; });
            if (hits == 0) return;
            Rational m = base * ch.weight() * inverse_power(q - 1, d) * Rational(hits);
            out.probability += m;
            auto [it, fresh] = by_w.try_emplace(mask_of(W), m);
            if (!fresh) it->second += m;
          },
          *positions);
    });
  }
  if (out.probability.is_zero()) {
    std::map<uint64_t, Rational> none;
    Rational one(1);
    judge.judge(none, one, &out.posteriors);
    out.max_deviation = Rational(0);
    return out;
  }
  out.max_deviation = judge.judge(by_w, out.probability, &out.posteriors);
  return out;
}

}  // namespace pcsi
