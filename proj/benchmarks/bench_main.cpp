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

#include <benchmark/benchmark.h>

#include "pcsi/algebra/matrix.hpp"
#include "pcsi/algebra/prime_field.hpp"
#include "pcsi/gmpc/gmpc.hpp"
#include "pcsi/pcia/pcia.hpp"
#include "pcsi/pcia/support.hpp"
#include "pcsi/verify/posterior.hpp"

namespace pcsi {
namespace {

void BM_FieldMulAdd(benchmark::State& state) {
  PrimeField f(static_cast<uint32_t>(state.range(0)));
  FieldElement acc(1, f), x(3, f);
  for (auto _ : state) {
    acc = acc * x + x;
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_FieldMulAdd)->Arg(7)->Arg(65521);

void BM_FieldInverse(benchmark::State& state) {
  PrimeField f(65521);
  uint64_t v = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FieldElement(v, f).inv());
    v = v % 65520 + 1;
  }
}
BENCHMARK(BM_FieldInverse);

void BM_GmpcQuery(benchmark::State& state) {
  const uint32_t K = static_cast<uint32_t>(state.range(0));
  ProblemInstance inst(K, 2, 2, 7);
  Scenario sc = sample_scenario(inst, 1);
  uint64_t t = 0;
  for (auto _ : state) {
    CounterRng rng(1, t++);
    benchmark::DoNotOptimize(gmpc_query(inst, sc, rng));
  }
}
BENCHMARK(BM_GmpcQuery)->Arg(12)->Arg(100)->Arg(1000);

void BM_PciaQuery(benchmark::State& state) {
  const uint32_t K = static_cast<uint32_t>(state.range(0));
  ProblemInstance inst(K, 2, 2, 1009);
  Scenario sc = sample_scenario(inst, 1);
  uint64_t t = 0;
  for (auto _ : state) {
    CounterRng rng(1, t++);
    benchmark::DoNotOptimize(pcia_query(inst, sc, rng));
  }
}
BENCHMARK(BM_PciaQuery)->Arg(12)->Arg(100)->Arg(1000);

void BM_ExactVerifyGmpc(benchmark::State& state) {
  GmpcProtocol proto(ProblemInstance(static_cast<uint32_t>(state.range(0)), 1, 1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(posterior_individual(proto));
}
BENCHMARK(BM_ExactVerifyGmpc)->Arg(4)->Arg(5)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_SupportCheck(benchmark::State& state) {
  ProblemInstance inst(12, 2, 2, 7);
  Scenario sc = sample_scenario(inst, 1);
  CounterRng rng(5);
  Query q = pcia_query(inst, sc, rng).first;
  for (auto _ : state)
    benchmark::DoNotOptimize(support_requirement_check(q, inst, SupportMode::kCSI));
}
BENCHMARK(BM_SupportCheck)->Unit(benchmark::kMillisecond);

void BM_MatrixRank(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  PrimeField f(65521);
  CounterRng rng(9);
  FqMatrix m(n, n, f);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) m.set(i, j, static_cast<uint32_t>(rng.uniform(65521)));
  for (auto _ : state) benchmark::DoNotOptimize(rank(m));
}
BENCHMARK(BM_MatrixRank)->Arg(16)->Arg(64);

}  // namespace
}  // namespace pcsi

BENCHMARK_MAIN();
