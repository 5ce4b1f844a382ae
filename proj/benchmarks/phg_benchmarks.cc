//
// Copyright 2026 The phgsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <vector>

#include <benchmark/benchmark.h>

#include "phg/attack.h"
#include "phg/composition.h"
#include "phg/mechanisms.h"
#include "phg/prg.h"
#include "phg/random.h"

namespace phg {
namespace {

void BM_FillBernoulli(benchmark::State& state) {
  Rng rng(1);
  std::vector<std::uint8_t> out(state.range(0));
  for (auto _ : state) {
    rng.fill_bernoulli(rng.uniform01(), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FillBernoulli)->Arg(1024)->Arg(16384);

void BM_AttackRound(benchmark::State& state) {
  const std::size_t n = state.range(0);
  FingerprintingAttack attack(n, 0.25, 1 << 30);
  Rng rng(2);
  std::vector<IndexPoint> X;
  for (std::size_t i = 0; i < n; ++i) X.push_back(IndexPoint{rng.uniform_below(attack.config().N)});
  std::vector<double> qx(n);
  for (auto _ : state) {
    {
      const Query q = attack.next_query(rng);
      for (std::size_t t = 0; t < n; ++t) qx[t] = q.evaluate(X[t]);
    }
    attack.process_answer(clamp_unit(empirical_mean(qx)));
  }
  state.SetItemsProcessed(state.iterations() * attack.config().N);
}
BENCHMARK(BM_AttackRound)->Arg(32)->Arg(50)->Arg(500);

void BM_PermRank(benchmark::State& state) {
  Rng rng(3);
  std::vector<BitString> x;
  while (x.size() < static_cast<std::size_t>(state.range(0))) {
    auto b = BitString::random(30, rng);
    if (std::find(x.begin(), x.end(), b) == x.end()) x.push_back(b);
  }
  for (auto _ : state) benchmark::DoNotOptimize(perm_rank(x));
}
BENCHMARK(BM_PermRank)->Arg(13)->Arg(64);

void BM_PrgExpand(benchmark::State& state) {
  const auto seed = BitString::from_uint(0xBEEF, 32);
  for (auto _ : state) benchmark::DoNotOptimize(prg_expand(seed, state.range(0)));
  state.SetBytesProcessed(state.iterations() * state.range(0) / 8);
}
BENCHMARK(BM_PrgExpand)->Arg(1024)->Arg(1 << 16);

void BM_Encrypermute(benchmark::State& state) {
  const std::size_t n = state.range(0);
  const auto schedule = CompositionSchedule::make(n, 0.5);
  Rng rng(4);
  std::vector<BitString> x;
  while (x.size() < n) {
    auto b = BitString::random(schedule.d, rng);
    if (std::find(x.begin(), x.end(), b) == x.end()) x.push_back(b);
  }
  for (auto _ : state) {
    for (const auto& stage : schedule.stages) benchmark::DoNotOptimize(encrypermute(x, stage, rng));
  }
}
BENCHMARK(BM_Encrypermute)->Arg(16)->Arg(64);

}  // namespace
}  // namespace phg

BENCHMARK_MAIN();
