// Copyright 2026 The dcsp Authors
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

#include <random>

#include "dcsp/kb.hpp"
#include "dcsp/model.hpp"
#include "dcsp/oracle.hpp"
#include "dcsp/resolver.hpp"
#include "dcsp/simnet.hpp"

namespace {

using namespace dcsp;

CspInstance triangle(int colors) {
  std::vector<std::vector<Value>> domains(3);
  for (auto& dom : domains)
    for (int d = 1; d <= colors; ++d) dom.push_back(d);
  std::vector<Nogood> nogoods;
  for (int u = 0; u < 3; ++u)
    for (int v = u + 1; v < 3; ++v)
      for (int d = 1; d <= colors; ++d)
        nogoods.push_back(Nogood({{u, d}, {v, d}}));
  return CspInstance::create(std::move(domains), std::move(nogoods));
}

// A store over `peers` other variables with `per_bucket` tails per value.
NogoodStore synthetic_store(int peers, int per_bucket) {
  std::vector<std::vector<Value>> domains(peers + 1, {1, 2});
  std::vector<Nogood> nogoods;
  std::mt19937_64 rng(7);
  for (Value d : {1, 2})
    for (int k = 0; k < per_bucket; ++k) {
      std::vector<Literal> lits{{0, d}};
      for (int p = 1; p <= peers; ++p)
        if (rng() % 2) lits.push_back({p, 1 + static_cast<int>(rng() % 2)});
      nogoods.push_back(Nogood(std::move(lits)));
    }
  CspInstance inst = CspInstance::create(std::move(domains), std::move(nogoods));
  return NogoodStore(0, inst, Policy::Baseline);
}

void BM_GenerateFull(benchmark::State& state) {
  NogoodStore store = synthetic_store(6, static_cast<int>(state.range(0)));
  for (auto _ : state) {
    GenerationBatch batch = generate_full(store, Policy::Ekbm);
    benchmark::DoNotOptimize(batch.raw_count);
  }
}
BENCHMARK(BM_GenerateFull)->Arg(8)->Arg(32)->Arg(128);

void BM_SubsumptionUpdate(benchmark::State& state) {
  const int per_bucket = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    NogoodStore store = synthetic_store(6, per_bucket);
    state.ResumeTiming();
    // A unit nogood wipes half the store through subsumption.
    UpdateOutcome outcome = store.update(Nogood({{0, 1}}));
    benchmark::DoNotOptimize(outcome.eliminated.size());
  }
}
BENCHMARK(BM_SubsumptionUpdate)->Arg(32)->Arg(256);

void BM_SyncRun(benchmark::State& state) {
  const Policy policy =
      state.range(0) == 0 ? Policy::Baseline : Policy::Ekbm;
  CspInstance inst = triangle(2);
  for (auto _ : state) {
    RunResult rr = run_synchronous(inst, policy, 100);
    benchmark::DoNotOptimize(rr.verdict.rounds);
  }
}
BENCHMARK(BM_SyncRun)->Arg(0)->Arg(1);

void BM_AsyncRun(benchmark::State& state) {
  CspInstance inst = triangle(2);
  std::uint64_t seed = 1;
  for (auto _ : state) {
    RunResult rr = run_async(inst, Policy::Ekbm, seed++, 4, 500000);
    benchmark::DoNotOptimize(rr.verdict.rounds);
  }
}
BENCHMARK(BM_AsyncRun);

void BM_Oracle(benchmark::State& state) {
  CspInstance inst = triangle(3);
  for (auto _ : state) {
    OracleResult res = brute_force_solve(inst);
    benchmark::DoNotOptimize(res.model_count);
  }
}
BENCHMARK(BM_Oracle);

}  // namespace

BENCHMARK_MAIN();
