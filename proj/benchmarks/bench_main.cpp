// Copyright 2026 The shiftsieve Authors
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


#include <benchmark/benchmark.h>

#include <cstdint>

#include "shiftsieve/bessel.hpp"
#include "shiftsieve/hecke.hpp"
#include "shiftsieve/shiftsums.hpp"
#include "shiftsieve/sieveweights.hpp"
#include "shiftsieve/smoothnum.hpp"

namespace {

using namespace shiftsieve;

const EigenvalueTable& table() {
  static const EigenvalueTable t = build_delta_table(1 << 20);
  return t;
}

void BM_TauSeries(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(tau_series(static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(BM_TauSeries)->RangeMultiplier(4)->Range(1 << 12, 1 << 18)->Unit(benchmark::kMillisecond);

void BM_ShiftedSum(benchmark::State& state) {
  const auto& t = table();
  const auto x = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(shift::shifted_sum(t, 1, x));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ShiftedSum)->Arg(10000)->Arg(100000)->Arg(1000000);

void BM_SieveWeights(benchmark::State& state) {
  const auto ctx = sieve::make_context(static_cast<double>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(sieve::linear_sieve_weights(ctx, 1e6));
  }
}
BENCHMARK(BM_SieveWeights)->Arg(13)->Arg(31)->Arg(61);

void BM_SmoothCount(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(smooth::smooth_count(static_cast<double>(state.range(0)), 50.0));
  }
}
BENCHMARK(BM_SmoothCount)->Arg(100000)->Arg(10000000);

void BM_BesselK(benchmark::State& state) {
  const double r = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel::bessel_K_imag_scaled(r, 1.0 + r * r, bessel::kDefaultEpsilon));
  }
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(10)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
