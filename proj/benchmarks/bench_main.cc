// Copyright 2026 The gentyp Authors
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

#include "gentyp/gentyp.h"

namespace {

using namespace gentyp;

void BM_HaarSample(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(haar_sample(dim, derive_seed(1, i++)));
}
BENCHMARK(BM_HaarSample)->Arg(8)->Arg(70)->Arg(924);

void BM_TraceDistance(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  const DensityOperator a = DensityOperator::pure(haar_sample(dim, 1));
  const DensityOperator b = DensityOperator::maximally_mixed(dim);
  for (auto _ : state) benchmark::DoNotOptimize(trace_distance(a, b));
}
BENCHMARK(BM_TraceDistance)->Arg(4)->Arg(16)->Arg(64);

void BM_ApplyRestrictedDetector(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const QuantumChannel ch = bns_restricted_channel(enumerate_basis(8, 4), k);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(apply(ch, haar_sample(ch.dim_in(), i++)));
}
BENCHMARK(BM_ApplyRestrictedDetector)->Arg(2)->Arg(4);

void BM_SampleDistances(benchmark::State& state) {
  ExperimentConfig cfg(bns_restricted_channel(enumerate_basis(8, 4), 2));
  cfg.samples = 1000;
  cfg.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_distances(cfg));
}
BENCHMARK(BM_SampleDistances)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_BlockChannelFromChoi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bns_block_channel(n));
}
BENCHMARK(BM_BlockChannelFromChoi)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_ChoiPurityRoutes(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  const QuantumChannel ch = random_channel(d, d, d, 3);
  for (auto _ : state) benchmark::DoNotOptimize(purity_routes(QuantumChannel(ch.dim_in(), ch.dim_out(), ch.kraus())));
}
BENCHMARK(BM_ChoiPurityRoutes)->Arg(4)->Arg(8)->Arg(16);

void BM_CanonicalSpectrum(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_spectrum(10000, 200, k));
}
BENCHMARK(BM_CanonicalSpectrum)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_EnergyDistributions(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(energy_distribution_trace(10000, 200, 1000));
    benchmark::DoNotOptimize(energy_distribution_bns(10000, 200, 1000));
  }
}
BENCHMARK(BM_EnergyDistributions)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
