// SPDX-License-Identifier: Apache-2.0
//
// optbf - multiuser downlink transmit beamforming library
// Copyright (C) 2026 The optbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "optbf/optbf.hpp"

#include <benchmark/benchmark.h>

namespace {

optbf::ChannelSet channel(int n, int k) { return optbf::generate_rayleigh(1, 0, n, k, 1.0); }

void BM_RegularizedApply(benchmark::State& state, optbf::InverseForm form) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const optbf::ChannelSet ch = channel(n, k);
  const optbf::RealVector lambda = optbf::RealVector::Ones(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(optbf::regularized_apply(ch.h(), lambda, ch.sigma2(), form));
  }
}
BENCHMARK_CAPTURE(BM_RegularizedApply, primal, optbf::InverseForm::kPrimal)
    ->Args({4, 4})->Args({16, 4})->Args({64, 4})->Args({64, 16});
BENCHMARK_CAPTURE(BM_RegularizedApply, dual, optbf::InverseForm::kDual)
    ->Args({4, 4})->Args({16, 4})->Args({64, 4})->Args({64, 16});

void BM_SolveP1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  const optbf::ChannelSet ch = channel(n, k);
  const auto targets = optbf::SinrTargets::uniform(k, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(optbf::solve_p1(ch, targets));
}
BENCHMARK(BM_SolveP1)->Args({4, 4})->Args({8, 4})->Args({16, 8});

void BM_GridOracle(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const int resolution = static_cast<int>(state.range(1));
  const optbf::ChannelSet ch = channel(8, k);
  optbf::OracleOptions opts;
  opts.resolution = resolution;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        optbf::grid_oracle(ch, optbf::SystemBudget(10.0), optbf::Utility::sum_rate(), opts));
  }
}
BENCHMARK(BM_GridOracle)->Args({2, 64})->Args({3, 16})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
