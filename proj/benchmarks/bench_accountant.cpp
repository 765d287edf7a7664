// Copyright 2026 The pflsim Authors. All Rights Reserved.
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

#include "pflsim/privacy/accountant.h"

namespace {

void BM_RdpAccount(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pflsim::privacy::rdp_account(1.0, 0.005, 2000, 1e-6));
  }
}
BENCHMARK(BM_RdpAccount)->Unit(benchmark::kMillisecond);

void BM_CalibrateSigma(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pflsim::privacy::calibrate_sigma(2.0, 1e-6, 0.005, 2000));
  }
}
BENCHMARK(BM_CalibrateSigma)->Unit(benchmark::kMillisecond);

void BM_FractionalOrder(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(pflsim::privacy::rdp_subsampled_gaussian(0.001, 1.2, 1.5));
  }
}
BENCHMARK(BM_FractionalOrder);

}  // namespace
