// Copyright 2026 The dram Authors
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

#include "dram/market_clearing.hpp"

static void BM_ClearTwoSellers(benchmark::State& state) {
  const dram::BidCurve a{0.2, 0.00096, 180.0, 660.0};
  const dram::BidCurve b{0.21, 0.00109, 180.0, 594.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::clear_two_sellers(a, b, 400.0));
  }
}
BENCHMARK(BM_ClearTwoSellers);

static void BM_SellerPayoff(benchmark::State& state) {
  const dram::AggregatorCostModel model{0.04, 0.0004, 4.0, 25.0, 200};
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::seller_payoff(model, 180.0, 224.6, 0.3996));
  }
}
BENCHMARK(BM_SellerPayoff);

BENCHMARK_MAIN();
