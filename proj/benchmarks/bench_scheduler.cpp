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

#include "dram/case_study.hpp"
#include "dram/wh_scheduler.hpp"

static void BM_ScheduleWelfare(benchmark::State& state) {
  const dram::TankModel tank;
  const dram::WaterDrawProfile& draws = dram::case_study_draws();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::schedule_welfare(tank, draws));
  }
}
BENCHMARK(BM_ScheduleWelfare);

static void BM_SchedulePriceSensitive(benchmark::State& state) {
  const dram::TankModel tank;
  const dram::WaterDrawProfile& draws = dram::case_study_draws();
  const dram::PriceProfile& prices = dram::case_study_prices();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::schedule_price_sensitive(tank, draws, prices));
  }
}
BENCHMARK(BM_SchedulePriceSensitive);

BENCHMARK_MAIN();
