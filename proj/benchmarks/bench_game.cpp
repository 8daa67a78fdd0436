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
#include "dram/game_engine.hpp"

static void BM_PlayGame(benchmark::State& state) {
  const dram::GameConfig& config = dram::case_study_config();
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::play_game(config));
  }
}
BENCHMARK(BM_PlayGame);

static void BM_BayesianNash(benchmark::State& state) {
  const dram::GameReport report = dram::play_game(dram::case_study_config());
  for (auto _ : state) {
    benchmark::DoNotOptimize(dram::bayesian_nash(report.ep.ep_a, report.ep.ep_b));
  }
}
BENCHMARK(BM_BayesianNash);

BENCHMARK_MAIN();
