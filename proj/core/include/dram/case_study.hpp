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

#ifndef DRAM_CASE_STUDY_HPP_
#define DRAM_CASE_STUDY_HPP_

#include <filesystem>

#include "dram/game_engine.hpp"

namespace dram {

// The bundled three-aggregator study: sellers A and B compete to supply
// buyer C. Profiles are synthetic daily series constructed so that
//   - 68 of 96 slots are expensive (price above half the maximum),
//   - the baseline schedule heats in 18 slots,
//   - the price-sensitive schedule heats in 16 slots, 10 expensive + 6 cheap.
// The numeric tables here are normative; data/ is generated from them.
const GameConfig& case_study_config();

// Frozen daily profiles (96 values each).
const PriceProfile& case_study_prices();
const WaterDrawProfile& case_study_draws();

// Regenerates the bundled data directory: casestudy.json plus
// profiles/price.csv and profiles/water.csv.
void write_case_study_bundle(const std::filesystem::path& dir);

}  // namespace dram

#endif  // DRAM_CASE_STUDY_HPP_
