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

#include "dram/case_study.hpp"

#include "dram/harness.hpp"

namespace dram {

namespace {

// Normalized day-ahead price: cheap overnight, a morning ramp, a midday
// solar dip and an evening peak touching the maximum. 68 slots lie strictly
// above half the maximum.
constexpr double kPrice[kSlotsPerDay] = {
    0.3000, 0.2900, 0.2800, 0.2700, 0.2600, 0.2600, 0.2500, 0.2500,
    0.2400, 0.2400, 0.2400, 0.2500, 0.2500, 0.2600, 0.2600, 0.2700,
    0.2800, 0.2900, 0.3000, 0.3100, 0.3200, 0.3300, 0.3400, 0.3600,
    0.3800, 0.4000, 0.5200, 0.5600, 0.6000, 0.6300, 0.6600, 0.6800,
    0.7000, 0.7100, 0.5800, 0.5865, 0.5929, 0.5992, 0.6052, 0.6109,
    0.6163, 0.6213, 0.6257, 0.6297, 0.6330, 0.6357, 0.6378, 0.6392,
    0.6399, 0.6399, 0.6392, 0.6378, 0.6357, 0.6330, 0.6297, 0.6257,
    0.6213, 0.6163, 0.6109, 0.6052, 0.5992, 0.5929, 0.5865, 0.5800,
    0.7500, 0.7873, 0.8237, 0.8585, 0.8908, 0.9200, 0.9455, 0.9665,
    0.9827, 0.9937, 0.9993, 0.9993, 0.9937, 0.9827, 0.9665, 0.9455,
    0.9200, 0.8908, 0.8585, 0.8237, 0.7873, 0.7500, 0.7200, 0.6800,
    0.6400, 0.6100, 0.5800, 0.5500, 0.5300, 0.5100, 0.4800, 0.4200,
};

// Normalized hot-water draw: early risers before dawn, the main morning
// burst, a midday trickle, the evening bath block and one late draw.
// The intensities sum to 4.2.
constexpr double kWater[kSlotsPerDay] = {
    0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
    0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
    0.0000, 0.0000, 0.0000, 0.0000, 0.0500, 0.1000, 0.1500, 0.2000,
    0.1500, 0.0500, 0.0000, 0.0000, 0.2500, 0.3500, 0.3500, 0.2500,
    0.2000, 0.1000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
    0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.1000, 0.1500,
    0.1000, 0.0500, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
    0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
    0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
    0.1500, 0.2000, 0.3000, 0.3000, 0.2500, 0.1500, 0.1000, 0.0500,
    0.0000, 0.0000, 0.0000, 0.0000, 0.1000, 0.0000, 0.0000, 0.0000,
    0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000, 0.0000,
};

GameConfig build_config() {
  GameConfig c;
  c.variant = {MarketMode::kNonCooperative, false};

  c.seller_a.name = "A";
  c.seller_a.n_houses = 200;
  c.seller_a.types = {{{4.0, 25.0}, 180.0, 180.0}, {{4.3, 23.5}, 180.0, 180.0}};
  c.seller_a.p_max = 660.0;
  c.seller_a.applies_dr = true;
  c.seller_a.gen_kw = 660.0;

  c.seller_b.name = "B";
  c.seller_b.n_houses = 240;
  c.seller_b.types = {{{4.2, 24.0}, 180.0, 180.0}, {{4.5, 23.5}, 240.0, 0.0}};
  c.seller_b.p_max = 594.0;
  c.seller_b.applies_dr = false;
  c.seller_b.gen_kw = 594.0;

  c.buyer.name = "C";
  c.buyer.cost = {5.0, 21.5};
  c.buyer.n_houses = 260;
  c.buyer.p_g = 1950.0;
  c.buyer.gen_kw = 528.0;

  c.l_c = 400.0;
  c.strategies = StrategySet{};
  c.psi_a.per_scenario = {{{0.16, 0.84}, {0.11, 0.89}, {0.75, 0.25}, {0.69, 0.31}}};
  c.psi_b.per_scenario = {{{0.21, 0.79}, {0.18, 0.82}, {0.67, 0.33}, {0.60, 0.40}}};
  c.flags = ParticipationFlags{};  // (1, 0, 0, 0)
  c.caps.phi_max = 0.4;
  c.tank = TankModel{};
  c.prices.values.assign(kPrice, kPrice + kSlotsPerDay);
  c.draws.values.assign(kWater, kWater + kSlotsPerDay);
  c.reported_demand_curtail = 0.112;
  return c;
}

}  // namespace

const GameConfig& case_study_config() {
  static const GameConfig config = build_config();
  return config;
}

const PriceProfile& case_study_prices() {
  return case_study_config().prices;
}

const WaterDrawProfile& case_study_draws() {
  return case_study_config().draws;
}

void write_case_study_bundle(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "profiles");
  write_profile_csv(dir / "profiles" / "price.csv", case_study_prices().values);
  write_profile_csv(dir / "profiles" / "water.csv", case_study_draws().values);
  save_config(case_study_config(), dir / "casestudy.json",
              std::pair<std::string, std::string>{"profiles/price.csv",
                                                  "profiles/water.csv"});
}

}  // namespace dram
