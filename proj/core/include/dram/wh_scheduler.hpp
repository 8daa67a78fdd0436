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

#ifndef DRAM_WH_SCHEDULER_HPP_
#define DRAM_WH_SCHEDULER_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace dram {

// One day at 15-minute resolution.
inline constexpr int kSlotsPerDay = 96;

// Normalized electricity prices, one value per 15-minute slot, in [0, 1].
struct PriceProfile {
  std::vector<double> values;

  bool operator==(const PriceProfile&) const = default;
};

// Normalized hot-water draw intensity per slot, in [0, 1].
struct WaterDrawProfile {
  std::vector<double> values;

  bool operator==(const WaterDrawProfile&) const = default;
};

// Throw ValidationError unless the profile has exactly kSlotsPerDay values
// in [0, 1] (and, for prices, a positive maximum).
void validate_profile(const PriceProfile& prices);
void validate_profile(const WaterDrawProfile& draws);

// First-order linear tank. Per slot the temperature moves by
//   +heat_rate  when the heater is on,
//   -loss_rate  standing loss,
//   -draw_drop * draw  for the normalized draw intensity of the slot.
struct TankModel {
  double temp_min = 110.0;      // deg F, comfort floor
  double temp_max = 130.0;      // deg F, comfort ceiling
  double heat_rate = 5.0;       // deg F per on-slot at nominal 4.5 kW
  double loss_rate = 0.5;       // deg F standing loss per slot
  double draw_drop = 10.0;      // deg F per unit of normalized draw
  double initial_temp = 120.0;  // deg F at the start of the day

  bool operator==(const TankModel&) const = default;
};

void validate_tank(const TankModel& tank);

// On/off status per slot.
struct WHSchedule {
  std::vector<std::uint8_t> on;

  int on_count() const;

  bool operator==(const WHSchedule&) const = default;
};

struct OnOffStats {
  double p_on = 0.0;
  double p_off = 1.0;
  double p_on_given_exp = 0.0;
  double p_off_given_exp = 1.0;
  double p_on_given_cheap = 0.0;
  double p_off_given_cheap = 1.0;
};

// Clamp-free temperature trajectory under a schedule; entry t is the
// temperature after slot t's heating, loss and draw have been applied.
std::vector<double> simulate_tank(const TankModel& tank, const WHSchedule& schedule,
                                  const WaterDrawProfile& draws);

// Baseline ("typical") operation: the smallest duty cycle that keeps the
// temperature inside [temp_min, temp_max] at every slot AND ends the day no
// colder than it started, so the same schedule can repeat day over day.
// Ties resolve to the schedule whose off-slots come earliest.
// Throws InfeasibleScheduleError naming the first violating slot.
WHSchedule schedule_welfare(const TankModel& tank, const WaterDrawProfile& draws);

// Price-sensitive operation: minimizes sum(price[t] * on[t]) subject to the
// comfort band alone. Dropping the day-sustainability condition is what lets
// demand response curtail load: the tank may finish the day at the comfort
// floor. Ties resolve toward fewer on-slots, then earliest off.
WHSchedule schedule_price_sensitive(const TankModel& tank, const WaterDrawProfile& draws,
                                    const PriceProfile& prices);

// Shared DP core over an arbitrary horizon. prices may be empty (treated as
// all-zero, which reduces the objective to the on-count). Exposed so tests
// can exercise short horizons against exhaustive enumeration.
std::vector<std::uint8_t> schedule_horizon(const TankModel& tank,
                                           std::span<const double> draws,
                                           std::span<const double> prices,
                                           bool sustain_terminal);

std::vector<double> simulate_horizon(const TankModel& tank,
                                     std::span<const std::uint8_t> on,
                                     std::span<const double> draws);

// Marginal and price-conditional on/off fractions. A slot is "expensive"
// when its price strictly exceeds threshold_fraction * max(price). Empty
// price classes report (p_on = 0, p_off = 1).
OnOffStats on_off_stats(const WHSchedule& schedule, const PriceProfile& prices,
                        double threshold_fraction = 0.5);

// (on_baseline - on_scheduled) / on_baseline.
double curtailment_ratio(const WHSchedule& baseline, const WHSchedule& scheduled);

// Coarse grid search over (heat_rate, loss_rate, draw_drop) returning the
// first calibration whose welfare schedule over `draws` has exactly
// target_on_slots on-slots. This is how the bundled tank defaults were fit.
TankModel fit_tank_calibration(const WaterDrawProfile& draws, int target_on_slots);

// Profile CSV format shared with the CLI: header "slot,value", exactly 96
// data rows with slot = 0..95 and value a decimal in [0, 1].
PriceProfile load_price_profile(const std::filesystem::path& path);
WaterDrawProfile load_water_profile(const std::filesystem::path& path);
void write_profile_csv(const std::filesystem::path& path, std::span<const double> values);

}  // namespace dram

#endif  // DRAM_WH_SCHEDULER_HPP_
