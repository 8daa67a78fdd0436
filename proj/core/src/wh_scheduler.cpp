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

#include "dram/wh_scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>

#include "dram/errors.hpp"

namespace dram {

namespace {

constexpr double kGridEps = 1e-9;

void validate_values(std::span<const double> values, const char* what) {
  if (static_cast<int>(values.size()) != kSlotsPerDay) {
    throw ValidationError(std::string(what) + ": expected exactly " +
                          std::to_string(kSlotsPerDay) + " slots, got " +
                          std::to_string(values.size()));
  }
  for (int t = 0; t < kSlotsPerDay; ++t) {
    if (!(values[t] >= 0.0) || !(values[t] <= 1.0)) {
      throw ValidationError(std::string(what) + ": value out of [0,1] at slot " +
                            std::to_string(t));
    }
  }
}

// Per-slot admissible window of cumulative on-counts. With the linear tank
// the temperature after slot t depends only on how many on-slots have
// happened, T_t = T0 + heat*k_t - cum_t, so the band translates into integer
// bounds on k_t and the DP state is exact (no temperature rounding).
struct CountWindows {
  std::vector<int> lo, hi;
  double cum_total = 0.0;
};

CountWindows count_windows(const TankModel& tank, std::span<const double> draws) {
  CountWindows w;
  const int h = static_cast<int>(draws.size());
  w.lo.resize(h);
  w.hi.resize(h);
  double cum = 0.0;
  for (int t = 0; t < h; ++t) {
    cum += tank.loss_rate + tank.draw_drop * draws[t];
    const double lo_real = (tank.temp_min - tank.initial_temp + cum) / tank.heat_rate;
    const double hi_real = (tank.temp_max - tank.initial_temp + cum) / tank.heat_rate;
    w.lo[t] = std::max(0, static_cast<int>(std::ceil(lo_real - kGridEps)));
    w.hi[t] = static_cast<int>(std::floor(hi_real + kGridEps));
  }
  w.cum_total = cum;
  return w;
}

struct SuffixValue {
  double cost = std::numeric_limits<double>::infinity();
  int count = std::numeric_limits<int>::max();

  bool feasible() const { return std::isfinite(cost); }
};

bool better(double cost_a, int count_a, const SuffixValue& b) {
  if (cost_a < b.cost - 1e-12) return true;
  if (cost_a > b.cost + 1e-12) return false;
  return count_a < b.count;
}

bool matches(double cost_a, int count_a, const SuffixValue& b) {
  return std::abs(cost_a - b.cost) <= 1e-12 && count_a == b.count;
}

int first_infeasible_slot(const CountWindows& w) {
  int reach_lo = 0, reach_hi = 0;  // admissible on-count interval entering slot t
  const int h = static_cast<int>(w.lo.size());
  for (int t = 0; t < h; ++t) {
    reach_hi = std::min(reach_hi + 1, w.hi[t]);
    reach_lo = std::max(reach_lo, w.lo[t]);
    if (reach_lo > reach_hi) return t;
  }
  return h - 1;
}

}  // namespace

void validate_profile(const PriceProfile& prices) {
  validate_values(prices.values, "price profile");
  const double mx = *std::max_element(prices.values.begin(), prices.values.end());
  if (!(mx > 0.0)) {
    throw ValidationError("price profile: maximum value must be positive");
  }
}

void validate_profile(const WaterDrawProfile& draws) {
  validate_values(draws.values, "water draw profile");
}

void validate_tank(const TankModel& tank) {
  if (!(tank.temp_min < tank.temp_max)) {
    throw ValidationError("tank: temp_min must be below temp_max");
  }
  if (!(tank.heat_rate > 0.0) || tank.loss_rate < 0.0 || tank.draw_drop < 0.0) {
    throw ValidationError("tank: heat_rate > 0, loss_rate >= 0, draw_drop >= 0 required");
  }
  if (tank.initial_temp < tank.temp_min || tank.initial_temp > tank.temp_max) {
    throw ValidationError("tank: initial temperature must start inside the band");
  }
}

int WHSchedule::on_count() const {
  return static_cast<int>(std::count(on.begin(), on.end(), std::uint8_t{1}));
}

std::vector<double> simulate_horizon(const TankModel& tank,
                                     std::span<const std::uint8_t> on,
                                     std::span<const double> draws) {
  if (on.size() != draws.size()) {
    throw ValidationError("simulate: schedule and draw horizon differ");
  }
  std::vector<double> traj(on.size());
  double temp = tank.initial_temp;
  for (std::size_t t = 0; t < on.size(); ++t) {
    temp += tank.heat_rate * (on[t] ? 1.0 : 0.0) - tank.loss_rate -
            tank.draw_drop * draws[t];
    traj[t] = temp;
  }
  return traj;
}

std::vector<double> simulate_tank(const TankModel& tank, const WHSchedule& schedule,
                                  const WaterDrawProfile& draws) {
  validate_tank(tank);
  validate_profile(draws);
  return simulate_horizon(tank, schedule.on, draws.values);
}

std::vector<std::uint8_t> schedule_horizon(const TankModel& tank,
                                           std::span<const double> draws,
                                           std::span<const double> prices,
                                           bool sustain_terminal) {
  validate_tank(tank);
  const int h = static_cast<int>(draws.size());
  if (h == 0) return {};
  if (!prices.empty() && static_cast<int>(prices.size()) != h) {
    throw ValidationError("schedule: price and draw horizons differ");
  }
  const CountWindows w = count_windows(tank, draws);
  const int k_required =
      sustain_terminal
          ? std::max(0, static_cast<int>(std::ceil(w.cum_total / tank.heat_rate - kGridEps)))
          : 0;

  // suffix[t][k]: best (cost, added on-count) over slots t..h-1 entering
  // slot t with k on-slots used so far.
  std::vector<std::vector<SuffixValue>> suffix(h + 1);
  for (int t = 0; t <= h; ++t) suffix[t].resize(t + 1);
  for (int k = 0; k <= h; ++k) {
    if (k >= k_required) suffix[h][k] = SuffixValue{0.0, 0};
  }
  for (int t = h - 1; t >= 0; --t) {
    for (int k = 0; k <= t; ++k) {
      SuffixValue best;
      for (int on = 0; on <= 1; ++on) {
        const int k2 = k + on;
        if (k2 < w.lo[t] || k2 > w.hi[t]) continue;
        const SuffixValue& nxt = suffix[t + 1][k2];
        if (!nxt.feasible()) continue;
        const double cost = nxt.cost + (on && !prices.empty() ? prices[t] : 0.0);
        const int count = nxt.count + on;
        if (better(cost, count, best)) best = SuffixValue{cost, count};
      }
      suffix[t][k] = best;
    }
  }

  if (!suffix[0][0].feasible()) {
    const int slot = first_infeasible_slot(w);
    throw InfeasibleScheduleError(
        slot, "no schedule keeps the temperature band; first violation at slot " +
                  std::to_string(slot));
  }

  // Forward reconstruction, preferring off so off-slots land earliest.
  std::vector<std::uint8_t> on_seq(h, 0);
  int k = 0;
  for (int t = 0; t < h; ++t) {
    const SuffixValue& target = suffix[t][k];
    for (int on = 0; on <= 1; ++on) {
      const int k2 = k + on;
      if (k2 < w.lo[t] || k2 > w.hi[t]) continue;
      const SuffixValue& nxt = suffix[t + 1][k2];
      if (!nxt.feasible()) continue;
      const double cost = nxt.cost + (on && !prices.empty() ? prices[t] : 0.0);
      if (matches(cost, nxt.count + on, target)) {
        on_seq[t] = static_cast<std::uint8_t>(on);
        k = k2;
        break;
      }
    }
  }
  return on_seq;
}

WHSchedule schedule_welfare(const TankModel& tank, const WaterDrawProfile& draws) {
  validate_profile(draws);
  return WHSchedule{schedule_horizon(tank, draws.values, {}, /*sustain_terminal=*/true)};
}

WHSchedule schedule_price_sensitive(const TankModel& tank, const WaterDrawProfile& draws,
                                    const PriceProfile& prices) {
  validate_profile(draws);
  validate_profile(prices);
  return WHSchedule{
      schedule_horizon(tank, draws.values, prices.values, /*sustain_terminal=*/false)};
}

OnOffStats on_off_stats(const WHSchedule& schedule, const PriceProfile& prices,
                        double threshold_fraction) {
  validate_profile(prices);
  if (static_cast<int>(schedule.on.size()) != kSlotsPerDay) {
    throw ValidationError("on_off_stats: schedule must cover the full day");
  }
  const double mx = *std::max_element(prices.values.begin(), prices.values.end());
  const double threshold = threshold_fraction * mx;
  int n_exp = 0, n_on = 0, on_exp = 0, on_cheap = 0;
  for (int t = 0; t < kSlotsPerDay; ++t) {
    const bool expensive = prices.values[t] > threshold;
    n_exp += expensive;
    if (schedule.on[t]) {
      ++n_on;
      (expensive ? on_exp : on_cheap)++;
    }
  }
  const int n_cheap = kSlotsPerDay - n_exp;
  OnOffStats s;
  s.p_on = static_cast<double>(n_on) / kSlotsPerDay;
  s.p_off = 1.0 - s.p_on;
  s.p_on_given_exp = n_exp > 0 ? static_cast<double>(on_exp) / n_exp : 0.0;
  s.p_off_given_exp = 1.0 - s.p_on_given_exp;
  s.p_on_given_cheap = n_cheap > 0 ? static_cast<double>(on_cheap) / n_cheap : 0.0;
  s.p_off_given_cheap = 1.0 - s.p_on_given_cheap;
  return s;
}

double curtailment_ratio(const WHSchedule& baseline, const WHSchedule& scheduled) {
  if (baseline.on.size() != scheduled.on.size()) {
    throw ValidationError("curtailment_ratio: schedule lengths differ");
  }
  const int base = baseline.on_count();
  if (base == 0) {
    throw ComputationError("curtailment_ratio: undefined for an all-off baseline");
  }
  return static_cast<double>(base - scheduled.on_count()) / base;
}

TankModel fit_tank_calibration(const WaterDrawProfile& draws, int target_on_slots) {
  validate_profile(draws);
  static constexpr double kHeat[] = {4.0, 4.5, 5.0, 5.5, 6.0};
  static constexpr double kLoss[] = {0.25, 0.5, 0.75, 1.0};
  static constexpr double kDrawDrop[] = {6.0, 8.0, 10.0, 12.0};
  for (double heat : kHeat) {
    for (double loss : kLoss) {
      for (double dd : kDrawDrop) {
        TankModel tank;
        tank.heat_rate = heat;
        tank.loss_rate = loss;
        tank.draw_drop = dd;
        try {
          if (schedule_welfare(tank, draws).on_count() == target_on_slots) return tank;
        } catch (const InfeasibleScheduleError&) {
          // keep scanning
        }
      }
    }
  }
  throw CalibrationError("fit_tank_calibration: no grid point yields " +
                         std::to_string(target_on_slots) + " on-slots");
}

namespace {

std::vector<double> parse_profile_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("profile: cannot open " + path.string());
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("profile: empty file " + path.string());
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "slot,value") {
    throw ValidationError("profile: header must be 'slot,value' in " + path.string());
  }
  std::vector<double> values;
  int expected_slot = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("profile: malformed row '" + line + "' in " + path.string());
    }
    std::size_t used = 0;
    int slot = -1;
    double value = 0.0;
    try {
      slot = std::stoi(line.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument("slot");
      const std::string rest = line.substr(comma + 1);
      value = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      throw ValidationError("profile: malformed row '" + line + "' in " + path.string());
    }
    if (slot != expected_slot) {
      throw ValidationError("profile: slots must run 0..95 in order; saw " +
                            std::to_string(slot) + " in " + path.string());
    }
    values.push_back(value);
    ++expected_slot;
  }
  if (static_cast<int>(values.size()) != kSlotsPerDay) {
    throw ValidationError("profile: expected 96 data rows, got " +
                          std::to_string(values.size()) + " in " + path.string());
  }
  return values;
}

}  // namespace

PriceProfile load_price_profile(const std::filesystem::path& path) {
  PriceProfile p{parse_profile_csv(path)};
  validate_profile(p);
  return p;
}

WaterDrawProfile load_water_profile(const std::filesystem::path& path) {
  WaterDrawProfile p{parse_profile_csv(path)};
  validate_profile(p);
  return p;
}

void write_profile_csv(const std::filesystem::path& path, std::span<const double> values) {
  std::ofstream out(path, std::ios::binary);  // LF endings on every platform
  if (!out) {
    throw ValidationError("profile: cannot write " + path.string());
  }
  out << "slot,value\n";
  char buf[32];
  for (std::size_t t = 0; t < values.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.4f", values[t]);
    out << t << ',' << buf << '\n';
  }
}

}  // namespace dram
