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

#include "dram/cost_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dram/errors.hpp"

namespace dram {

namespace {

void check_params(const CostParams& p, const char* where) {
  if (!(p.a > 0.0) || !(p.b_kwh > 0.0)) {
    throw std::domain_error(std::string(where) + ": requires a > 0 and B > 0");
  }
}

}  // namespace

double battery_cost_log(const CostParams& params, double delta_e) {
  check_params(params, "battery_cost_log");
  if (delta_e < 0.0) {
    throw std::domain_error("battery_cost_log: negative stored-energy delta");
  }
  if (delta_e >= params.b_kwh) {
    throw std::domain_error("battery_cost_log: delta_e >= B violates the barrier");
  }
  return -params.a * std::log(1.0 - delta_e / params.b_kwh);
}

double battery_cost_quadratic(const CostParams& params, double delta_e) {
  check_params(params, "battery_cost_quadratic");
  if (std::abs(delta_e) >= params.b_kwh) {
    throw std::domain_error("battery_cost_quadratic: |delta_e|/B must be < 1");
  }
  const double x = delta_e / params.b_kwh;
  return params.a * x + params.a * x * x;
}

double battery_cost_power(const CostParams& params, double delta_p) {
  check_params(params, "battery_cost_power");
  const double delta_e = 0.25 * delta_p;  // constant load over one 15-minute slot
  if (std::abs(delta_e) >= params.b_kwh) {
    throw std::domain_error("battery_cost_power: 0.25*|delta_p| must be < B");
  }
  return battery_cost_quadratic(params, delta_e);
}

CalibrationResult calibrate_params(std::span<const CostSample> grid_cost_samples,
                                   std::span<const CostSample> cm_cost_samples) {
  // Sum the two components pointwise. One side may be empty; otherwise the
  // power grids must line up.
  std::vector<CostSample> total;
  if (grid_cost_samples.empty() && cm_cost_samples.empty()) {
    throw CalibrationError("calibrate_params: empty sample set");
  }
  if (grid_cost_samples.empty()) {
    total.assign(cm_cost_samples.begin(), cm_cost_samples.end());
  } else if (cm_cost_samples.empty()) {
    total.assign(grid_cost_samples.begin(), grid_cost_samples.end());
  } else {
    if (grid_cost_samples.size() != cm_cost_samples.size()) {
      throw CalibrationError(
          "calibrate_params: grid and capital/maintenance samples must cover "
          "the same power points");
    }
    total.reserve(grid_cost_samples.size());
    for (std::size_t i = 0; i < grid_cost_samples.size(); ++i) {
      if (grid_cost_samples[i].first != cm_cost_samples[i].first) {
        throw CalibrationError(
            "calibrate_params: mismatched power point at index " + std::to_string(i));
      }
      total.emplace_back(grid_cost_samples[i].first,
                         grid_cost_samples[i].second + cm_cost_samples[i].second);
    }
  }

  // With x = 0.25*dP the model is c = p*x + q*x^2, linear in (p, q) where
  // p = a/B and q = a/B^2. Normal equations:
  double sxx = 0, sxxx = 0, sxxxx = 0, sxc = 0, sxxc = 0;
  for (const auto& [power, cost] : total) {
    const double x = 0.25 * power;
    sxx += x * x;
    sxxx += x * x * x;
    sxxxx += x * x * x * x;
    sxc += x * cost;
    sxxc += x * x * cost;
  }
  const double det = sxx * sxxxx - sxxx * sxxx;
  if (total.size() < 2 || std::abs(det) < 1e-12 * (sxx * sxxxx + 1e-300)) {
    throw CalibrationError(
        "calibrate_params: need at least two distinct power points");
  }
  const double p = (sxc * sxxxx - sxxx * sxxc) / det;
  const double q = (sxx * sxxc - sxxx * sxc) / det;
  if (!(q > 0.0) || !(p > 0.0)) {
    throw CalibrationError("calibrate_params: fit left the a > 0, B > 0 region");
  }
  CalibrationResult out;
  out.params.b_kwh = p / q;
  out.params.a = p * p / q;
  double ss = 0.0;
  for (const auto& [power, cost] : total) {
    const double x = 0.25 * power;
    const double r = cost - (p * x + q * x * x);
    ss += r * r;
  }
  out.residual = std::sqrt(ss);
  return out;
}

AggregatorCostModel aggregate_cost(std::span<const CostParams> house_params,
                                   double shared_b) {
  if (house_params.empty()) {
    throw ValidationError("aggregate_cost: empty house list");
  }
  if (!(shared_b > 0.0)) {
    throw ValidationError("aggregate_cost: shared B must be positive");
  }
  double sum_a = 0.0;
  for (const CostParams& h : house_params) {
    check_params(h, "aggregate_cost");
    if (h.b_kwh != shared_b) {
      throw ValidationError(
          "aggregate_cost: mixed B values in one aggregator; regroup houses");
    }
    sum_a += h.a;
  }
  AggregatorCostModel model;
  model.n_houses = static_cast<int>(house_params.size());
  model.a_g = sum_a / static_cast<double>(model.n_houses);
  model.b_kwh = shared_b;
  model.v = 0.25 * model.a_g / shared_b;
  model.u = model.a_g * 0.0625 / (shared_b * shared_b);
  return model;
}

double marginal_cost(const AggregatorCostModel& model, double p) {
  if (p < 0.0) {
    throw std::domain_error("marginal_cost: negative power");
  }
  return model.v + 2.0 * model.u * p;
}

BidCurve make_bid(const AggregatorCostModel& model, double p0, double p_max,
                  double epsilon) {
  if (!(epsilon > 0.0)) {
    throw std::domain_error("make_bid: strategy multiplier must be positive");
  }
  if (p0 < 0.0 || p0 > p_max) {
    throw std::domain_error("make_bid: requires 0 <= p0 <= p_max");
  }
  BidCurve bid;
  bid.lambda0 = marginal_cost(model, p0);
  bid.slope_m = epsilon * model.u;
  bid.p0 = p0;
  bid.p_max = p_max;
  return bid;
}

}  // namespace dram
