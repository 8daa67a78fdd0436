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

#ifndef DRAM_COST_MODEL_HPP_
#define DRAM_COST_MODEL_HPP_

#include <span>
#include <utility>
#include <vector>

namespace dram {

// Battery discharging cost coefficients of a single house (or of one
// aggregator type, since every house of a type shares them).
//   a     pricing coefficient, normalized $ per log-unit
//   b_kwh energy scale in kWh; also the largest typical |dE|
struct CostParams {
  double a = 0.0;
  double b_kwh = 0.0;

  bool operator==(const CostParams&) const = default;
};

// Quadratic aggregate cost C(P) = v*P + u*P^2 for an aggregator selling
// stored power P (kW), derived from the mean house pricing coefficient.
struct AggregatorCostModel {
  double v = 0.0;      // $/kW
  double u = 0.0;      // $/kW^2
  double a_g = 0.0;    // mean pricing coefficient over the houses
  double b_kwh = 0.0;  // shared energy scale
  int n_houses = 0;

  double cost(double p) const { return v * p + u * p * p; }

  bool operator==(const AggregatorCostModel&) const = default;
};

// Linear sale bid lambda(T) = lambda0 + slope_m * T for net interchange T
// above the baseline local feed p0. Offered quantity is bounded by the
// stored power: -p0 <= T <= p_max - p0.
struct BidCurve {
  double lambda0 = 0.0;  // price intercept: marginal cost at p0
  double slope_m = 0.0;  // $/kW^2, strategy-scaled
  double p0 = 0.0;       // baseline local-feed power, kW
  double p_max = 0.0;    // maximum stored power, kW

  double price_at(double t) const { return lambda0 + slope_m * t; }

  bool operator==(const BidCurve&) const = default;
};

// One (power kW, cost $) observation used for coefficient calibration.
using CostSample = std::pair<double, double>;

struct CalibrationResult {
  CostParams params;
  double residual = 0.0;  // root of the summed squared fit error
};

// -a*log(1 - dE/B). Barrier form; requires 0 <= dE < B.
double battery_cost_log(const CostParams& params, double delta_e);

// Second-order expansion a*dE/B + a*dE^2/B^2, valid for |dE|/B < 1.
double battery_cost_quadratic(const CostParams& params, double delta_e);

// Quadratic cost expressed against 15-minute average power:
// substitutes dE = 0.25*dP. Requires 0.25*|dP| < B.
double battery_cost_power(const CostParams& params, double delta_p);

// Least-squares fit of (a, B) to sampled total battery costs. The two
// sample sequences (grid charging cost and capital/maintenance cost) are
// summed pointwise; they must cover the same power points, or one of them
// may be empty. Throws CalibrationError on empty or degenerate input.
CalibrationResult calibrate_params(std::span<const CostSample> grid_cost_samples,
                                   std::span<const CostSample> cm_cost_samples);

// Aggregates houses into the quadratic model: a_g is the plain mean of the
// house coefficients, v = 0.25*a_g/B, u = 0.0625*a_g/B^2. Every house must
// share shared_b (a mixed fleet is rejected so the caller can regroup).
AggregatorCostModel aggregate_cost(std::span<const CostParams> house_params,
                                   double shared_b);

// dC/dP = v + 2*u*p.
double marginal_cost(const AggregatorCostModel& model, double p);

// Builds the bid: intercept anchored at marginal cost of p0, slope
// epsilon*u. epsilon < 2 bids below marginal cost, 2 at it, > 2 above.
BidCurve make_bid(const AggregatorCostModel& model, double p0, double p_max,
                  double epsilon);

}  // namespace dram

#endif  // DRAM_COST_MODEL_HPP_
