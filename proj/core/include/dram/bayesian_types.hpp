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

#ifndef DRAM_BAYESIAN_TYPES_HPP_
#define DRAM_BAYESIAN_TYPES_HPP_

#include <Eigen/Core>
#include <array>
#include <vector>

#include "dram/wh_scheduler.hpp"

namespace dram {

// Joint state of the electricity price level and the water-heater power
// state, in the fixed order sigma_1..sigma_4.
enum class Scenario : int {
  kExpensiveOff = 0,
  kExpensiveOn = 1,
  kCheapOff = 2,
  kCheapOn = 3,
};

inline constexpr int kScenarioCount = 4;
const char* scenario_name(Scenario s);

struct ScenarioProbabilities {
  std::array<double, kScenarioCount> p{};

  double operator[](Scenario s) const { return p[static_cast<int>(s)]; }
};

// 0/1 weight per scenario: 1 when a seller offers energy in that scenario.
struct ParticipationFlags {
  std::array<int, kScenarioCount> g{1, 0, 0, 0};

  bool operator==(const ParticipationFlags&) const = default;
};

void validate_flags(const ParticipationFlags& flags);

// Per-scenario probability vector over one aggregator's types.
struct TypePrior {
  std::array<std::vector<double>, kScenarioCount> per_scenario;

  int type_count() const;

  bool operator==(const TypePrior&) const = default;
};

void validate_prior(const TypePrior& prior, const char* who);

// Unnormalized joint mass pi(m, n) over (A-type, B-type); only ratios feed
// the conditionals, so no renormalization is applied.
struct JointTypeDistribution {
  Eigen::MatrixXd pi;  // M x N, nonnegative
};

struct ConditionalTypeDistributions {
  Eigen::MatrixXd eta_a;  // M x N; row m = prob of B's type given A is m
  Eigen::MatrixXd eta_b;  // N x M; row n = prob of A's type given B is n
};

// Fraction of slots whose price strictly exceeds threshold_fraction * max.
double price_expensive_prob(const PriceProfile& prices, double threshold_fraction = 0.5);

// Price level and heater state treated as independent events.
ScenarioProbabilities scenario_probs_independent(double p_exp, const OnOffStats& stats);

// Price level and heater state coupled through the price-conditional
// fractions (the DR-scheduled case).
ScenarioProbabilities scenario_probs_conditional(double p_exp, const OnOffStats& stats);

// pi(m, n) = sum_f P(sigma_f) * g(sigma_f) * psi_A^f(m) * psi_B^f(n).
JointTypeDistribution joint_type_distribution(const ScenarioProbabilities& sp,
                                              const ParticipationFlags& flags,
                                              const TypePrior& psi_a,
                                              const TypePrior& psi_b);

// Row-normalizes pi both ways. A type with zero mass has no conditional;
// the error names it.
ConditionalTypeDistributions conditional_type_distributions(
    const JointTypeDistribution& joint);

}  // namespace dram

#endif  // DRAM_BAYESIAN_TYPES_HPP_
