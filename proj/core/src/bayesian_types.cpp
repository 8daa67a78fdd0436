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

#include "dram/bayesian_types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dram/errors.hpp"

namespace dram {

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::kExpensiveOff: return "sigma1_exp_off";
    case Scenario::kExpensiveOn: return "sigma2_exp_on";
    case Scenario::kCheapOff: return "sigma3_cheap_off";
    case Scenario::kCheapOn: return "sigma4_cheap_on";
  }
  return "?";
}

void validate_flags(const ParticipationFlags& flags) {
  for (int f = 0; f < kScenarioCount; ++f) {
    if (flags.g[f] != 0 && flags.g[f] != 1) {
      throw ValidationError("participation flags must be 0 or 1");
    }
  }
}

int TypePrior::type_count() const {
  return static_cast<int>(per_scenario[0].size());
}

void validate_prior(const TypePrior& prior, const char* who) {
  const int count = prior.type_count();
  if (count == 0) {
    throw ValidationError(std::string(who) + ": type prior is empty");
  }
  for (int f = 0; f < kScenarioCount; ++f) {
    const auto& v = prior.per_scenario[f];
    if (static_cast<int>(v.size()) != count) {
      throw ValidationError(std::string(who) +
                            ": prior rows must agree on the type count");
    }
    double sum = 0.0;
    for (double x : v) {
      if (x < 0.0 || x > 1.0) {
        throw ValidationError(std::string(who) + ": prior entry out of [0,1]");
      }
      sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw ValidationError(std::string(who) + ": prior for scenario " +
                            std::to_string(f + 1) + " sums to " + std::to_string(sum));
    }
  }
}

double price_expensive_prob(const PriceProfile& prices, double threshold_fraction) {
  validate_profile(prices);
  const double mx = *std::max_element(prices.values.begin(), prices.values.end());
  const double threshold = threshold_fraction * mx;
  int n = 0;
  for (double v : prices.values) n += (v > threshold);
  return static_cast<double>(n) / static_cast<double>(prices.values.size());
}

ScenarioProbabilities scenario_probs_independent(double p_exp, const OnOffStats& stats) {
  if (p_exp < 0.0 || p_exp > 1.0) {
    throw std::domain_error("scenario_probs: p_exp out of [0,1]");
  }
  ScenarioProbabilities sp;
  sp.p = {p_exp * stats.p_off, p_exp * stats.p_on, (1.0 - p_exp) * stats.p_off,
          (1.0 - p_exp) * stats.p_on};
  return sp;
}

ScenarioProbabilities scenario_probs_conditional(double p_exp, const OnOffStats& stats) {
  if (p_exp < 0.0 || p_exp > 1.0) {
    throw std::domain_error("scenario_probs: p_exp out of [0,1]");
  }
  ScenarioProbabilities sp;
  sp.p = {p_exp * stats.p_off_given_exp, p_exp * stats.p_on_given_exp,
          (1.0 - p_exp) * stats.p_off_given_cheap,
          (1.0 - p_exp) * stats.p_on_given_cheap};
  return sp;
}

JointTypeDistribution joint_type_distribution(const ScenarioProbabilities& sp,
                                              const ParticipationFlags& flags,
                                              const TypePrior& psi_a,
                                              const TypePrior& psi_b) {
  validate_flags(flags);
  validate_prior(psi_a, "psi_A");
  validate_prior(psi_b, "psi_B");
  const int m_count = psi_a.type_count();
  const int n_count = psi_b.type_count();
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(m_count, n_count);
  for (int f = 0; f < kScenarioCount; ++f) {
    if (flags.g[f] == 0) continue;
    const double w = sp.p[f];
    for (int m = 0; m < m_count; ++m) {
      for (int n = 0; n < n_count; ++n) {
        pi(m, n) += w * psi_a.per_scenario[f][m] * psi_b.per_scenario[f][n];
      }
    }
  }
  return JointTypeDistribution{std::move(pi)};
}

ConditionalTypeDistributions conditional_type_distributions(
    const JointTypeDistribution& joint) {
  const Eigen::MatrixXd& pi = joint.pi;
  const auto m_count = pi.rows();
  const auto n_count = pi.cols();
  if (m_count == 0 || n_count == 0) {
    throw ValidationError("conditional distributions: empty joint matrix");
  }
  ConditionalTypeDistributions out;
  out.eta_a.resize(m_count, n_count);
  out.eta_b.resize(n_count, m_count);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const double row = pi.row(m).sum();
    if (!(row > 0.0)) {
      throw ComputationError("conditional distributions: A type " +
                             std::to_string(m + 1) + " has zero participation mass");
    }
    out.eta_a.row(m) = pi.row(m) / row;
  }
  for (Eigen::Index n = 0; n < n_count; ++n) {
    const double col = pi.col(n).sum();
    if (!(col > 0.0)) {
      throw ComputationError("conditional distributions: B type " +
                             std::to_string(n + 1) + " has zero participation mass");
    }
    out.eta_b.row(n) = pi.col(n).transpose() / col;
  }
  return out;
}

}  // namespace dram
