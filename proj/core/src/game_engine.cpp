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

#include "dram/game_engine.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "dram/errors.hpp"

namespace dram {

namespace {

AggregatorCostModel model_for_type(const CostParams& cost, int n_houses) {
  // Every house of one type shares (a, B), so the fleet mean is a itself.
  AggregatorCostModel model;
  model.n_houses = n_houses;
  model.a_g = cost.a;
  model.b_kwh = cost.b_kwh;
  model.v = 0.25 * cost.a / cost.b_kwh;
  model.u = cost.a * 0.0625 / (cost.b_kwh * cost.b_kwh);
  return model;
}

void validate_seller(const SellerSpec& s, const char* who) {
  const std::string name(who);
  if (s.types.empty()) throw ValidationError(name + ".types: at least one type required");
  if (s.n_houses <= 0) throw ValidationError(name + ".houses: must be positive");
  if (!(s.p_max > 0.0)) throw ValidationError(name + ".p_max: must be positive");
  for (std::size_t i = 0; i < s.types.size(); ++i) {
    const SellerTypeSpec& t = s.types[i];
    const std::string field = name + ".types[" + std::to_string(i + 1) + "]";
    if (!(t.cost.a > 0.0) || !(t.cost.b_kwh > 0.0)) {
      throw ValidationError(field + ".cost: requires a > 0 and B > 0");
    }
    if (t.p0 < 0.0 || t.p0 > s.p_max) {
      throw ValidationError(field + ".p0: must satisfy 0 <= p0 <= p_max");
    }
    if (t.p_g < 0.0 || t.p_g > s.p_max) {
      throw ValidationError(field + ".p_g: must satisfy 0 <= p_g <= p_max");
    }
  }
  if (!(s.wh_kw > 0.0)) throw ValidationError(name + ".wh_kw: must be positive");
  if (!(s.wh_share > 0.0) || s.wh_share > 1.0) {
    throw ValidationError(name + ".wh_share: must lie in (0, 1]");
  }
  if (s.gen_kw < 0.0) throw ValidationError(name + ".gen_kw: must be nonnegative");
}

// Effective per-type market inputs after demand response scaling.
struct ResolvedSeller {
  std::vector<AggregatorCostModel> models;
  std::vector<double> p0;
  std::vector<double> p_g;
  double p_max = 0.0;
};

ResolvedSeller resolve_seller(const SellerSpec& spec, double dr_scale) {
  const double scale = spec.applies_dr ? dr_scale : 1.0;
  ResolvedSeller r;
  r.p_max = spec.p_max;
  for (const SellerTypeSpec& t : spec.types) {
    r.models.push_back(model_for_type(t.cost, spec.n_houses));
    r.p0.push_back(t.p0 * scale);
    r.p_g.push_back(t.p_g * scale);
  }
  return r;
}

double dr_scale_for(const GameConfig& config) {
  if (!config.variant.dr_scheduled) return 1.0;
  const WHSchedule baseline = schedule_welfare(config.tank, config.draws);
  const WHSchedule scheduled =
      schedule_price_sensitive(config.tank, config.draws, config.prices);
  return 1.0 - curtailment_ratio(baseline, scheduled);
}

ConditionalPayoffPair payoffs_for_pair(const GameConfig& config,
                                       const ResolvedSeller& a, const ResolvedSeller& b,
                                       int m, int n) {
  const int s = config.strategies.size();
  ConditionalPayoffPair out;
  out.h_a.resize(s, s);
  out.h_b.resize(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      try {
        const SellerState state_a{make_bid(a.models[m], a.p0[m], a.p_max,
                                           config.strategies.epsilons[i]),
                                  a.models[m], a.p_g[m], a.p_max};
        const SellerState state_b{make_bid(b.models[n], b.p0[n], b.p_max,
                                           config.strategies.epsilons[j]),
                                  b.models[n], b.p_g[n], b.p_max};
        MarketOutcome outcome = clear_two_sellers(state_a.bid, state_b.bid, config.l_c);
        if (config.variant.mode == MarketMode::kStackelberg) {
          outcome = apply_caps(outcome, config.caps);
        }
        out.h_a(i, j) = seller_payoff(state_a, outcome.p_a, outcome.phi_t);
        out.h_b(i, j) = seller_payoff(state_b, outcome.p_b, outcome.phi_t);
      } catch (const std::exception& e) {
        throw ComputationError("conditional payoff (m=" + std::to_string(m + 1) +
                               ", n=" + std::to_string(n + 1) + ", i=" +
                               std::to_string(i + 1) + ", j=" + std::to_string(j + 1) +
                               "): " + e.what());
      }
    }
  }
  return out;
}

int int_pow(int base, int exp) {
  int out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

}  // namespace

std::string GameVariant::label() const {
  std::string s = mode == MarketMode::kStackelberg ? "stackelberg" : "non-coop";
  if (dr_scheduled) s += "-dr";
  return s;
}

std::string StrategySet::label(int index) const {
  const double eps = epsilons.at(index);
  if (std::abs(eps - 2.0) <= 1e-12) return "marginal";
  return eps < 2.0 ? "low" : "high";
}

void validate_strategy_set(const StrategySet& set) {
  if (set.epsilons.empty()) {
    throw ValidationError("strategies: at least one epsilon required");
  }
  double prev = 0.0;
  for (double e : set.epsilons) {
    if (!(e > 0.0)) throw ValidationError("strategies: epsilons must be positive");
    if (!(e > prev)) throw ValidationError("strategies: epsilons must strictly increase");
    prev = e;
  }
}

void validate_config(const GameConfig& config) {
  validate_seller(config.seller_a, "seller_a");
  validate_seller(config.seller_b, "seller_b");
  if (!(config.buyer.cost.a > 0.0) || !(config.buyer.cost.b_kwh > 0.0)) {
    throw ValidationError("buyer.cost: requires a > 0 and B > 0");
  }
  if (config.buyer.n_houses <= 0) throw ValidationError("buyer.houses: must be positive");
  if (!(config.l_c > 0.0)) throw ValidationError("l_c: demand must be positive");
  if (config.buyer.p_g < config.l_c) {
    throw ValidationError("buyer.p_g: must cover l_c so the buyer payoff is defined");
  }
  validate_strategy_set(config.strategies);
  validate_prior(config.psi_a, "psi_a");
  validate_prior(config.psi_b, "psi_b");
  if (config.psi_a.type_count() != config.seller_a.type_count()) {
    throw ValidationError("psi_a: rows must match seller_a's type count");
  }
  if (config.psi_b.type_count() != config.seller_b.type_count()) {
    throw ValidationError("psi_b: rows must match seller_b's type count");
  }
  validate_flags(config.flags);
  validate_caps(config.caps);
  if (config.variant.mode == MarketMode::kStackelberg && !config.caps.any()) {
    throw ValidationError("caps: the stackelberg variant requires at least one cap");
  }
  validate_tank(config.tank);
  validate_profile(config.prices);
  validate_profile(config.draws);
  if (!(config.threshold_fraction > 0.0) || !(config.threshold_fraction < 1.0)) {
    throw ValidationError("threshold_fraction: must lie in (0, 1)");
  }
  if (config.reported_demand_curtail &&
      (*config.reported_demand_curtail < 0.0 || *config.reported_demand_curtail >= 1.0)) {
    throw ValidationError("reported_demand_curtail: must lie in [0, 1)");
  }
}

int kappa_index(std::span<const int> actions, int strategy_count) {
  int index = 0;
  for (int a : actions) {
    if (a < 0 || a >= strategy_count) {
      throw std::domain_error("kappa_index: action outside the strategy set");
    }
    index = index * strategy_count + a;
  }
  return index;
}

std::vector<int> kappa_actions(int index, int strategy_count, int type_count) {
  std::vector<int> actions(type_count, 0);
  for (int f = type_count - 1; f >= 0; --f) {
    actions[f] = index % strategy_count;
    index /= strategy_count;
  }
  return actions;
}

ConditionalPayoffPair conditional_payoffs(const GameConfig& config, int m, int n) {
  validate_config(config);
  if (m < 0 || m >= config.seller_a.type_count() || n < 0 ||
      n >= config.seller_b.type_count()) {
    throw std::domain_error("conditional_payoffs: type index out of range");
  }
  const double scale = dr_scale_for(config);
  return payoffs_for_pair(config, resolve_seller(config.seller_a, scale),
                          resolve_seller(config.seller_b, scale), m, n);
}

ConditionalPayoffTable conditional_payoffs_all(const GameConfig& config) {
  const double scale = dr_scale_for(config);
  const ResolvedSeller a = resolve_seller(config.seller_a, scale);
  const ResolvedSeller b = resolve_seller(config.seller_b, scale);
  ConditionalPayoffTable table(config.seller_a.type_count());
  for (int m = 0; m < config.seller_a.type_count(); ++m) {
    for (int n = 0; n < config.seller_b.type_count(); ++n) {
      table[m].push_back(payoffs_for_pair(config, a, b, m, n));
    }
  }
  return table;
}

ExpectedPayoffs expected_payoffs(const GameConfig& config,
                                 const ConditionalPayoffTable& h,
                                 const ConditionalTypeDistributions& eta) {
  const int s = config.strategies.size();
  const int m_count = config.seller_a.type_count();
  const int n_count = config.seller_b.type_count();
  if (eta.eta_a.rows() != m_count || eta.eta_a.cols() != n_count ||
      eta.eta_b.rows() != n_count || eta.eta_b.cols() != m_count) {
    throw ValidationError("expected_payoffs: eta dimensions disagree with the types");
  }
  if (static_cast<int>(h.size()) != m_count) {
    throw ValidationError("expected_payoffs: payoff table rows disagree with A's types");
  }

  ExpectedPayoffs out;
  const int cols_a = int_pow(s, n_count);
  for (int m = 0; m < m_count; ++m) {
    if (static_cast<int>(h[m].size()) != n_count) {
      throw ValidationError("expected_payoffs: payoff table columns disagree with B's types");
    }
    Eigen::MatrixXd ep = Eigen::MatrixXd::Zero(s, cols_a);
    for (int i = 0; i < s; ++i) {
      for (int kappa = 0; kappa < cols_a; ++kappa) {
        const std::vector<int> actions = kappa_actions(kappa, s, n_count);
        double v = 0.0;
        for (int n = 0; n < n_count; ++n) {
          v += eta.eta_a(m, n) * h[m][n].h_a(i, actions[n]);
        }
        ep(i, kappa) = v;
      }
    }
    out.ep_a.push_back(std::move(ep));
  }
  const int cols_b = int_pow(s, m_count);
  for (int n = 0; n < n_count; ++n) {
    Eigen::MatrixXd ep = Eigen::MatrixXd::Zero(s, cols_b);
    for (int j = 0; j < s; ++j) {
      for (int kappa = 0; kappa < cols_b; ++kappa) {
        const std::vector<int> actions = kappa_actions(kappa, s, m_count);
        double v = 0.0;
        for (int m = 0; m < m_count; ++m) {
          v += eta.eta_b(n, m) * h[m][n].h_b(actions[m], j);
        }
        ep(j, kappa) = v;
      }
    }
    out.ep_b.push_back(std::move(ep));
  }
  return out;
}

DominanceReport find_dominant_row(const Eigen::MatrixXd& ep) {
  const auto rows = ep.rows();
  const auto cols = ep.cols();
  DominanceReport report;
  report.dominates.assign(rows, std::vector<bool>(rows, false));
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < rows; ++j) {
      if (i == j) continue;
      bool weakly = true, strict = false;
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (ep(i, c) < ep(j, c)) {
          weakly = false;
          break;
        }
        if (ep(i, c) > ep(j, c)) strict = true;
      }
      report.dominates[i][j] = weakly && strict;
    }
  }
  for (Eigen::Index i = 0; i < rows; ++i) {
    bool all = true;
    for (Eigen::Index j = 0; j < rows; ++j) {
      if (i != j && !report.dominates[i][j]) {
        all = false;
        break;
      }
    }
    if (all) {
      report.dominant_row = static_cast<int>(i);
      break;
    }
  }
  return report;
}

EquilibriumResult bayesian_nash(const std::vector<Eigen::MatrixXd>& ep_a,
                                const std::vector<Eigen::MatrixXd>& ep_b) {
  if (ep_a.empty() || ep_b.empty()) {
    throw ValidationError("bayesian_nash: missing expected payoff matrices");
  }
  const int s = static_cast<int>(ep_a.front().rows());
  const int m_count = static_cast<int>(ep_a.size());
  const int n_count = static_cast<int>(ep_b.size());
  for (const auto& ep : ep_a) {
    if (ep.rows() != s || ep.cols() != int_pow(s, n_count)) {
      throw ValidationError("bayesian_nash: EP_A shape mismatch");
    }
  }
  for (const auto& ep : ep_b) {
    if (ep.rows() != s || ep.cols() != int_pow(s, m_count)) {
      throw ValidationError("bayesian_nash: EP_B shape mismatch");
    }
  }

  EquilibriumResult result;
  for (const auto& ep : ep_a) result.dominance_a.push_back(find_dominant_row(ep));
  for (const auto& ep : ep_b) result.dominance_b.push_back(find_dominant_row(ep));

  // Interim best response: each type of each player maximizes its own EP
  // column given the opponent's type-contingent strategy.
  const int profiles_a = int_pow(s, m_count);
  const int profiles_b = int_pow(s, n_count);
  for (int pa = 0; pa < profiles_a; ++pa) {
    const std::vector<int> sa = kappa_actions(pa, s, m_count);
    for (int pb = 0; pb < profiles_b; ++pb) {
      const std::vector<int> sb = kappa_actions(pb, s, n_count);
      bool ok = true;
      for (int m = 0; m < m_count && ok; ++m) {
        const double chosen = ep_a[m](sa[m], pb);
        for (int i = 0; i < s; ++i) {
          if (ep_a[m](i, pb) > chosen) {
            ok = false;
            break;
          }
        }
      }
      for (int n = 0; n < n_count && ok; ++n) {
        const double chosen = ep_b[n](sb[n], pa);
        for (int j = 0; j < s; ++j) {
          if (ep_b[n](j, pa) > chosen) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        result.equilibria.emplace_back(TypeContingentStrategy{sa},
                                       TypeContingentStrategy{sb});
      }
    }
  }
  result.pure_found = !result.equilibria.empty();
  result.tie = result.equilibria.size() > 1;
  return result;
}

double demand_arithmetic(int houses, double wh_kw, double wh_share, double gen_kw,
                         double curtail) {
  if (!(wh_share > 0.0) || wh_share > 1.0) {
    throw std::domain_error("demand_arithmetic: wh_share must lie in (0, 1]");
  }
  if (curtail < 0.0 || curtail >= 1.0) {
    throw std::domain_error("demand_arithmetic: curtail must lie in [0, 1)");
  }
  return (1.0 - curtail) * houses * wh_kw / wh_share + gen_kw;
}

GameReport play_game(const GameConfig& config) {
  validate_config(config);
  GameReport report;
  report.variant = config.variant;
  report.strategies = config.strategies;

  // Step 1: scheduler statistics and scenario probabilities.
  try {
    report.baseline_schedule = schedule_welfare(config.tank, config.draws);
  } catch (const InfeasibleScheduleError& e) {
    throw ValidationError(std::string("scheduling infeasible for this config: ") +
                          e.what());
  }
  report.p_exp = price_expensive_prob(config.prices, config.threshold_fraction);
  if (config.variant.dr_scheduled) {
    try {
      report.dr_schedule =
          schedule_price_sensitive(config.tank, config.draws, config.prices);
    } catch (const InfeasibleScheduleError& e) {
      throw ValidationError(std::string("scheduling infeasible for this config: ") +
                            e.what());
    }
    report.stats =
        on_off_stats(*report.dr_schedule, config.prices, config.threshold_fraction);
    report.scenario = scenario_probs_conditional(report.p_exp, report.stats);
    report.curtailment = curtailment_ratio(report.baseline_schedule, *report.dr_schedule);
    report.dr_scale_applied = 1.0 - *report.curtailment;
  } else {
    report.stats =
        on_off_stats(report.baseline_schedule, config.prices, config.threshold_fraction);
    report.scenario = scenario_probs_independent(report.p_exp, report.stats);
  }

  // Step 2: joint and conditional type distributions.
  report.joint = joint_type_distribution(report.scenario, config.flags, config.psi_a,
                                         config.psi_b);
  report.eta = conditional_type_distributions(report.joint);

  // Step 3: strategy sets as bid curves per type.
  const ResolvedSeller a = resolve_seller(config.seller_a, report.dr_scale_applied);
  const ResolvedSeller b = resolve_seller(config.seller_b, report.dr_scale_applied);
  for (int m = 0; m < config.seller_a.type_count(); ++m) {
    std::vector<BidCurve> bids;
    for (double eps : config.strategies.epsilons) {
      bids.push_back(make_bid(a.models[m], a.p0[m], a.p_max, eps));
    }
    report.bids_a.push_back(std::move(bids));
  }
  for (int n = 0; n < config.seller_b.type_count(); ++n) {
    std::vector<BidCurve> bids;
    for (double eps : config.strategies.epsilons) {
      bids.push_back(make_bid(b.models[n], b.p0[n], b.p_max, eps));
    }
    report.bids_b.push_back(std::move(bids));
  }

  // Step 4: conditional payoffs.
  for (int m = 0; m < config.seller_a.type_count(); ++m) {
    std::vector<ConditionalPayoffPair> row;
    for (int n = 0; n < config.seller_b.type_count(); ++n) {
      row.push_back(payoffs_for_pair(config, a, b, m, n));
    }
    report.h.push_back(std::move(row));
  }

  // Step 5: expected payoffs in the kappa layout.
  report.ep = expected_payoffs(config, report.h, report.eta);

  // Step 6: equilibrium and the outcomes it realizes.
  report.equilibrium = bayesian_nash(report.ep.ep_a, report.ep.ep_b);
  if (report.equilibrium.pure_found) {
    const auto& [sa, sb] = report.equilibrium.equilibria.front();
    const AggregatorCostModel buyer_model =
        model_for_type(config.buyer.cost, config.buyer.n_houses);
    for (int m = 0; m < config.seller_a.type_count(); ++m) {
      for (int n = 0; n < config.seller_b.type_count(); ++n) {
        EquilibriumOutcome eq;
        eq.m = m;
        eq.n = n;
        const BidCurve bid_a = report.bids_a[m][sa.action[m]];
        const BidCurve bid_b = report.bids_b[n][sb.action[n]];
        eq.outcome = clear_two_sellers(bid_a, bid_b, config.l_c);
        if (config.variant.mode == MarketMode::kStackelberg) {
          eq.outcome = apply_caps(eq.outcome, config.caps);
        }
        const double delivered = eq.outcome.p_a + eq.outcome.p_b;
        eq.payoff_buyer =
            buyer_payoff(buyer_model, config.buyer.p_g, delivered, eq.outcome.phi_t);
        const double raw_a =
            seller_payoff(a.models[m], a.p_g[m], eq.outcome.p_a, eq.outcome.phi_t);
        const double raw_b =
            seller_payoff(b.models[n], b.p_g[n], eq.outcome.p_b, eq.outcome.phi_t);
        eq.traded_a = validate_bargain({raw_a, eq.payoff_buyer});
        eq.traded_b = validate_bargain({raw_b, eq.payoff_buyer});
        eq.payoff_a = eq.traded_a ? raw_a : 0.0;
        eq.payoff_b = eq.traded_b ? raw_b : 0.0;
        report.eq_outcomes.push_back(eq);
      }
    }
  }

  // Report-only demand figures.
  report.demand_a = demand_arithmetic(config.seller_a.n_houses, config.seller_a.wh_kw,
                                      config.seller_a.wh_share, config.seller_a.gen_kw, 0.0);
  report.demand_b = demand_arithmetic(config.seller_b.n_houses, config.seller_b.wh_kw,
                                      config.seller_b.wh_share, config.seller_b.gen_kw, 0.0);
  report.demand_c = demand_arithmetic(config.buyer.n_houses, config.buyer.wh_kw,
                                      config.buyer.wh_share, config.buyer.gen_kw, 0.0);
  if (config.variant.dr_scheduled && config.seller_a.applies_dr) {
    const double curtail = config.reported_demand_curtail.value_or(*report.curtailment);
    report.demand_a_dr =
        demand_arithmetic(config.seller_a.n_houses, config.seller_a.wh_kw,
                          config.seller_a.wh_share, config.seller_a.gen_kw, curtail);
  }
  return report;
}

}  // namespace dram
