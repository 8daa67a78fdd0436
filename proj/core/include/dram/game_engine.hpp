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

#ifndef DRAM_GAME_ENGINE_HPP_
#define DRAM_GAME_ENGINE_HPP_

#include <Eigen/Core>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dram/bayesian_types.hpp"
#include "dram/cost_model.hpp"
#include "dram/market_clearing.hpp"
#include "dram/wh_scheduler.hpp"

namespace dram {

enum class MarketMode { kNonCooperative, kStackelberg };

struct GameVariant {
  MarketMode mode = MarketMode::kNonCooperative;
  bool dr_scheduled = false;

  // "non-coop" / "non-coop-dr" / "stackelberg" / "stackelberg-dr"
  std::string label() const;

  bool operator==(const GameVariant&) const = default;
};

// The ordered bid-slope multipliers. epsilon = 2 bids exactly at marginal
// cost; below/above bid under/over it.
struct StrategySet {
  std::vector<double> epsilons{1.6, 2.0, 2.4};

  int size() const { return static_cast<int>(epsilons.size()); }
  // "low" / "marginal" / "high" relative to epsilon = 2.
  std::string label(int index) const;

  bool operator==(const StrategySet&) const = default;
};

void validate_strategy_set(const StrategySet& set);

// One private type of a seller: its cost coefficients plus the storage
// posture that goes with the type (bid anchor p0 and the pre-trade local
// feed p_g).
struct SellerTypeSpec {
  CostParams cost;
  double p0 = 0.0;
  double p_g = 0.0;

  bool operator==(const SellerTypeSpec&) const = default;
};

struct SellerSpec {
  std::string name;
  int n_houses = 0;
  std::vector<SellerTypeSpec> types;
  double p_max = 0.0;
  bool applies_dr = false;  // whether DR scheduling curtails this seller
  double wh_kw = 4.5;
  double wh_share = 0.6;
  double gen_kw = 0.0;

  int type_count() const { return static_cast<int>(types.size()); }

  bool operator==(const SellerSpec&) const = default;
};

struct BuyerSpec {
  std::string name;
  CostParams cost;
  int n_houses = 0;
  double p_g = 0.0;  // local load the buyer's storage would feed, kW
  double wh_kw = 4.5;
  double wh_share = 0.6;
  double gen_kw = 0.0;

  bool operator==(const BuyerSpec&) const = default;
};

struct GameConfig {
  GameVariant variant;
  SellerSpec seller_a;
  SellerSpec seller_b;
  BuyerSpec buyer;
  double l_c = 0.0;  // power the buyer purchases, kW
  StrategySet strategies;
  TypePrior psi_a;
  TypePrior psi_b;
  ParticipationFlags flags;
  RegulatoryCaps caps;
  TankModel tank;
  PriceProfile prices;
  WaterDrawProfile draws;
  double threshold_fraction = 0.5;
  // Published rounded curtailment used for the demand report line; the
  // market pipeline always uses the ratio computed from the schedules.
  std::optional<double> reported_demand_curtail;

  bool operator==(const GameConfig&) const = default;
};

// Throws ValidationError naming the offending field.
void validate_config(const GameConfig& config);

// Action per own type (0-based strategy indices).
struct TypeContingentStrategy {
  std::vector<int> action;

  bool operator==(const TypeContingentStrategy&) const = default;
  auto operator<=>(const TypeContingentStrategy&) const = default;
};

// Column index of an opponent type-contingent strategy in the kappa layout:
// actions listed per opponent type, first type most significant.
int kappa_index(std::span<const int> actions, int strategy_count);
std::vector<int> kappa_actions(int index, int strategy_count, int type_count);

// Payoffs of both sellers for one (A-type, B-type) pair; rows index A's
// strategy, columns B's.
struct ConditionalPayoffPair {
  Eigen::MatrixXd h_a;
  Eigen::MatrixXd h_b;
};

// h[m][n] for every type pair.
using ConditionalPayoffTable = std::vector<std::vector<ConditionalPayoffPair>>;

// Expected payoff matrices in the kappa-column layout: for each own type of
// A an S x S^N matrix, for each own type of B an S x S^M matrix.
struct ExpectedPayoffs {
  std::vector<Eigen::MatrixXd> ep_a;
  std::vector<Eigen::MatrixXd> ep_b;
};

struct DominanceReport {
  std::optional<int> dominant_row;
  // dominates[i][j]: row i weakly dominates row j with strictness somewhere.
  std::vector<std::vector<bool>> dominates;
};

// Market result realized at the primary equilibrium for one type pair.
// Each seller's trade must pass the bargain check against the buyer; a
// rejected trade is recorded as the (0, 0) no-trade point.
struct EquilibriumOutcome {
  int m = 0;
  int n = 0;
  MarketOutcome outcome;
  double payoff_a = 0.0;      // recorded seller payoffs (zeroed on no-trade)
  double payoff_b = 0.0;
  double payoff_buyer = 0.0;  // buyer payoff on the delivered total
  bool traded_a = false;
  bool traded_b = false;
};

struct EquilibriumResult {
  bool pure_found = false;
  bool tie = false;  // more than one pure equilibrium
  // All pure equilibria in lexicographic order; front() is the primary.
  std::vector<std::pair<TypeContingentStrategy, TypeContingentStrategy>> equilibria;
  std::vector<DominanceReport> dominance_a;  // per A type
  std::vector<DominanceReport> dominance_b;  // per B type
};

// Step 4: bids for every strategy pair, cleared, capped when the variant is
// Stackelberg, and turned into both sellers' transaction payoffs.
ConditionalPayoffPair conditional_payoffs(const GameConfig& config, int m, int n);
ConditionalPayoffTable conditional_payoffs_all(const GameConfig& config);

// Step 5: EP_A^m[i][kappa] = sum_n eta_A^m(n) * h_A^{(m,n)}[i][kappa_n].
ExpectedPayoffs expected_payoffs(const GameConfig& config,
                                 const ConditionalPayoffTable& h,
                                 const ConditionalTypeDistributions& eta);

// A row never worse anywhere and strictly better somewhere against every
// other row; absence is a normal result.
DominanceReport find_dominant_row(const Eigen::MatrixXd& ep);

// Step 6: exhaustive enumeration of type-contingent strategy pairs; a pair
// is kept when every type of both players best-responds. An empty result is
// reported, not thrown.
EquilibriumResult bayesian_nash(const std::vector<Eigen::MatrixXd>& ep_a,
                                const std::vector<Eigen::MatrixXd>& ep_b);

// Everything the pipeline produced, in deterministic order.
struct GameReport {
  GameVariant variant;
  StrategySet strategies;
  double p_exp = 0.0;
  OnOffStats stats;
  WHSchedule baseline_schedule;
  std::optional<WHSchedule> dr_schedule;
  std::optional<double> curtailment;  // from the two schedules, dr variants
  double dr_scale_applied = 1.0;
  ScenarioProbabilities scenario;
  JointTypeDistribution joint;
  ConditionalTypeDistributions eta;
  std::vector<std::vector<BidCurve>> bids_a;  // [type][strategy]
  std::vector<std::vector<BidCurve>> bids_b;
  ConditionalPayoffTable h;
  ExpectedPayoffs ep;
  EquilibriumResult equilibrium;
  std::vector<EquilibriumOutcome> eq_outcomes;  // primary equilibrium, per (m,n)
  double demand_a = 0.0;  // report-only demand figures, kW
  double demand_b = 0.0;
  double demand_c = 0.0;
  std::optional<double> demand_a_dr;
};

// Runs the six-step procedure: scheduler statistics, joint/conditional type
// distributions, strategy sets, conditional payoffs, expected payoffs,
// equilibrium.
GameReport play_game(const GameConfig& config);

// (1 - curtail) * houses * wh_kw / wh_share + gen_kw. Demand figures are
// report-only; they feed no market computation.
double demand_arithmetic(int houses, double wh_kw, double wh_share, double gen_kw,
                         double curtail);

}  // namespace dram

#endif  // DRAM_GAME_ENGINE_HPP_
