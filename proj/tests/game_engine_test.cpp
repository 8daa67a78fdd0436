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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dram/case_study.hpp"
#include "dram/errors.hpp"
#include "dram/game_engine.hpp"
#include "golden_fixtures.hpp"
#include "test_support.hpp"

using namespace dram;

namespace {

// Two identical sellers with flat priors; strategy set configurable.
GameConfig toy_config(std::vector<double> epsilons) {
  GameConfig c = case_study_config();
  c.variant = {MarketMode::kNonCooperative, false};
  c.seller_a.types = {{{4.0, 25.0}, 0.0, 0.0}};
  c.seller_a.applies_dr = false;
  c.seller_b.types = {{{4.0, 25.0}, 0.0, 0.0}};
  c.l_c = 100.0;
  c.buyer.p_g = 1950.0;
  c.strategies.epsilons = std::move(epsilons);
  for (int f = 0; f < kScenarioCount; ++f) {
    c.psi_a.per_scenario[f] = {1.0};
    c.psi_b.per_scenario[f] = {1.0};
  }
  c.caps = RegulatoryCaps{};
  return c;
}

}  // namespace

TEST_CASE("kappa layout matches the printed column narrative") {
  // with 3 strategies and 2 opponent types: column 7 is (3,1), column 9 (3,3)
  CHECK(kappa_index(std::vector<int>{2, 0}, 3) == 6);
  CHECK(kappa_index(std::vector<int>{2, 2}, 3) == 8);
  CHECK(kappa_index(std::vector<int>{0, 0}, 3) == 0);
  CHECK(kappa_actions(6, 3, 2) == std::vector<int>{2, 0});
  // columns 1..9 enumerate (1,1),(1,2),(1,3),(2,1),...,(3,3)
  int expected = 0;
  for (int j1 = 0; j1 < 3; ++j1) {
    for (int j2 = 0; j2 < 3; ++j2) {
      CHECK(kappa_index(std::vector<int>{j1, j2}, 3) == expected++);
    }
  }
}

TEST_CASE("conditional payoffs: hand-solved symmetric toy") {
  const GameConfig config = toy_config({2.0});
  const ConditionalPayoffPair h = conditional_payoffs(config, 0, 0);
  // identical marginal-cost bids split 100 kW at phi = 0.08; each nets 1.0
  CHECK(h.h_a(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(h.h_b(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("conditional payoffs: symmetric sellers tie on the diagonal") {
  const GameConfig config = toy_config({1.6, 2.0, 2.4});
  const ConditionalPayoffPair h = conditional_payoffs(config, 0, 0);
  for (int i = 0; i < 3; ++i) {
    CHECK(h.h_a(i, i) == doctest::Approx(h.h_b(i, i)).epsilon(1e-12));
  }
}

TEST_CASE("a price cap below every clearing price weakly lowers all entries") {
  GameConfig config = toy_config({1.6, 2.0, 2.4});
  const ConditionalPayoffPair open_market = conditional_payoffs(config, 0, 0);
  config.variant.mode = MarketMode::kStackelberg;
  config.caps.phi_max = 0.05;  // below the lowest uncapped clearing price
  const ConditionalPayoffPair capped = conditional_payoffs(config, 0, 0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(capped.h_a(i, j) <= open_market.h_a(i, j) + 1e-12);
      CHECK(capped.h_b(i, j) <= open_market.h_b(i, j) + 1e-12);
    }
  }
}

TEST_CASE("expected payoffs with a single opponent type reduce to H") {
  const GameConfig config = toy_config({1.6, 2.0, 2.4});
  const ConditionalPayoffTable h = conditional_payoffs_all(config);
  ConditionalTypeDistributions eta;
  eta.eta_a = Eigen::MatrixXd::Ones(1, 1);
  eta.eta_b = Eigen::MatrixXd::Ones(1, 1);
  const ExpectedPayoffs ep = expected_payoffs(config, h, eta);
  CHECK(ep.ep_a[0].isApprox(h[0][0].h_a, 1e-12));
  // EP_B rows are B's own strategies, so the lone H_B comes back transposed
  CHECK(ep.ep_b[0].isApprox(h[0][0].h_b.transpose(), 1e-12));
}

TEST_CASE("expected payoffs mix constant matrices by the conditional weights") {
  GameConfig config = toy_config({1.6, 2.0, 2.4});
  // two B types so EP_A is 3x9
  config.seller_b.types = {{{4.2, 24.0}, 0.0, 0.0}, {{4.5, 23.5}, 0.0, 0.0}};
  for (int f = 0; f < kScenarioCount; ++f) config.psi_b.per_scenario[f] = {0.5, 0.5};
  ConditionalPayoffTable h(1);
  ConditionalPayoffPair ones{Eigen::MatrixXd::Constant(3, 3, 1.0),
                             Eigen::MatrixXd::Constant(3, 3, 1.0)};
  ConditionalPayoffPair twos{Eigen::MatrixXd::Constant(3, 3, 2.0),
                             Eigen::MatrixXd::Constant(3, 3, 2.0)};
  h[0] = {ones, twos};
  ConditionalTypeDistributions eta;
  eta.eta_a.resize(1, 2);
  eta.eta_a << 0.21, 0.79;
  eta.eta_b = Eigen::MatrixXd::Constant(2, 1, 1.0);
  const ExpectedPayoffs ep = expected_payoffs(config, h, eta);
  CHECK(ep.ep_a[0].isApproxToConstant(0.21 * 1.0 + 0.79 * 2.0, 1e-12));
}

TEST_CASE("golden fixtures: dominance structure") {
  const auto& all = golden::fixtures();
  // open competition: A's high bid dominates for both types
  CHECK(find_dominant_row(all[0].ep_a1).dominant_row == 2);
  CHECK(find_dominant_row(all[0].ep_a2).dominant_row == 2);
  CHECK(find_dominant_row(all[1].ep_a1).dominant_row == 2);
  CHECK(find_dominant_row(all[1].ep_a2).dominant_row == 2);
  // B type 1 prefers high, B type 2 low, in both open variants
  CHECK(find_dominant_row(all[0].ep_b1).dominant_row == 2);
  CHECK(find_dominant_row(all[0].ep_b2).dominant_row == 0);
  // independent scan oracle for the B2 claim: row 1 beats rows 2 and 3 in
  // every single column of the fixture
  for (int c = 0; c < 9; ++c) {
    CHECK(all[0].ep_b2(0, c) > all[0].ep_b2(1, c));
    CHECK(all[0].ep_b2(1, c) > all[0].ep_b2(2, c));
  }
  // capped variants: the cap flattens the high rows and dominance is lost
  CHECK_FALSE(find_dominant_row(all[2].ep_a1).dominant_row.has_value());
  CHECK_FALSE(find_dominant_row(all[2].ep_a2).dominant_row.has_value());
}

TEST_CASE("no dominant row in an identity-like matrix") {
  CHECK_FALSE(find_dominant_row(Eigen::MatrixXd::Identity(3, 3)).dominant_row.has_value());
}

TEST_CASE("golden fixtures: open-variant equilibrium is high/high vs high/low") {
  for (int v = 0; v < 2; ++v) {
    const auto& fixture = golden::fixtures()[v];
    const EquilibriumResult result = bayesian_nash(fixture.ep_a(), fixture.ep_b());
    REQUIRE(result.pure_found);
    CHECK(result.equilibria.size() == 1);
    const auto& [sa, sb] = result.equilibria.front();
    CHECK(sa.action == std::vector<int>{2, 2});  // columns 9 of EP_B
    CHECK(sb.action == std::vector<int>{2, 0});  // column 7 of EP_A
    CHECK(dram::testing::is_pure_bne(fixture.ep_a(), fixture.ep_b(), sa, sb));
  }
}

TEST_CASE("golden fixtures: capped variants shift the equilibrium") {
  // The printed capped matrices do not best-respond at (high,high)/(high,low):
  // A's type 2 strictly prefers its marginal bid against column 7.
  for (int v = 2; v < 4; ++v) {
    const auto& fixture = golden::fixtures()[v];
    CHECK(fixture.ep_a2(1, 6) > fixture.ep_a2(2, 6));
    const EquilibriumResult result = bayesian_nash(fixture.ep_a(), fixture.ep_b());
    REQUIRE(result.pure_found);
    const auto& [sa, sb] = result.equilibria.front();
    CHECK(sa.action == std::vector<int>{2, 1});
    CHECK(sb.action == std::vector<int>{1, 0});
    CHECK(dram::testing::is_pure_bne(fixture.ep_a(), fixture.ep_b(), sa, sb));
  }
}

TEST_CASE("constant payoffs make every pair an equilibrium") {
  std::vector<Eigen::MatrixXd> ep_a{Eigen::MatrixXd::Constant(2, 2, 3.0)};
  std::vector<Eigen::MatrixXd> ep_b{Eigen::MatrixXd::Constant(2, 2, 4.0)};
  const EquilibriumResult result = bayesian_nash(ep_a, ep_b);
  CHECK(result.pure_found);
  CHECK(result.tie);
  CHECK(result.equilibria.size() == 4);
  CHECK(result.equilibria.front().first.action == std::vector<int>{0});
  CHECK(result.equilibria.front().second.action == std::vector<int>{0});
}

TEST_CASE("matching pennies has no pure equilibrium") {
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 1, -1, -1, 1;
  b << -1, 1, 1, -1;
  const EquilibriumResult result = bayesian_nash({a}, {b});
  CHECK_FALSE(result.pure_found);
  CHECK(result.equilibria.empty());
}

TEST_CASE("random games: reported equilibria survive the deviation check") {
  std::mt19937 rng(1234);
  int with_equilibrium = 0, without = 0;
  for (int instance = 0; instance < 200; ++instance) {
    const GameConfig config = dram::testing::random_game_config(rng, true);
    const ConditionalPayoffTable h = conditional_payoffs_all(config);
    ScenarioProbabilities sp;
    sp.p = {0.4, 0.1, 0.3, 0.2};
    const JointTypeDistribution joint =
        joint_type_distribution(sp, config.flags, config.psi_a, config.psi_b);
    const ConditionalTypeDistributions eta = conditional_type_distributions(joint);
    const ExpectedPayoffs ep = expected_payoffs(config, h, eta);
    const EquilibriumResult result = bayesian_nash(ep.ep_a, ep.ep_b);

    // definition-level verification, independent of the search
    for (const auto& [sa, sb] : result.equilibria) {
      CHECK(dram::testing::is_pure_bne(ep.ep_a, ep.ep_b, sa, sb));
    }
    // and the converse: the search missed nothing
    const int s = config.strategies.size();
    std::size_t found = 0;
    for (const auto& sa : dram::testing::all_profiles(s, config.seller_a.type_count())) {
      for (const auto& sb : dram::testing::all_profiles(s, config.seller_b.type_count())) {
        found += dram::testing::is_pure_bne(ep.ep_a, ep.ep_b, sa, sb);
      }
    }
    CHECK(found == result.equilibria.size());
    result.pure_found ? ++with_equilibrium : ++without;

    // dominant strategies survive: substituting the dominant action into any
    // equilibrium keeps it one, and under strict dominance (no column ties)
    // every equilibrium must already use it
    for (int m = 0; m < config.seller_a.type_count(); ++m) {
      if (!result.dominance_a[m].dominant_row) continue;
      const int r = *result.dominance_a[m].dominant_row;
      bool strict = true;
      for (int i = 0; i < s && strict; ++i) {
        if (i == r) continue;
        for (int col = 0; col < ep.ep_a[m].cols(); ++col) {
          if (ep.ep_a[m](r, col) <= ep.ep_a[m](i, col)) {
            strict = false;
            break;
          }
        }
      }
      for (const auto& [sa, sb] : result.equilibria) {
        if (strict) {
          CHECK(sa.action[m] == r);
        } else {
          TypeContingentStrategy substituted = sa;
          substituted.action[m] = r;
          CHECK(dram::testing::is_pure_bne(ep.ep_a, ep.ep_b, substituted, sb));
        }
      }
    }
  }
  CHECK(with_equilibrium > 150);  // pure equilibria are the norm here
}

TEST_CASE("scaling every epsilon scales every bid slope") {
  GameConfig config = case_study_config();
  const GameReport base = play_game(config);
  for (double& eps : config.strategies.epsilons) eps *= 3.0;
  const GameReport scaled = play_game(config);
  for (std::size_t t = 0; t < base.bids_a.size(); ++t) {
    for (std::size_t i = 0; i < base.bids_a[t].size(); ++i) {
      CHECK(scaled.bids_a[t][i].slope_m ==
            doctest::Approx(3.0 * base.bids_a[t][i].slope_m).epsilon(1e-12));
    }
  }
}

TEST_CASE("play_game on the bundled study reproduces the published pipeline") {
  const GameConfig& config = case_study_config();
  const GameReport report = play_game(config);

  CHECK(report.p_exp == doctest::Approx(0.7083).epsilon(1e-3));
  CHECK(report.stats.p_on == doctest::Approx(0.1875).epsilon(1e-12));
  CHECK(report.scenario.p[0] == doctest::Approx(0.5755).epsilon(1e-3));
  CHECK(report.joint.pi(0, 0) == doctest::Approx(0.0193).epsilon(3e-3));
  CHECK(report.eta.eta_a(0, 0) == doctest::Approx(0.21).epsilon(0.01));
  CHECK(report.eta.eta_b(0, 0) == doctest::Approx(0.16).epsilon(0.03));

  // slopes: strategy set times the type's quadratic coefficient
  CHECK(report.bids_a[0][0].slope_m == doctest::Approx(0.00064).epsilon(1e-5));
  CHECK(report.bids_a[1][2].slope_m == doctest::Approx(0.00117).epsilon(2e-3));
  CHECK(report.bids_b[0][1].slope_m == doctest::Approx(0.00091).epsilon(2e-3));

  REQUIRE(report.equilibrium.pure_found);
  const auto& [sa, sb] = report.equilibrium.equilibria.front();
  CHECK(sa.action == std::vector<int>{2, 2});
  CHECK(sb.action == std::vector<int>{2, 0});

  // every realized equilibrium trade passes the bargain check
  for (const EquilibriumOutcome& eq : report.eq_outcomes) {
    CHECK(eq.traded_a);
    CHECK(eq.traded_b);
    CHECK(eq.payoff_a > 0.0);
    CHECK(eq.payoff_b > 0.0);
    CHECK(eq.payoff_buyer > 0.0);
  }

  CHECK(report.demand_a == doctest::Approx(2160.0).epsilon(1e-12));
  CHECK(report.demand_b == doctest::Approx(2394.0).epsilon(1e-12));
  CHECK(report.demand_c == doctest::Approx(2478.0).epsilon(1e-12));
}

TEST_CASE("play_game is deterministic") {
  const GameConfig& config = case_study_config();
  const GameReport a = play_game(config);
  const GameReport b = play_game(config);
  CHECK(a.joint.pi == b.joint.pi);
  for (std::size_t m = 0; m < a.ep.ep_a.size(); ++m) {
    CHECK(a.ep.ep_a[m] == b.ep.ep_a[m]);
  }
  CHECK(a.equilibrium.equilibria == b.equilibrium.equilibria);
  for (std::size_t i = 0; i < a.eq_outcomes.size(); ++i) {
    CHECK(a.eq_outcomes[i].payoff_a == b.eq_outcomes[i].payoff_a);
  }
}

TEST_CASE("DR scheduling strictly raises A's equilibrium expected payoff") {
  GameConfig config = case_study_config();
  const GameReport base = play_game(config);
  config.variant.dr_scheduled = true;
  const GameReport dr = play_game(config);
  REQUIRE(base.equilibrium.pure_found);
  REQUIRE(dr.equilibrium.pure_found);
  CHECK(dr.scenario.p[0] == doctest::Approx(0.6041).epsilon(1e-3));
  REQUIRE(dr.demand_a_dr.has_value());
  CHECK(*dr.demand_a_dr == doctest::Approx(1992.0).epsilon(1e-12));
  for (std::size_t m = 0; m < base.ep.ep_a.size(); ++m) {
    const auto& [sa0, sb0] = base.equilibrium.equilibria.front();
    const auto& [sa1, sb1] = dr.equilibrium.equilibria.front();
    const double before = base.ep.ep_a[m](sa0.action[m], kappa_index(sb0.action, 3));
    const double after = dr.ep.ep_a[m](sa1.action[m], kappa_index(sb1.action, 3));
    CHECK(after > before);
  }
}

TEST_CASE("a binding cap strictly lowers equilibrium expected payoffs") {
  GameConfig config = case_study_config();
  const GameReport open_market = play_game(config);
  config.variant.mode = MarketMode::kStackelberg;
  const GameReport capped = play_game(config);
  REQUIRE(capped.equilibrium.pure_found);
  // same strategy profile here, so the comparison is entrywise meaningful
  CHECK(open_market.equilibrium.equilibria.front() ==
        capped.equilibrium.equilibria.front());
  for (std::size_t m = 0; m < open_market.ep.ep_a.size(); ++m) {
    for (int i = 0; i < 3; ++i) {
      for (int c = 0; c < 9; ++c) {
        CHECK(capped.ep.ep_a[m](i, c) <= open_market.ep.ep_a[m](i, c) + 1e-12);
      }
    }
  }
  const auto& [sa, sb] = capped.equilibrium.equilibria.front();
  for (std::size_t m = 0; m < capped.ep.ep_a.size(); ++m) {
    CHECK(capped.ep.ep_a[m](sa.action[m], kappa_index(sb.action, 3)) <
          open_market.ep.ep_a[m](sa.action[m], kappa_index(sb.action, 3)));
  }
}

TEST_CASE("rejected bargains are recorded as the no-trade point") {
  GameConfig config = toy_config({1.6, 2.0, 2.4});
  config.variant.mode = MarketMode::kStackelberg;
  config.caps.phi_max = 0.01;  // below any average incremental cost
  const GameReport report = play_game(config);
  REQUIRE(report.equilibrium.pure_found);
  for (const EquilibriumOutcome& eq : report.eq_outcomes) {
    CHECK_FALSE(eq.traded_a);
    CHECK_FALSE(eq.traded_b);
    CHECK(eq.payoff_a == 0.0);
    CHECK(eq.payoff_b == 0.0);
  }
}

TEST_CASE("config validation names the offending field") {
  GameConfig config = case_study_config();
  config.variant.mode = MarketMode::kStackelberg;
  config.caps = RegulatoryCaps{};
  CHECK_THROWS_WITH_AS(validate_config(config),
                       "caps: the stackelberg variant requires at least one cap",
                       ValidationError);

  GameConfig bad_psi = case_study_config();
  bad_psi.psi_a.per_scenario[0] = {0.5, 0.4};
  CHECK_THROWS_AS(validate_config(bad_psi), ValidationError);

  GameConfig bad_lc = case_study_config();
  bad_lc.l_c = -5.0;
  CHECK_THROWS_AS(validate_config(bad_lc), ValidationError);
}
