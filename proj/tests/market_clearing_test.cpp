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

#include <cmath>
#include <random>

#include "dram/errors.hpp"
#include "dram/market_clearing.hpp"

using namespace dram;

namespace {

BidCurve bid(double lambda0, double slope) { return BidCurve{lambda0, slope, 0.0, 1e6}; }

// Grid search for the clearing point: the quantity split minimizing the bid
// price gap, ties toward lower |gap| first found. Used as the corner oracle.
MarketOutcome grid_clear(const BidCurve& a, const BidCurve& b, double l_c, double step) {
  double best_gap = std::numeric_limits<double>::infinity();
  double best_pa = 0.0;
  for (double pa = 0.0; pa <= l_c + step / 2; pa += step) {
    const double clamped = std::min(pa, l_c);
    const double gap = std::abs(a.price_at(clamped) - b.price_at(l_c - clamped));
    if (gap < best_gap) {
      best_gap = gap;
      best_pa = clamped;
    }
  }
  MarketOutcome out;
  out.p_a = best_pa;
  out.p_b = l_c - best_pa;
  out.phi_t = best_pa > 0.0 ? a.price_at(best_pa) : b.price_at(l_c);
  return out;
}

}  // namespace

TEST_CASE("symmetric clearing splits the demand") {
  const MarketOutcome out = clear_two_sellers(bid(0.1, 0.001), bid(0.1, 0.001), 100.0);
  CHECK(out.p_a == doctest::Approx(50.0));
  CHECK(out.p_b == doctest::Approx(50.0));
  CHECK(out.phi_t == doctest::Approx(0.15));
}

TEST_CASE("boundary solution lands on the cheaper seller") {
  const MarketOutcome out = clear_two_sellers(bid(0.1, 0.001), bid(0.2, 0.001), 100.0);
  CHECK(out.p_a == doctest::Approx(100.0));
  CHECK(out.p_b == doctest::Approx(0.0));
  CHECK(out.phi_t == doctest::Approx(0.2));
}

TEST_CASE("interior clearing solves the linear system") {
  const MarketOutcome out = clear_two_sellers(bid(0.1, 0.002), bid(0.1, 0.001), 90.0);
  CHECK(out.p_a == doctest::Approx(30.0));
  CHECK(out.p_b == doctest::Approx(60.0));
  CHECK(out.phi_t == doctest::Approx(0.16));
}

TEST_CASE("degenerate slopes raise a singular-system error") {
  CHECK_THROWS_AS(clear_two_sellers(bid(0.1, 0.0), bid(0.2, 0.0), 100.0),
                  SingularSystemError);
  CHECK_THROWS_AS(clear_two_sellers(bid(0.1, 0.001), bid(0.2, 0.001), 0.0),
                  std::domain_error);
}

TEST_CASE("interior clearing satisfies both equations on random instances") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> l0(0.02, 0.4);
  std::uniform_real_distribution<double> slope(1e-4, 5e-3);
  std::uniform_real_distribution<double> demand(10.0, 1000.0);
  int interior = 0;
  for (int i = 0; i < 1000; ++i) {
    const BidCurve a = bid(l0(rng), slope(rng));
    const BidCurve b = bid(l0(rng), slope(rng));
    const double l_c = demand(rng);
    const MarketOutcome out = clear_two_sellers(a, b, l_c);
    CHECK(out.p_a + out.p_b == doctest::Approx(l_c).epsilon(1e-12));
    if (out.p_a > 0.0 && out.p_b > 0.0) {
      ++interior;
      CHECK(std::abs(a.price_at(out.p_a) - out.phi_t) < 1e-9);
      CHECK(std::abs(b.price_at(out.p_b) - out.phi_t) < 1e-9);
    }
  }
  CHECK(interior > 500);
}

TEST_CASE("clearing is invariant under seller relabeling") {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> l0(0.02, 0.4);
  std::uniform_real_distribution<double> slope(1e-4, 5e-3);
  for (int i = 0; i < 200; ++i) {
    const BidCurve a = bid(l0(rng), slope(rng));
    const BidCurve b = bid(l0(rng), slope(rng));
    const MarketOutcome ab = clear_two_sellers(a, b, 250.0);
    const MarketOutcome ba = clear_two_sellers(b, a, 250.0);
    CHECK(ab.p_a == doctest::Approx(ba.p_b).epsilon(1e-9));
    CHECK(ab.p_b == doctest::Approx(ba.p_a).epsilon(1e-9));
    CHECK(ab.phi_t == doctest::Approx(ba.phi_t).epsilon(1e-9));
  }
}

TEST_CASE("corner handling matches the grid oracle") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> l0(0.02, 0.5);
  std::uniform_real_distribution<double> slope(1e-3, 2e-2);
  std::uniform_real_distribution<double> demand(2.0, 10.0);
  int corners = 0;
  for (int i = 0; i < 100; ++i) {
    const BidCurve a = bid(l0(rng), slope(rng));
    const BidCurve b = bid(l0(rng), slope(rng));
    const double l_c = demand(rng);
    const MarketOutcome got = clear_two_sellers(a, b, l_c);
    const MarketOutcome oracle = grid_clear(a, b, l_c, 1e-3);
    corners += (got.p_a == 0.0 || got.p_b == 0.0);
    CHECK(std::abs(got.p_a - oracle.p_a) < 1e-2);
    CHECK(std::abs(got.p_b - oracle.p_b) < 1e-2);
  }
  CHECK(corners > 0);  // the draw ranges force some one-sided solutions
}

TEST_CASE("caps clamp price and quantities independently") {
  MarketOutcome raw;
  raw.p_a = 120.0;
  raw.p_b = 80.0;
  raw.phi_t = 0.4903;
  RegulatoryCaps caps;
  caps.phi_max = 0.4;
  const MarketOutcome capped = apply_caps(raw, caps);
  CHECK(capped.phi_t == doctest::Approx(0.4));
  CHECK(capped.price_capped);
  CHECK(capped.p_a == 120.0);

  const MarketOutcome untouched = apply_caps(raw, RegulatoryCaps{});
  CHECK(untouched.phi_t == raw.phi_t);
  CHECK_FALSE(untouched.price_capped);

  raw.phi_t = 0.3342;
  const MarketOutcome below = apply_caps(raw, caps);
  CHECK(below.phi_t == doctest::Approx(0.3342));
  CHECK_FALSE(below.price_capped);

  RegulatoryCaps qty;
  qty.p_max_a = 100.0;
  const MarketOutcome cut = apply_caps(raw, qty);
  CHECK(cut.p_a == doctest::Approx(100.0));
  CHECK(cut.qty_a_capped);
  CHECK(cut.p_b == doctest::Approx(80.0));

  RegulatoryCaps bad;
  bad.phi_max = -0.1;
  CHECK_THROWS_AS(apply_caps(raw, bad), ValidationError);
}

TEST_CASE("seller payoff") {
  const AggregatorCostModel model{0.04, 0.0004, 4.0, 25.0, 200};
  CHECK(seller_payoff(model, 0.0, 0.0, 0.15) == 0.0);
  CHECK(seller_payoff(model, 0.0, 100.0, 0.15) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(seller_payoff(model, 0.0, 100.0, 0.08) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(seller_payoff(model, 0.0, -5.0, 0.1), std::domain_error);
}

TEST_CASE("seller payoff is zero at the average incremental cost") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> pg(0.0, 400.0);
  std::uniform_real_distribution<double> qty(1.0, 400.0);
  const AggregatorCostModel model{0.05, 5e-4, 4.8, 24.0, 150};
  for (int i = 0; i < 50; ++i) {
    const double g = pg(rng), t = qty(rng);
    const double avg_incremental = (model.cost(g + t) - model.cost(g)) / t;
    CHECK(seller_payoff(model, g, t, avg_incremental) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("buyer payoff") {
  const AggregatorCostModel model{0.05814, 6.761e-4, 5.0, 21.5, 1};
  CHECK(buyer_payoff(model, 1950.0, 0.0, 0.15) == 0.0);
  CHECK(buyer_payoff(model, 1950.0, 100.0, 0.15) == doctest::Approx(247.7).epsilon(1e-3));
  CHECK_THROWS_AS(buyer_payoff(model, 50.0, 100.0, 0.15), std::domain_error);
  // free energy covering the whole load is worth the avoided cost
  CHECK(buyer_payoff(model, 300.0, 300.0, 0.0) ==
        doctest::Approx(model.cost(300.0)).epsilon(1e-12));
}

TEST_CASE("bargain validation") {
  CHECK(validate_bargain({7.0, 247.7}));
  CHECK_FALSE(validate_bargain({0.0, 0.0}));
  CHECK_FALSE(validate_bargain({-1.0, 5.0}));
  CHECK_FALSE(validate_bargain({5.0, -1.0}));
}

TEST_CASE("binding price caps never raise a seller payoff at fixed quantities") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> l0(0.02, 0.4);
  std::uniform_real_distribution<double> slope(1e-4, 5e-3);
  std::uniform_real_distribution<double> demand(50.0, 800.0);
  std::uniform_real_distribution<double> pg(0.0, 300.0);
  std::uniform_real_distribution<double> frac(0.3, 0.99);
  const AggregatorCostModel model{0.045, 4.5e-4, 4.4, 24.5, 180};
  int strict = 0;
  for (int i = 0; i < 500; ++i) {
    const BidCurve a = bid(l0(rng), slope(rng));
    const BidCurve b = bid(l0(rng), slope(rng));
    const MarketOutcome raw = clear_two_sellers(a, b, demand(rng));
    RegulatoryCaps caps;
    caps.phi_max = raw.phi_t * frac(rng);  // always binding
    const MarketOutcome capped = apply_caps(raw, caps);
    CHECK(capped.price_capped);
    const double g = pg(rng);
    const double before_a = seller_payoff(model, g, raw.p_a, raw.phi_t);
    const double after_a = seller_payoff(model, g, capped.p_a, capped.phi_t);
    const double before_b = seller_payoff(model, g, raw.p_b, raw.phi_t);
    const double after_b = seller_payoff(model, g, capped.p_b, capped.phi_t);
    CHECK(after_a <= before_a + 1e-12);
    CHECK(after_b <= before_b + 1e-12);
    if (raw.p_a > 0.0) {
      CHECK(after_a < before_a);
      ++strict;
    }
  }
  CHECK(strict > 400);
}
