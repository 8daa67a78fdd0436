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

#ifndef DRAM_MARKET_CLEARING_HPP_
#define DRAM_MARKET_CLEARING_HPP_

#include <optional>

#include "dram/cost_model.hpp"

namespace dram {

// A seller as the clearing sees it: its standing bid, its aggregate cost,
// and how much of its local load the storage currently feeds.
struct SellerState {
  BidCurve bid;
  AggregatorCostModel cost;
  double p_g = 0.0;    // local load fed from storage before the trade, kW
  double p_max = 0.0;  // maximum stored power, kW
};

struct MarketOutcome {
  double p_a = 0.0;    // cleared quantity of seller A, kW
  double p_b = 0.0;    // cleared quantity of seller B, kW
  double phi_t = 0.0;  // transaction price, $/kW
  bool price_capped = false;
  bool qty_a_capped = false;
  bool qty_b_capped = false;
};

// Leader-imposed bounds. Quantity conservation is deliberately given up
// when a quantity cap binds: capped values clear directly.
struct RegulatoryCaps {
  std::optional<double> phi_max;
  std::optional<double> p_max_a;
  std::optional<double> p_max_b;

  bool any() const { return phi_max || p_max_a || p_max_b; }

  bool operator==(const RegulatoryCaps&) const = default;
};

void validate_caps(const RegulatoryCaps& caps);

// Payoffs of one transaction: delta for the seller, omega for the buyer.
struct PayoffPair {
  double delta = 0.0;
  double omega = 0.0;
};

// Solves lambda_A(P_A) = lambda_B(P_B) = phi_T with P_A + P_B = l_c. If the
// interior solution puts one seller negative, that seller is clamped to zero
// and the other serves the full demand at its own bid price.
MarketOutcome clear_two_sellers(const BidCurve& bid_a, const BidCurve& bid_b, double l_c);

// Replaces each of phi_T, P_A, P_B by its cap when the cap is exceeded.
MarketOutcome apply_caps(const MarketOutcome& outcome, const RegulatoryCaps& caps);

// phi*t - [C(p_g + t) - C(p_g)]: sale revenue minus the extra discharging
// cost the trade causes.
double seller_payoff(const AggregatorCostModel& cost, double p_g, double t, double phi);
double seller_payoff(const SellerState& seller, double t, double phi);

// -phi*t - [C(p_g - t) - C(p_g)]: avoided discharging cost minus the
// purchase outlay. Requires t <= p_g.
double buyer_payoff(const AggregatorCostModel& cost, double p_g, double t, double phi);

// Nash bargaining admissibility: both sides strictly better than no trade.
bool validate_bargain(const PayoffPair& pair);

}  // namespace dram

#endif  // DRAM_MARKET_CLEARING_HPP_
