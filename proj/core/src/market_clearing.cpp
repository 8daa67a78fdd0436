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

#include "dram/market_clearing.hpp"

#include <stdexcept>

#include "dram/errors.hpp"

namespace dram {

void validate_caps(const RegulatoryCaps& caps) {
  for (const auto& cap : {caps.phi_max, caps.p_max_a, caps.p_max_b}) {
    if (cap && !(*cap > 0.0)) {
      throw ValidationError("regulatory caps must be positive when present");
    }
  }
}

MarketOutcome clear_two_sellers(const BidCurve& bid_a, const BidCurve& bid_b, double l_c) {
  if (!(l_c > 0.0)) {
    throw std::domain_error("clear_two_sellers: demand must be positive");
  }
  const double slope_sum = bid_a.slope_m + bid_b.slope_m;
  if (!(slope_sum > 0.0)) {
    throw SingularSystemError("clear_two_sellers: bid slopes sum to zero");
  }
  MarketOutcome out;
  const double p_a = (bid_b.lambda0 - bid_a.lambda0 + bid_b.slope_m * l_c) / slope_sum;
  if (p_a < 0.0) {
    out.p_a = 0.0;
    out.p_b = l_c;
    out.phi_t = bid_b.price_at(l_c);
  } else if (p_a > l_c) {
    out.p_a = l_c;
    out.p_b = 0.0;
    out.phi_t = bid_a.price_at(l_c);
  } else {
    out.p_a = p_a;
    out.p_b = l_c - p_a;
    out.phi_t = bid_a.price_at(p_a);
  }
  return out;
}

MarketOutcome apply_caps(const MarketOutcome& outcome, const RegulatoryCaps& caps) {
  validate_caps(caps);
  MarketOutcome out = outcome;
  if (caps.phi_max && out.phi_t > *caps.phi_max) {
    out.phi_t = *caps.phi_max;
    out.price_capped = true;
  }
  if (caps.p_max_a && out.p_a > *caps.p_max_a) {
    out.p_a = *caps.p_max_a;
    out.qty_a_capped = true;
  }
  if (caps.p_max_b && out.p_b > *caps.p_max_b) {
    out.p_b = *caps.p_max_b;
    out.qty_b_capped = true;
  }
  return out;
}

double seller_payoff(const AggregatorCostModel& cost, double p_g, double t, double phi) {
  if (t < 0.0) {
    throw std::domain_error("seller_payoff: transacted power must be nonnegative");
  }
  return phi * t - (cost.cost(p_g + t) - cost.cost(p_g));
}

double seller_payoff(const SellerState& seller, double t, double phi) {
  return seller_payoff(seller.cost, seller.p_g, t, phi);
}

double buyer_payoff(const AggregatorCostModel& cost, double p_g, double t, double phi) {
  if (t < 0.0 || t > p_g) {
    throw std::domain_error("buyer_payoff: requires 0 <= t <= p_g");
  }
  return -phi * t - (cost.cost(p_g - t) - cost.cost(p_g));
}

bool validate_bargain(const PayoffPair& pair) {
  return pair.delta > 0.0 && pair.omega > 0.0;
}

}  // namespace dram
