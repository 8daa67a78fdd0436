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

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "dram/errors.hpp"
#include "dram/harness.hpp"

namespace dram {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path,
                       std::vector<std::filesystem::path>* written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ComputationError("report: cannot write " + path.string());
  }
  if (written) written->push_back(path);
  return out;
}

// kappa column label: 1-based opponent actions, first type leftmost.
std::string kappa_label(int kappa, int s, int types) {
  const std::vector<int> actions = kappa_actions(kappa, s, types);
  std::string label = "k_";
  for (int a : actions) label += std::to_string(a + 1);
  return label;
}

void write_ep_matrix(const Eigen::MatrixXd& ep, int opponent_types,
                     const std::filesystem::path& path,
                     std::vector<std::filesystem::path>* written) {
  std::ofstream out = open_out(path, written);
  const int s = static_cast<int>(ep.rows());
  out << "strategy";
  for (int c = 0; c < ep.cols(); ++c) out << ',' << kappa_label(c, s, opponent_types);
  out << '\n';
  for (int i = 0; i < s; ++i) {
    out << (i + 1);
    for (int c = 0; c < ep.cols(); ++c) out << ',' << fmt(ep(i, c));
    out << '\n';
  }
}

std::string strategy_tuple(const TypeContingentStrategy& strategy,
                           const StrategySet& set) {
  std::string out = "(";
  for (std::size_t i = 0; i < strategy.action.size(); ++i) {
    if (i) out += ',';
    out += set.label(strategy.action[i]);
  }
  out += ')';
  return out;
}

}  // namespace

void write_report_csvs(const GameReport& report, const std::filesystem::path& out_dir,
                       std::vector<std::filesystem::path>* written) {
  const StrategySet& set = report.strategies;
  {
    std::ofstream out = open_out(out_dir / "scenario_probs.csv", written);
    out << "scenario,probability\n";
    for (int f = 0; f < kScenarioCount; ++f) {
      out << scenario_name(static_cast<Scenario>(f)) << ',' << fmt(report.scenario.p[f])
          << '\n';
    }
  }
  {
    std::ofstream out = open_out(out_dir / "pi.csv", written);
    out << "m,n,pi\n";
    for (Eigen::Index m = 0; m < report.joint.pi.rows(); ++m) {
      for (Eigen::Index n = 0; n < report.joint.pi.cols(); ++n) {
        out << (m + 1) << ',' << (n + 1) << ',' << fmt(report.joint.pi(m, n)) << '\n';
      }
    }
  }
  {
    std::ofstream out = open_out(out_dir / "eta.csv", written);
    out << "player,own_type,opponent_type,probability\n";
    for (Eigen::Index m = 0; m < report.eta.eta_a.rows(); ++m) {
      for (Eigen::Index n = 0; n < report.eta.eta_a.cols(); ++n) {
        out << "A," << (m + 1) << ',' << (n + 1) << ',' << fmt(report.eta.eta_a(m, n))
            << '\n';
      }
    }
    for (Eigen::Index n = 0; n < report.eta.eta_b.rows(); ++n) {
      for (Eigen::Index m = 0; m < report.eta.eta_b.cols(); ++m) {
        out << "B," << (n + 1) << ',' << (m + 1) << ',' << fmt(report.eta.eta_b(n, m))
            << '\n';
      }
    }
  }
  {
    std::ofstream out = open_out(out_dir / "bids.csv", written);
    out << "player,type,strategy,epsilon,label,lambda0,slope_m\n";
    const auto dump = [&](const char* player,
                          const std::vector<std::vector<BidCurve>>& bids) {
      for (std::size_t t = 0; t < bids.size(); ++t) {
        for (std::size_t i = 0; i < bids[t].size(); ++i) {
          out << player << ',' << (t + 1) << ',' << (i + 1) << ','
              << fmt(set.epsilons[i]) << ',' << set.label(static_cast<int>(i)) << ','
              << fmt(bids[t][i].lambda0) << ',' << fmt(bids[t][i].slope_m) << '\n';
        }
      }
    };
    dump("A", report.bids_a);
    dump("B", report.bids_b);
  }

  write_ep_matrices(report, out_dir, written);
  {
    std::ofstream out = open_out(out_dir / "equilibrium.csv", written);
    out << "player,type,strategy,epsilon,label,tie\n";
    if (report.equilibrium.pure_found) {
      const auto& [sa, sb] = report.equilibrium.equilibria.front();
      const char* tie = report.equilibrium.tie ? "yes" : "no";
      for (std::size_t m = 0; m < sa.action.size(); ++m) {
        out << "A," << (m + 1) << ',' << (sa.action[m] + 1) << ','
            << fmt(set.epsilons[sa.action[m]]) << ',' << set.label(sa.action[m]) << ','
            << tie << '\n';
      }
      for (std::size_t n = 0; n < sb.action.size(); ++n) {
        out << "B," << (n + 1) << ',' << (sb.action[n] + 1) << ','
            << fmt(set.epsilons[sb.action[n]]) << ',' << set.label(sb.action[n]) << ','
            << tie << '\n';
      }
    }
  }
  {
    std::ofstream out = open_out(out_dir / "eq_outcomes.csv", written);
    out << "m,n,p_a_kw,p_b_kw,phi_t,price_capped,qty_a_capped,qty_b_capped,"
           "payoff_a,payoff_b,payoff_buyer,traded_a,traded_b\n";
    for (const EquilibriumOutcome& eq : report.eq_outcomes) {
      out << (eq.m + 1) << ',' << (eq.n + 1) << ',' << fmt(eq.outcome.p_a) << ','
          << fmt(eq.outcome.p_b) << ',' << fmt(eq.outcome.phi_t) << ','
          << (eq.outcome.price_capped ? 1 : 0) << ',' << (eq.outcome.qty_a_capped ? 1 : 0)
          << ',' << (eq.outcome.qty_b_capped ? 1 : 0) << ',' << fmt(eq.payoff_a) << ','
          << fmt(eq.payoff_b) << ',' << fmt(eq.payoff_buyer) << ','
          << (eq.traded_a ? 1 : 0) << ',' << (eq.traded_b ? 1 : 0) << '\n';
    }
  }
  {
    std::ofstream out = open_out(out_dir / "demands.csv", written);
    out << "aggregator,demand_kw\n";
    out << "A," << fmt(report.demand_a) << '\n';
    out << "B," << fmt(report.demand_b) << '\n';
    out << "C," << fmt(report.demand_c) << '\n';
    if (report.demand_a_dr) out << "A_dr," << fmt(*report.demand_a_dr) << '\n';
  }
}

void write_ep_matrices(const GameReport& report, const std::filesystem::path& out_dir,
                       std::vector<std::filesystem::path>* written) {
  const int m_types = static_cast<int>(report.ep.ep_a.size());
  const int n_types = static_cast<int>(report.ep.ep_b.size());
  for (int m = 0; m < m_types; ++m) {
    write_ep_matrix(report.ep.ep_a[m], n_types,
                    out_dir / ("ep_A_m" + std::to_string(m + 1) + ".csv"), written);
  }
  for (int n = 0; n < n_types; ++n) {
    write_ep_matrix(report.ep.ep_b[n], m_types,
                    out_dir / ("ep_B_n" + std::to_string(n + 1) + ".csv"), written);
  }
}

void write_h_matrices(const GameReport& report, const std::filesystem::path& out_dir,
                      std::vector<std::filesystem::path>* written) {
  for (std::size_t m = 0; m < report.h.size(); ++m) {
    for (std::size_t n = 0; n < report.h[m].size(); ++n) {
      const std::string suffix =
          "m" + std::to_string(m + 1) + "_n" + std::to_string(n + 1) + ".csv";
      for (const char player : {'A', 'B'}) {
        const Eigen::MatrixXd& h = player == 'A' ? report.h[m][n].h_a : report.h[m][n].h_b;
        std::ofstream out =
            open_out(out_dir / (std::string("h_") + player + '_' + suffix), written);
        out << "strategy";
        for (int j = 0; j < h.cols(); ++j) out << ",j" << (j + 1);
        out << '\n';
        for (int i = 0; i < h.rows(); ++i) {
          out << (i + 1);
          for (int j = 0; j < h.cols(); ++j) out << ',' << fmt(h(i, j));
          out << '\n';
        }
      }
    }
  }
}

std::string summary_text(const GameReport& report, const RegulatoryCaps& caps) {
  std::ostringstream out;
  out << "dram game summary\n";
  out << "variant: " << report.variant.label() << '\n';
  if (report.equilibrium.pure_found) {
    const auto& [sa, sb] = report.equilibrium.equilibria.front();
    out << "equilibrium: A:" << strategy_tuple(sa, report.strategies)
        << " B:" << strategy_tuple(sb, report.strategies) << '\n';
    out << "equilibria found: " << report.equilibrium.equilibria.size()
        << (report.equilibrium.tie ? " (tie, lexicographic first reported)" : "") << '\n';
  } else {
    out << "equilibrium: none (no pure strategy pair)\n";
  }
  out << "P(elec_exp) = " << fmt(report.p_exp) << '\n';
  out << "P(WH_on) = " << fmt(report.stats.p_on) << '\n';
  out << "scenario probabilities:";
  for (int f = 0; f < kScenarioCount; ++f) {
    out << " sigma" << (f + 1) << '=' << fmt(report.scenario.p[f]);
  }
  out << '\n';
  if (caps.phi_max && report.variant.mode == MarketMode::kStackelberg) {
    int binding = 0;
    for (const EquilibriumOutcome& eq : report.eq_outcomes) binding += eq.outcome.price_capped;
    out << "price cap: " << fmt(*caps.phi_max) << " applied (binding at " << binding
        << " of " << report.eq_outcomes.size() << " equilibrium outcomes)\n";
  } else {
    out << "price cap: none\n";
  }
  if (report.curtailment) {
    out << "curtailment ratio: " << fmt(*report.curtailment) << '\n';
  }
  out << "demand_kw: A=" << fmt(report.demand_a) << " B=" << fmt(report.demand_b)
      << " C=" << fmt(report.demand_c);
  if (report.demand_a_dr) out << " A_dr=" << fmt(*report.demand_a_dr);
  out << '\n';
  return out.str();
}

}  // namespace dram
