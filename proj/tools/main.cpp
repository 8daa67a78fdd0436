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

// dram: deterministic simulator of two demand-response aggregators
// competing to sell stored battery energy to a third.
//
//   dram run       full game pipeline, report CSVs + summary
//   dram schedule  standalone water-heater scheduler
//   dram clear     one-shot two-seller market clearing
//   dram matrices  conditional and expected payoff matrices only

#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dram/harness.hpp"

namespace {

struct GameArgs {
  std::string config;
  std::string out = "out";
  std::string variant;
  bool dr = false;
  bool no_dr = false;
  double price_cap = 0.0;
  bool has_price_cap = false;
  unsigned seed = 0;  // reserved; the pipeline is deterministic
};

void add_game_options(CLI::App* cmd, GameArgs* args) {
  cmd->add_option("--config", args->config, "Path to the game config (JSON)")
      ->required();
  cmd->add_option("--out", args->out, "Output directory");
  cmd->add_option("--variant", args->variant, "Market mode")
      ->check(CLI::IsMember({"non-coop", "stackelberg"}));
  auto* dr = cmd->add_flag("--dr", args->dr, "Enable price-sensitive WH scheduling");
  cmd->add_flag("--no-dr", args->no_dr, "Disable price-sensitive WH scheduling")
      ->excludes(dr);
  cmd->add_option("--price-cap", args->price_cap, "Transaction price cap")
      ->each([args](const std::string&) { args->has_price_cap = true; });
  cmd->add_option("--seed", args->seed, "Reserved; accepted and ignored");
}

dram::RunOptions to_options(const GameArgs& args) {
  dram::RunOptions options;
  if (args.variant == "non-coop") options.mode = dram::MarketMode::kNonCooperative;
  if (args.variant == "stackelberg") options.mode = dram::MarketMode::kStackelberg;
  if (args.dr) options.dr = true;
  if (args.no_dr) options.dr = false;
  if (args.has_price_cap) options.price_cap = args.price_cap;
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"demand-response aggregator market simulator"};
  app.require_subcommand(1);

  GameArgs run_args;
  CLI::App* run = app.add_subcommand("run", "Run the full game pipeline");
  add_game_options(run, &run_args);

  GameArgs matrices_args;
  CLI::App* matrices =
      app.add_subcommand("matrices", "Emit conditional and expected payoff matrices");
  add_game_options(matrices, &matrices_args);

  std::string price_path, water_path, mode = "welfare", sched_out = "out";
  CLI::App* schedule = app.add_subcommand("schedule", "Run the WH scheduler standalone");
  schedule->add_option("--price", price_path, "Price profile CSV")->required();
  schedule->add_option("--water", water_path, "Water draw profile CSV")->required();
  schedule->add_option("--mode", mode, "welfare or price")
      ->check(CLI::IsMember({"welfare", "price"}));
  schedule->add_option("--out", sched_out, "Output directory");

  double l0a = 0, ma = 0, l0b = 0, mb = 0, demand = 0;
  double clear_cap = 0.0;
  bool has_clear_cap = false;
  CLI::App* clear = app.add_subcommand("clear", "One-shot two-seller clearing");
  clear->add_option("--lambda0-a", l0a, "Seller A bid intercept")->required();
  clear->add_option("--slope-a", ma, "Seller A bid slope")->required();
  clear->add_option("--lambda0-b", l0b, "Seller B bid intercept")->required();
  clear->add_option("--slope-b", mb, "Seller B bid slope")->required();
  clear->add_option("--demand", demand, "Buyer demand L_C (kW)")->required();
  clear->add_option("--price-cap", clear_cap, "Transaction price cap")
      ->each([&has_clear_cap](const std::string&) { has_clear_cap = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : dram::kExitValidation;
  }

  if (run->parsed()) {
    return dram::cmd_run(run_args.config, run_args.out, to_options(run_args));
  }
  if (matrices->parsed()) {
    return dram::cmd_matrices(matrices_args.config, matrices_args.out,
                              to_options(matrices_args));
  }
  if (schedule->parsed()) {
    return dram::cmd_schedule(price_path, water_path, mode, sched_out);
  }
  if (clear->parsed()) {
    return dram::cmd_clear(l0a, ma, l0b, mb, demand,
                           has_clear_cap ? std::optional<double>(clear_cap)
                                         : std::nullopt);
  }
  return dram::kExitValidation;
}
