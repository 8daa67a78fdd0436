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

#include "dram/harness.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dram/errors.hpp"

namespace dram {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::string to_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t fnv1a(const char* data, std::size_t size, std::uint64_t h = kFnvOffset) {
  for (std::size_t i = 0; i < size; ++i) {
    h ^= static_cast<unsigned char>(data[i]);
    h *= kFnvPrime;
  }
  return h;
}

// Content digest of a profile: hash of the canonical full-precision text.
std::string values_digest(std::span<const double> values) {
  std::uint64_t h = kFnvOffset;
  char buf[40];
  for (double v : values) {
    const int n = std::snprintf(buf, sizeof buf, "%.17g;", v);
    h = fnv1a(buf, static_cast<std::size_t>(n), h);
  }
  return to_hex(h);
}

void remove_outputs(const std::vector<std::filesystem::path>& written) {
  std::error_code ec;
  for (const auto& path : written) std::filesystem::remove(path, ec);
}

GameConfig load_with_overrides(const std::filesystem::path& config_path,
                               const RunOptions& options) {
  GameConfig config = load_config(config_path);
  if (options.mode) config.variant.mode = *options.mode;
  if (options.dr) config.variant.dr_scheduled = *options.dr;
  if (options.price_cap) config.caps.phi_max = *options.price_cap;
  validate_config(config);
  return config;
}

RunManifest make_manifest(const std::filesystem::path& config_path,
                          const GameConfig& config,
                          const std::filesystem::path& out_dir) {
  RunManifest manifest;
  manifest.config_path = config_path.string();
  manifest.variant = config.variant.label();
  manifest.out_dir = out_dir.string();
  manifest.digests.emplace_back("config", file_digest(config_path));
  manifest.digests.emplace_back("price_profile", values_digest(config.prices.values));
  manifest.digests.emplace_back("water_profile", values_digest(config.draws.values));
  return manifest;
}

int run_pipeline(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_dir, const RunOptions& options,
                 bool matrices_only) {
  std::vector<std::filesystem::path> written;
  try {
    const GameConfig config = load_with_overrides(config_path, options);
    std::filesystem::create_directories(out_dir);
    const RunManifest manifest = make_manifest(config_path, config, out_dir);
    write_manifest(manifest, out_dir / "manifest.txt");
    written.push_back(out_dir / "manifest.txt");

    const GameReport report = play_game(config);
    if (matrices_only) {
      write_h_matrices(report, out_dir, &written);
      write_ep_matrices(report, out_dir, &written);
    } else {
      write_report_csvs(report, out_dir, &written);
      const std::string summary = summary_text(report, config.caps);
      std::ofstream out(out_dir / "summary.txt", std::ios::binary);
      if (!out) throw ComputationError("cannot write summary.txt");
      written.push_back(out_dir / "summary.txt");
      out << summary;
      std::cout << summary;
    }
    return kExitOk;
  } catch (const ValidationError& e) {
    remove_outputs(written);
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    remove_outputs(written);
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ValidationError("digest: cannot open " + path.string());
  }
  std::uint64_t h = kFnvOffset;
  char buf[4096];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    h = fnv1a(buf, static_cast<std::size_t>(in.gcount()), h);
    if (!in) break;
  }
  return to_hex(h);
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ComputationError("manifest: cannot write " + path.string());
  }
  out << "config=" << manifest.config_path << '\n';
  out << "variant=" << manifest.variant << '\n';
  out << "out=" << manifest.out_dir << '\n';
  for (const auto& [name, hex] : manifest.digests) {
    out << "digest." << name << '=' << hex << '\n';
  }
}

int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_dir, const RunOptions& options) {
  return run_pipeline(config_path, out_dir, options, /*matrices_only=*/false);
}

int cmd_matrices(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_dir, const RunOptions& options) {
  return run_pipeline(config_path, out_dir, options, /*matrices_only=*/true);
}

int cmd_schedule(const std::filesystem::path& price_path,
                 const std::filesystem::path& water_path, const std::string& mode,
                 const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  try {
    if (mode != "welfare" && mode != "price") {
      throw ValidationError("schedule: mode must be 'welfare' or 'price'");
    }
    const PriceProfile prices = load_price_profile(price_path);
    const WaterDrawProfile draws = load_water_profile(water_path);
    const TankModel tank;  // bundled calibration
    const WHSchedule schedule = mode == "welfare"
                                    ? schedule_welfare(tank, draws)
                                    : schedule_price_sensitive(tank, draws, prices);
    const OnOffStats stats = on_off_stats(schedule, prices);

    std::filesystem::create_directories(out_dir);
    {
      std::ofstream out(out_dir / "schedule.csv", std::ios::binary);
      if (!out) throw ComputationError("cannot write schedule.csv");
      written.push_back(out_dir / "schedule.csv");
      out << "slot,on\n";
      for (int t = 0; t < kSlotsPerDay; ++t) {
        out << t << ',' << (schedule.on[t] ? 1 : 0) << '\n';
      }
    }
    {
      std::ofstream out(out_dir / "stats.csv", std::ios::binary);
      if (!out) throw ComputationError("cannot write stats.csv");
      written.push_back(out_dir / "stats.csv");
      char buf[40];
      const auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof buf, "%.6g", v);
        return std::string(buf);
      };
      out << "p_on,p_off,p_on_given_exp,p_off_given_exp,p_on_given_cheap,"
             "p_off_given_cheap\n";
      out << fmt(stats.p_on) << ',' << fmt(stats.p_off) << ',' << fmt(stats.p_on_given_exp)
          << ',' << fmt(stats.p_off_given_exp) << ',' << fmt(stats.p_on_given_cheap) << ','
          << fmt(stats.p_off_given_cheap) << '\n';
    }
    std::cout << "schedule: " << schedule.on_count() << " of " << kSlotsPerDay
              << " slots on\n";
    return kExitOk;
  } catch (const ValidationError& e) {
    remove_outputs(written);
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const InfeasibleScheduleError& e) {
    remove_outputs(written);
    std::cerr << "error: infeasible at slot " << e.slot() << ": " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    remove_outputs(written);
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

int cmd_clear(double lambda0_a, double slope_a, double lambda0_b, double slope_b,
              double demand, std::optional<double> price_cap) {
  try {
    if (slope_a < 0.0 || slope_b < 0.0) {
      throw ValidationError("clear: bid slopes must be nonnegative");
    }
    BidCurve bid_a{lambda0_a, slope_a, 0.0, demand};
    BidCurve bid_b{lambda0_b, slope_b, 0.0, demand};
    MarketOutcome outcome = clear_two_sellers(bid_a, bid_b, demand);
    if (price_cap) {
      RegulatoryCaps caps;
      caps.phi_max = *price_cap;
      outcome = apply_caps(outcome, caps);
    }
    char buf[40];
    const auto fmt = [&buf](double v) {
      std::snprintf(buf, sizeof buf, "%.6g", v);
      return std::string(buf);
    };
    std::cout << "p_a_kw,p_b_kw,phi_t,price_capped\n";
    std::cout << fmt(outcome.p_a) << ',' << fmt(outcome.p_b) << ',' << fmt(outcome.phi_t)
              << ',' << (outcome.price_capped ? 1 : 0) << '\n';
    return kExitOk;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace dram
