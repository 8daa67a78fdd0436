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

#ifndef DRAM_HARNESS_HPP_
#define DRAM_HARNESS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dram/game_engine.hpp"

namespace dram {

// Exit codes shared by every CLI command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;  // bad config or malformed inputs
inline constexpr int kExitRuntime = 2;     // infeasibility, singularity, fit failure

// Parses and fully validates the JSON game description; profile CSVs named
// by the file are resolved against its directory and loaded. Every failure
// throws ValidationError naming the offending field.
GameConfig load_config(const std::filesystem::path& path);

// Inverse of load_config, so that load_config(save_config(c)) == c. By
// default the profiles are inlined; passing profile_refs writes the two
// relative CSV paths instead (the caller keeps those files in sync).
void save_config(const GameConfig& config, const std::filesystem::path& path,
                 const std::optional<std::pair<std::string, std::string>>& profile_refs =
                     std::nullopt);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

// Reproducibility record written before any computation starts.
struct RunManifest {
  std::string config_path;
  std::string variant;
  std::string out_dir;
  std::vector<std::pair<std::string, std::string>> digests;  // name -> hex
};

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

// Report serialization. All numbers use 6 significant digits, '.' decimal
// separator and LF line endings; rerunning on identical inputs reproduces
// the files byte for byte.
void write_report_csvs(const GameReport& report, const std::filesystem::path& out_dir,
                       std::vector<std::filesystem::path>* written);
void write_h_matrices(const GameReport& report, const std::filesystem::path& out_dir,
                      std::vector<std::filesystem::path>* written);
void write_ep_matrices(const GameReport& report, const std::filesystem::path& out_dir,
                       std::vector<std::filesystem::path>* written);
std::string summary_text(const GameReport& report, const RegulatoryCaps& caps);

struct RunOptions {
  std::optional<MarketMode> mode;       // --variant
  std::optional<bool> dr;               // --dr / --no-dr
  std::optional<double> price_cap;      // --price-cap
};

// `run`: full pipeline, all report artifacts plus summary.txt.
int cmd_run(const std::filesystem::path& config_path,
            const std::filesystem::path& out_dir, const RunOptions& options);

// `matrices`: pipeline through step 5 only; emits h_*.csv and ep_*.csv.
int cmd_matrices(const std::filesystem::path& config_path,
                 const std::filesystem::path& out_dir, const RunOptions& options);

// `schedule`: standalone scheduler; writes schedule.csv and stats.csv.
int cmd_schedule(const std::filesystem::path& price_path,
                 const std::filesystem::path& water_path, const std::string& mode,
                 const std::filesystem::path& out_dir);

// `clear`: one-shot two-seller clearing printed to stdout.
int cmd_clear(double lambda0_a, double slope_a, double lambda0_b, double slope_b,
              double demand, std::optional<double> price_cap);

}  // namespace dram

#endif  // DRAM_HARNESS_HPP_
