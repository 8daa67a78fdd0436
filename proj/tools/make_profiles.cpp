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

// Regenerates the bundled case-study data directory (config + profiles)
// from the normative tables compiled into the library, and prints the
// schedule statistics the bundle is constructed to satisfy.

#include <iostream>

#include "dram/case_study.hpp"
#include "dram/harness.hpp"

int main(int argc, char** argv) {
  const std::string dir = argc > 1 ? argv[1] : "data";
  try {
    dram::write_case_study_bundle(dir);
    const dram::GameConfig& config = dram::case_study_config();
    const dram::WHSchedule welfare = dram::schedule_welfare(config.tank, config.draws);
    const dram::WHSchedule priced =
        dram::schedule_price_sensitive(config.tank, config.draws, config.prices);
    const dram::OnOffStats stats = dram::on_off_stats(priced, config.prices);
    std::cout << "wrote bundle to " << dir << "\n"
              << "expensive slots: "
              << dram::price_expensive_prob(config.prices) * dram::kSlotsPerDay << "\n"
              << "welfare on-slots: " << welfare.on_count() << "\n"
              << "price-sensitive on-slots: " << priced.on_count() << " (exp "
              << stats.p_on_given_exp * 68 << ", cheap " << stats.p_on_given_cheap * 28
              << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
