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

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "dram/errors.hpp"
#include "dram/harness.hpp"

namespace dram {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
  throw ValidationError("config: field '" + field + "': " + why);
}

void expect_keys(const ordered_json& obj, const std::string& where,
                 const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) fail(where + "." + key, "unknown key");
  }
}

double get_number(const ordered_json& obj, const std::string& where,
                  const std::string& key) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  if (!obj[key].is_number()) fail(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

double get_number_or(const ordered_json& obj, const std::string& where,
                     const std::string& key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(where + "." + key, "must be a number");
  return obj[key].get<double>();
}

int get_int(const ordered_json& obj, const std::string& where, const std::string& key) {
  if (!obj.contains(key)) fail(where + "." + key, "missing");
  if (!obj[key].is_number_integer()) fail(where + "." + key, "must be an integer");
  return obj[key].get<int>();
}

bool get_bool_or(const ordered_json& obj, const std::string& where,
                 const std::string& key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) fail(where + "." + key, "must be a boolean");
  return obj[key].get<bool>();
}

std::string get_string_or(const ordered_json& obj, const std::string& where,
                          const std::string& key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string()) fail(where + "." + key, "must be a string");
  return obj[key].get<std::string>();
}

std::vector<double> get_number_array(const ordered_json& value, const std::string& where) {
  if (!value.is_array()) fail(where, "must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : value) {
    if (!v.is_number()) fail(where, "must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

SellerSpec parse_seller(const ordered_json& obj, const std::string& where) {
  if (!obj.is_object()) fail(where, "must be an object");
  expect_keys(obj, where,
              {"name", "houses", "p_max_kw", "applies_dr", "wh_kw", "wh_share", "gen_kw",
               "types"});
  SellerSpec s;
  s.name = get_string_or(obj, where, "name", "");
  s.n_houses = get_int(obj, where, "houses");
  s.p_max = get_number(obj, where, "p_max_kw");
  s.applies_dr = get_bool_or(obj, where, "applies_dr", false);
  s.wh_kw = get_number_or(obj, where, "wh_kw", 4.5);
  s.wh_share = get_number_or(obj, where, "wh_share", 0.6);
  s.gen_kw = get_number_or(obj, where, "gen_kw", 0.0);
  if (!obj.contains("types") || !obj["types"].is_array() || obj["types"].empty()) {
    fail(where + ".types", "must be a nonempty array");
  }
  int index = 0;
  for (const auto& t : obj["types"]) {
    const std::string tw = where + ".types[" + std::to_string(++index) + "]";
    if (!t.is_object()) fail(tw, "must be an object");
    expect_keys(t, tw, {"a", "b_kwh", "p0_kw", "pg_kw"});
    SellerTypeSpec type;
    type.cost.a = get_number(t, tw, "a");
    type.cost.b_kwh = get_number(t, tw, "b_kwh");
    type.p0 = get_number(t, tw, "p0_kw");
    type.p_g = get_number(t, tw, "pg_kw");
    s.types.push_back(type);
  }
  return s;
}

BuyerSpec parse_buyer(const ordered_json& obj) {
  const std::string where = "buyer";
  if (!obj.is_object()) fail(where, "must be an object");
  expect_keys(obj, where,
              {"name", "a", "b_kwh", "houses", "pg_kw", "wh_kw", "wh_share", "gen_kw"});
  BuyerSpec b;
  b.name = get_string_or(obj, where, "name", "");
  b.cost.a = get_number(obj, where, "a");
  b.cost.b_kwh = get_number(obj, where, "b_kwh");
  b.n_houses = get_int(obj, where, "houses");
  b.p_g = get_number(obj, where, "pg_kw");
  b.wh_kw = get_number_or(obj, where, "wh_kw", 4.5);
  b.wh_share = get_number_or(obj, where, "wh_share", 0.6);
  b.gen_kw = get_number_or(obj, where, "gen_kw", 0.0);
  return b;
}

TypePrior parse_prior(const ordered_json& value, const std::string& where) {
  if (!value.is_array() || value.size() != kScenarioCount) {
    fail(where, "must be an array of 4 scenario rows");
  }
  TypePrior prior;
  for (int f = 0; f < kScenarioCount; ++f) {
    prior.per_scenario[f] =
        get_number_array(value[f], where + "[" + std::to_string(f + 1) + "]");
  }
  return prior;
}

GameVariant parse_variant(const ordered_json& obj) {
  GameVariant v;
  if (!obj.is_object()) fail("variant", "must be an object");
  expect_keys(obj, "variant", {"mode", "dr"});
  const std::string mode = get_string_or(obj, "variant", "mode", "non-coop");
  if (mode == "non-coop") {
    v.mode = MarketMode::kNonCooperative;
  } else if (mode == "stackelberg") {
    v.mode = MarketMode::kStackelberg;
  } else {
    fail("variant.mode", "must be 'non-coop' or 'stackelberg'");
  }
  v.dr_scheduled = get_bool_or(obj, "variant", "dr", false);
  return v;
}

ordered_json seller_to_json(const SellerSpec& s) {
  ordered_json obj;
  obj["name"] = s.name;
  obj["houses"] = s.n_houses;
  obj["p_max_kw"] = s.p_max;
  obj["applies_dr"] = s.applies_dr;
  obj["wh_kw"] = s.wh_kw;
  obj["wh_share"] = s.wh_share;
  obj["gen_kw"] = s.gen_kw;
  obj["types"] = ordered_json::array();
  for (const SellerTypeSpec& t : s.types) {
    obj["types"].push_back({{"a", t.cost.a},
                            {"b_kwh", t.cost.b_kwh},
                            {"p0_kw", t.p0},
                            {"pg_kw", t.p_g}});
  }
  return obj;
}

}  // namespace

GameConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config: cannot open " + path.string());
  }
  ordered_json root;
  try {
    root = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config: JSON parse error in " + path.string() + ": " +
                          e.what());
  }
  if (!root.is_object()) throw ValidationError("config: top level must be an object");
  expect_keys(root, "config",
              {"variant", "l_c_kw", "strategy_epsilons", "threshold_fraction",
               "participation_flags", "seller_a", "seller_b", "buyer", "psi_a", "psi_b",
               "caps", "tank", "profiles", "reported_demand_curtail"});

  GameConfig config;
  if (root.contains("variant")) config.variant = parse_variant(root["variant"]);
  config.l_c = get_number(root, "config", "l_c_kw");
  if (root.contains("strategy_epsilons")) {
    config.strategies.epsilons =
        get_number_array(root["strategy_epsilons"], "strategy_epsilons");
  }
  config.threshold_fraction = get_number_or(root, "config", "threshold_fraction", 0.5);
  if (root.contains("participation_flags")) {
    const auto flags = get_number_array(root["participation_flags"], "participation_flags");
    if (flags.size() != kScenarioCount) {
      fail("participation_flags", "must list 4 values");
    }
    for (int f = 0; f < kScenarioCount; ++f) {
      if (flags[f] != 0.0 && flags[f] != 1.0) fail("participation_flags", "values must be 0 or 1");
      config.flags.g[f] = static_cast<int>(flags[f]);
    }
  }
  if (!root.contains("seller_a")) fail("seller_a", "missing");
  if (!root.contains("seller_b")) fail("seller_b", "missing");
  if (!root.contains("buyer")) fail("buyer", "missing");
  config.seller_a = parse_seller(root["seller_a"], "seller_a");
  config.seller_b = parse_seller(root["seller_b"], "seller_b");
  config.buyer = parse_buyer(root["buyer"]);
  if (!root.contains("psi_a")) fail("psi_a", "missing");
  if (!root.contains("psi_b")) fail("psi_b", "missing");
  config.psi_a = parse_prior(root["psi_a"], "psi_a");
  config.psi_b = parse_prior(root["psi_b"], "psi_b");
  if (root.contains("caps")) {
    const auto& caps = root["caps"];
    if (!caps.is_object()) fail("caps", "must be an object");
    expect_keys(caps, "caps", {"phi_max", "p_max_a_kw", "p_max_b_kw"});
    if (caps.contains("phi_max")) config.caps.phi_max = get_number(caps, "caps", "phi_max");
    if (caps.contains("p_max_a_kw")) {
      config.caps.p_max_a = get_number(caps, "caps", "p_max_a_kw");
    }
    if (caps.contains("p_max_b_kw")) {
      config.caps.p_max_b = get_number(caps, "caps", "p_max_b_kw");
    }
  }
  if (root.contains("tank")) {
    const auto& tank = root["tank"];
    if (!tank.is_object()) fail("tank", "must be an object");
    expect_keys(tank, "tank",
                {"temp_min", "temp_max", "heat_rate", "loss_rate", "draw_drop",
                 "initial_temp"});
    config.tank.temp_min = get_number_or(tank, "tank", "temp_min", 110.0);
    config.tank.temp_max = get_number_or(tank, "tank", "temp_max", 130.0);
    config.tank.heat_rate = get_number_or(tank, "tank", "heat_rate", 5.0);
    config.tank.loss_rate = get_number_or(tank, "tank", "loss_rate", 0.5);
    config.tank.draw_drop = get_number_or(tank, "tank", "draw_drop", 10.0);
    config.tank.initial_temp = get_number_or(tank, "tank", "initial_temp", 120.0);
  }
  if (!root.contains("profiles")) fail("profiles", "missing");
  {
    const auto& profiles = root["profiles"];
    if (!profiles.is_object()) fail("profiles", "must be an object");
    expect_keys(profiles, "profiles", {"price", "water", "price_values", "water_values"});
    const bool price_ref = profiles.contains("price");
    const bool water_ref = profiles.contains("water");
    if (price_ref == profiles.contains("price_values")) {
      fail("profiles", "give exactly one of 'price' (path) or 'price_values'");
    }
    if (water_ref == profiles.contains("water_values")) {
      fail("profiles", "give exactly one of 'water' (path) or 'water_values'");
    }
    const std::filesystem::path base = path.parent_path();
    if (price_ref) {
      if (!profiles["price"].is_string()) fail("profiles.price", "must be a path string");
      config.prices = load_price_profile(base / profiles["price"].get<std::string>());
    } else {
      config.prices.values = get_number_array(profiles["price_values"], "profiles.price_values");
    }
    if (water_ref) {
      if (!profiles["water"].is_string()) fail("profiles.water", "must be a path string");
      config.draws = load_water_profile(base / profiles["water"].get<std::string>());
    } else {
      config.draws.values = get_number_array(profiles["water_values"], "profiles.water_values");
    }
  }
  if (root.contains("reported_demand_curtail")) {
    config.reported_demand_curtail =
        get_number(root, "config", "reported_demand_curtail");
  }

  validate_config(config);
  return config;
}

void save_config(const GameConfig& config, const std::filesystem::path& path,
                 const std::optional<std::pair<std::string, std::string>>& profile_refs) {
  ordered_json root;
  root["variant"] = {
      {"mode", config.variant.mode == MarketMode::kStackelberg ? "stackelberg"
                                                               : "non-coop"},
      {"dr", config.variant.dr_scheduled}};
  root["l_c_kw"] = config.l_c;
  root["strategy_epsilons"] = config.strategies.epsilons;
  root["threshold_fraction"] = config.threshold_fraction;
  root["participation_flags"] = config.flags.g;
  root["seller_a"] = seller_to_json(config.seller_a);
  root["seller_b"] = seller_to_json(config.seller_b);
  root["buyer"] = {{"name", config.buyer.name},
                   {"a", config.buyer.cost.a},
                   {"b_kwh", config.buyer.cost.b_kwh},
                   {"houses", config.buyer.n_houses},
                   {"pg_kw", config.buyer.p_g},
                   {"wh_kw", config.buyer.wh_kw},
                   {"wh_share", config.buyer.wh_share},
                   {"gen_kw", config.buyer.gen_kw}};
  root["psi_a"] = config.psi_a.per_scenario;
  root["psi_b"] = config.psi_b.per_scenario;
  ordered_json caps = ordered_json::object();
  if (config.caps.phi_max) caps["phi_max"] = *config.caps.phi_max;
  if (config.caps.p_max_a) caps["p_max_a_kw"] = *config.caps.p_max_a;
  if (config.caps.p_max_b) caps["p_max_b_kw"] = *config.caps.p_max_b;
  if (!caps.empty()) root["caps"] = caps;
  root["tank"] = {{"temp_min", config.tank.temp_min},
                  {"temp_max", config.tank.temp_max},
                  {"heat_rate", config.tank.heat_rate},
                  {"loss_rate", config.tank.loss_rate},
                  {"draw_drop", config.tank.draw_drop},
                  {"initial_temp", config.tank.initial_temp}};
  if (profile_refs) {
    root["profiles"] = {{"price", profile_refs->first}, {"water", profile_refs->second}};
  } else {
    root["profiles"] = {{"price_values", config.prices.values},
                        {"water_values", config.draws.values}};
  }
  if (config.reported_demand_curtail) {
    root["reported_demand_curtail"] = *config.reported_demand_curtail;
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ValidationError("config: cannot write " + path.string());
  }
  out << root.dump(2) << '\n';
}

}  // namespace dram
