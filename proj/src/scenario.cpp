#include "uavnet/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "uavnet/errors.hpp"

namespace uavnet {

using nlohmann::json;

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kProposed: return "proposed";
    case Algorithm::kBestThroughput: return "bt";
    case Algorithm::kBalanced: return "balanced";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "proposed") return Algorithm::kProposed;
  if (name == "bt") return Algorithm::kBestThroughput;
  if (name == "balanced") return Algorithm::kBalanced;
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected proposed, bt or balanced)");
}

std::vector<Algorithm> parse_algorithm_list(std::string_view list) {
  std::vector<Algorithm> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    const auto end = std::min(list.find(',', start), list.size());
    const auto item = list.substr(start, end - start);
    if (!item.empty()) out.push_back(parse_algorithm(item));
    start = end + 1;
  }
  if (out.empty()) throw ConfigError("empty algorithm list");
  return out;
}

namespace {

std::string_view metric_name(BestMetric m) {
  return m == BestMetric::kThroughput ? "throughput" : "pathloss";
}

BestMetric parse_metric(const std::string& name) {
  if (name == "throughput") return BestMetric::kThroughput;
  if (name == "pathloss") return BestMetric::kPathLoss;
  throw ConfigError("unknown baseline metric '" + name + "' (expected throughput or pathloss)");
}

json to_json(const Scenario& s) {
  const auto& c = s.channel;
  const auto& e = s.energy;
  return json{
      {"seed", s.seed},
      {"algorithm", algorithm_name(s.algorithm)},
      {"region", {{"width", s.region.width}, {"height", s.region.height}}},
      {"users",
       {{"count", s.num_users},
        {"altitude", s.user_altitude},
        {"max_speed", s.user_max_speed},
        {"deadline_min", s.deadline_min},
        {"deadline_max", s.deadline_max}}},
      {"uavs",
       {{"count", s.num_uavs},
        {"capacity", s.uav_capacity},
        {"altitude_min", s.uav_altitude_min},
        {"altitude_max", s.uav_altitude_max},
        {"cruise_speed", s.cruise_speed},
        {"optimize_cruise_speed", s.optimize_cruise_speed}}},
      {"slots",
       {{"per_macro", s.slots_per_macro},
        {"duration", s.slot_duration},
        {"macro_count", s.macro_slots},
        {"handover", s.handover},
        {"relocation_deadline", s.relocation_deadline}}},
      {"channel",
       {{"carrier_ghz", c.carrier_ghz},
        {"alpha_db", c.alpha_db},
        {"beta", c.beta},
        {"tx_power_dbm", c.tx_power_dbm},
        {"tx_gain_db", c.tx_gain_db},
        {"rx_gain_db", c.rx_gain_db},
        {"noise_power_dbm", c.noise_power_dbm},
        {"bandwidth_hz", c.bandwidth_hz},
        {"rician_k", c.rician_k},
        {"sample_fading", s.sample_fading}}},
      {"energy",
       {{"blade_profile_w", e.blade_profile_w},
        {"induced_w", e.induced_w},
        {"tip_speed", e.tip_speed},
        {"induced_velocity", e.induced_velocity},
        {"drag_ratio", e.drag_ratio},
        {"air_density", e.air_density},
        {"solidity", e.solidity},
        {"rotor_area", e.rotor_area}}},
      {"mobility", {{"theta", s.search.theta}, {"step", s.search.step}}},
      {"city",
       {{"cell_size", s.city.cell_size},
        {"density", s.city.density},
        {"height_min", s.city.height_min},
        {"height_max", s.city.height_max},
        {"grid_file", s.grid_file}}},
      {"clustering",
       {{"max_iterations", s.clustering.max_iterations},
        {"tolerance", s.clustering.tolerance},
        {"reset_wait_on_service", s.reset_wait_on_service}}},
      {"baselines", {{"bt_metric", metric_name(s.bt_metric)}}},
  };
}

bool same_kind(const json& a, const json& b) {
  if (a.is_number() && b.is_number()) return true;
  return a.type() == b.type();
}

// Overlays `patch` onto `base`, rejecting keys that `base` does not have.
void merge(json& base, const json& patch, const std::string& path) {
  if (!patch.is_object()) throw ConfigError("section '" + path + "' must be an object");
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    const std::string key = path.empty() ? it.key() : path + "." + it.key();
    if (!base.contains(it.key())) throw ConfigError("unknown config key '" + key + "'");
    json& slot = base[it.key()];
    if (slot.is_object()) {
      merge(slot, it.value(), key);
    } else {
      if (!same_kind(slot, it.value()))
        throw ConfigError("config key '" + key + "' has the wrong type");
      slot = it.value();
    }
  }
}

template <class T>
T get(const json& j, const char* section, const char* key) {
  try {
    return j.at(section).at(key).get<T>();
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("config key '") + section + "." + key + "': " + ex.what());
  }
}

Scenario from_json(const json& j) {
  Scenario s;
  try {
    s.seed = j.at("seed").get<std::uint64_t>();
  } catch (const json::exception&) {
    throw ConfigError("config key 'seed' must be a non-negative integer");
  }
  s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
  s.region = {get<double>(j, "region", "width"), get<double>(j, "region", "height")};

  s.num_users = get<int>(j, "users", "count");
  s.user_altitude = get<double>(j, "users", "altitude");
  s.user_max_speed = get<double>(j, "users", "max_speed");
  s.deadline_min = get<double>(j, "users", "deadline_min");
  s.deadline_max = get<double>(j, "users", "deadline_max");

  s.num_uavs = get<int>(j, "uavs", "count");
  s.uav_capacity = get<int>(j, "uavs", "capacity");
  s.uav_altitude_min = get<double>(j, "uavs", "altitude_min");
  s.uav_altitude_max = get<double>(j, "uavs", "altitude_max");
  s.cruise_speed = get<double>(j, "uavs", "cruise_speed");
  s.optimize_cruise_speed = get<bool>(j, "uavs", "optimize_cruise_speed");

  s.slots_per_macro = get<int>(j, "slots", "per_macro");
  s.slot_duration = get<double>(j, "slots", "duration");
  s.macro_slots = get<int>(j, "slots", "macro_count");
  s.handover = get<double>(j, "slots", "handover");
  s.relocation_deadline = get<double>(j, "slots", "relocation_deadline");

  auto& c = s.channel;
  c.carrier_ghz = get<double>(j, "channel", "carrier_ghz");
  c.alpha_db = get<double>(j, "channel", "alpha_db");
  c.beta = get<double>(j, "channel", "beta");
  c.tx_power_dbm = get<double>(j, "channel", "tx_power_dbm");
  c.tx_gain_db = get<double>(j, "channel", "tx_gain_db");
  c.rx_gain_db = get<double>(j, "channel", "rx_gain_db");
  c.noise_power_dbm = get<double>(j, "channel", "noise_power_dbm");
  c.bandwidth_hz = get<double>(j, "channel", "bandwidth_hz");
  c.rician_k = get<double>(j, "channel", "rician_k");
  s.sample_fading = get<bool>(j, "channel", "sample_fading");

  auto& e = s.energy;
  e.blade_profile_w = get<double>(j, "energy", "blade_profile_w");
  e.induced_w = get<double>(j, "energy", "induced_w");
  e.tip_speed = get<double>(j, "energy", "tip_speed");
  e.induced_velocity = get<double>(j, "energy", "induced_velocity");
  e.drag_ratio = get<double>(j, "energy", "drag_ratio");
  e.air_density = get<double>(j, "energy", "air_density");
  e.solidity = get<double>(j, "energy", "solidity");
  e.rotor_area = get<double>(j, "energy", "rotor_area");

  s.search.theta = get<double>(j, "mobility", "theta");
  s.search.step = get<double>(j, "mobility", "step");

  s.city.cell_size = get<double>(j, "city", "cell_size");
  s.city.density = get<double>(j, "city", "density");
  s.city.height_min = get<double>(j, "city", "height_min");
  s.city.height_max = get<double>(j, "city", "height_max");
  s.grid_file = get<std::string>(j, "city", "grid_file");

  s.clustering.max_iterations = get<int>(j, "clustering", "max_iterations");
  s.clustering.tolerance = get<double>(j, "clustering", "tolerance");
  s.reset_wait_on_service = get<bool>(j, "clustering", "reset_wait_on_service");

  s.bt_metric = parse_metric(get<std::string>(j, "baselines", "bt_metric"));
  validate(s);
  return s;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

}  // namespace

void validate(const Scenario& s) {
  require(s.region.width > 0.0 && s.region.height > 0.0, "region dimensions must be positive");
  require(s.num_users > 0, "users.count must be positive");
  require(s.num_uavs > 0, "uavs.count must be positive");
  require(s.uav_capacity > 0, "uavs.capacity must be positive");
  require(s.slots_per_macro > 0, "slots.per_macro must be positive");
  require(s.macro_slots > 0, "slots.macro_count must be positive");
  require(s.slot_duration > 0.0, "slots.duration must be positive");
  require(s.handover >= 0.0 && s.handover < s.slot_duration,
          "slots.handover must satisfy 0 <= handover < duration");
  require(s.relocation_deadline >= 0.0, "slots.relocation_deadline must be >= 0");
  require(s.user_altitude >= 0.0, "users.altitude must be >= 0");
  require(s.user_max_speed >= 0.0, "users.max_speed must be >= 0");
  require(s.deadline_min > 0.0 && s.deadline_min <= s.deadline_max,
          "users deadlines must satisfy 0 < deadline_min <= deadline_max");
  require(s.uav_altitude_min > s.user_altitude && s.uav_altitude_min <= s.uav_altitude_max,
          "UAV altitudes must exceed the user altitude and satisfy min <= max");
  require(s.cruise_speed > 0.0, "uavs.cruise_speed must be positive");
  require(s.clustering.max_iterations > 0, "clustering.max_iterations must be positive");
  require(s.clustering.tolerance >= 0.0, "clustering.tolerance must be >= 0");
  require(s.city.cell_size > 0.0, "city.cell_size must be positive");
  require(s.city.density >= 0.0 && s.city.density <= 1.0, "city.density must lie in [0, 1]");
  require(s.city.height_min >= 0.0 && s.city.height_min <= s.city.height_max,
          "city heights must satisfy 0 <= height_min <= height_max");
  require(s.search.step > 0.0, "mobility.step must be positive");
  try {
    sector_count(s.search.theta);
    validate(s.channel);
    validate(s.energy);
  } catch (const InvalidArgument& ex) {
    throw ConfigError(ex.what());
  }
}

Scenario scenario_from_string(std::string_view text) {
  json patch;
  try {
    patch = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw ConfigError(std::string("malformed config: ") + ex.what());
  }
  json base = to_json(Scenario{});
  merge(base, patch, "");
  return from_json(base);
}

std::string scenario_to_string(const Scenario& s) { return to_json(s).dump(2) + "\n"; }

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return scenario_from_string(text.str());
}

void save_scenario(const std::string& path, const Scenario& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << scenario_to_string(s);
}

void set_parameter(Scenario& s, std::string_view key, std::string_view value) {
  json parsed;
  try {
    parsed = json::parse(value);
  } catch (const json::parse_error&) {
    parsed = std::string(value);
  }
  // Build a one-key patch from the dotted path and run it through the
  // normal merge so unknown keys and wrong types are rejected uniformly.
  json patch = parsed;
  std::string_view rest = key;
  std::vector<std::string> parts;
  while (!rest.empty()) {
    const auto dot = rest.find('.');
    parts.emplace_back(rest.substr(0, dot));
    if (dot == std::string_view::npos) break;
    rest.remove_prefix(dot + 1);
  }
  if (parts.empty()) throw ConfigError("empty parameter name");
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) patch = json{{*it, patch}};
  json base = to_json(s);
  merge(base, patch, "");
  s = from_json(base);
}

}  // namespace uavnet
