#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavnet/assignment.hpp"
#include "uavnet/channel.hpp"
#include "uavnet/clustering.hpp"
#include "uavnet/energy.hpp"
#include "uavnet/environment.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/mobility.hpp"

namespace uavnet {

enum class Algorithm { kProposed, kBestThroughput, kBalanced };

std::string_view algorithm_name(Algorithm a);
Algorithm parse_algorithm(std::string_view name);
std::vector<Algorithm> parse_algorithm_list(std::string_view comma_separated);

/// Full experiment configuration. Defaults reproduce the 300 m x 300 m,
/// 400-user, 6-UAV setup with 62 users per UAV.
struct Scenario {
  std::uint64_t seed = 1;
  Algorithm algorithm = Algorithm::kProposed;

  Region region{300.0, 300.0};

  int num_users = 400;
  double user_altitude = 1.5;
  double user_max_speed = 3.0;
  double deadline_min = 2.0;
  double deadline_max = 10.0;

  int num_uavs = 6;
  int uav_capacity = 62;
  double uav_altitude_min = 22.0;
  double uav_altitude_max = 150.0;
  double cruise_speed = 10.0;
  bool optimize_cruise_speed = false;

  int slots_per_macro = 10;
  double slot_duration = 1.0;
  int macro_slots = 10;
  double handover = 0.1;
  double relocation_deadline = 45.0;

  ChannelParams channel;
  bool sample_fading = false;

  EnergyParams energy;
  SearchGeometry search;

  CityParams city;
  std::string grid_file;  // replay a saved city instead of generating one

  ClusterConfig clustering;
  bool reset_wait_on_service = true;

  BestMetric bt_metric = BestMetric::kThroughput;

  int total_slots() const { return slots_per_macro * macro_slots; }
};

/// Throws ConfigError describing the first violated constraint.
void validate(const Scenario& s);

/// JSON text with nested sections; keys absent from the text keep their
/// defaults, unknown keys are errors.
Scenario scenario_from_string(std::string_view json_text);
std::string scenario_to_string(const Scenario& s);
Scenario load_scenario(const std::string& path);
void save_scenario(const std::string& path, const Scenario& s);

/// Sets one field by dotted path, e.g. "channel.alpha_db" or "seed". The
/// value is parsed as JSON, falling back to a plain string.
void set_parameter(Scenario& s, std::string_view key, std::string_view value);

}  // namespace uavnet
