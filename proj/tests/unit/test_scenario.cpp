#include <doctest.h>

#include <uavnet/errors.hpp>
#include <uavnet/scenario.hpp>

using namespace uavnet;

TEST_CASE("defaults are valid") {
  const Scenario s;
  CHECK_NOTHROW(validate(s));
  CHECK(s.total_slots() == 100);
  CHECK(s.num_users == 400);
  CHECK(s.uav_capacity == 62);
}

TEST_CASE("partial config keeps defaults") {
  const auto s = scenario_from_string(R"({"seed": 9, "users": {"count": 50},
                                          "channel": {"alpha_db": 61.4}})");
  CHECK(s.seed == 9);
  CHECK(s.num_users == 50);
  CHECK(s.channel.alpha_db == 61.4);
  CHECK(s.num_uavs == 6);
  CHECK(s.channel.beta == 2.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(scenario_from_string(R"({"colour": 1})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"users": {"cnt": 5}})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"users": {"count": "many"}})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"users": 5})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"users": {"count": -1}})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"slots": {"handover": 2.0}})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"mobility": {"theta": 1.0}})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string(R"({"algorithm": "fastest"})"), ConfigError);
  CHECK_THROWS_AS(scenario_from_string("{not json"), ConfigError);
}

TEST_CASE("round trip through text") {
  Scenario s;
  s.seed = 123456789012345ull;
  s.algorithm = Algorithm::kBalanced;
  s.energy.rotor_area = 0.7;
  s.bt_metric = BestMetric::kPathLoss;
  const auto back = scenario_from_string(scenario_to_string(s));
  CHECK(back.seed == s.seed);
  CHECK(back.algorithm == Algorithm::kBalanced);
  CHECK(back.energy.rotor_area == 0.7);
  CHECK(back.bt_metric == BestMetric::kPathLoss);
  CHECK(scenario_to_string(back) == scenario_to_string(s));
}

TEST_CASE("set_parameter") {
  Scenario s;
  set_parameter(s, "users.count", "100");
  CHECK(s.num_users == 100);
  set_parameter(s, "algorithm", "bt");
  CHECK(s.algorithm == Algorithm::kBestThroughput);
  set_parameter(s, "seed", "77");
  CHECK(s.seed == 77);
  CHECK_THROWS_AS(set_parameter(s, "users.speed", "1"), ConfigError);
  CHECK_THROWS_AS(set_parameter(s, "uavs.capacity", "0.5"), ConfigError);
  CHECK(s.uav_capacity == 62);
}

TEST_CASE("algorithm names") {
  CHECK(algorithm_name(Algorithm::kProposed) == "proposed");
  CHECK(parse_algorithm("balanced") == Algorithm::kBalanced);
  const auto list = parse_algorithm_list("proposed,bt,balanced");
  REQUIRE(list.size() == 3);
  CHECK(list[1] == Algorithm::kBestThroughput);
  CHECK_THROWS_AS(parse_algorithm_list(""), ConfigError);
}
