#include <doctest.h>

#include <uavnet/clustering.hpp>
#include <uavnet/errors.hpp>

#include "support.hpp"

using namespace uavnet;
using uavnet::test::slot_model;
using uavnet::test::uav_at;
using uavnet::test::user_at;

TEST_CASE("priority") {
  CHECK(priority(0.0, 5.0) == 0.0);
  CHECK(priority(5.0, 5.0) == 1.0);
  CHECK(priority(2.0, 4.0) == 0.5);
  CHECK_THROWS_AS(priority(1.0, 0.0), InvalidArgument);
}

TEST_CASE("update_centroid") {
  const std::vector<WeightedMember> one{{{4, 7, 1.5}, 2.0}};
  CHECK((*update_centroid(one))[0] == 4.0);
  CHECK((*update_centroid(one))[1] == 7.0);

  const std::vector<WeightedMember> pair{{{0, 0, 1.5}, 1.0}, {{2, 0, 1.5}, 1.0}};
  CHECK((*update_centroid(pair))[0] == doctest::Approx(1.0));
  CHECK((*update_centroid(pair))[1] == doctest::Approx(0.0));

  const std::vector<WeightedMember> skew{{{0, 0, 1.5}, 1.0}, {{4, 0, 1.5}, 3.0}};
  CHECK((*update_centroid(skew))[0] == doctest::Approx(3.0));

  CHECK_FALSE(update_centroid({}));
  const std::vector<WeightedMember> weightless{{{3, 3, 1.5}, 0.0}};
  CHECK_FALSE(update_centroid(weightless));
}

TEST_CASE("priority_order breaks ties by id") {
  std::vector<UserState> users{user_at(0, 0, 0, 0.2), user_at(1, 0, 0, 0.5),
                               user_at(2, 0, 0, 0.2), user_at(3, 0, 0, 0.9)};
  CHECK(priority_order(users) == std::vector<std::size_t>{3, 1, 0, 2});
}

TEST_CASE("cluster with every link blocked") {
  const Region region{100.0, 100.0};
  const BuildingGrid grid(region, 10.0, std::vector<double>(100, 500.0));
  std::vector<UserState> users{user_at(0, 15, 15), user_at(1, 75, 55)};
  std::vector<UavState> uavs{uav_at(0, 50, 50, 100, 5), uav_at(1, 20, 80, 100, 5)};
  const auto state = cluster(users, uavs, grid, slot_model(region), ClusterConfig{});
  CHECK(state.assignment.served() == 0);
  CHECK(state.centroids[0] == uavs[0].position);
  CHECK(state.centroids[1] == uavs[1].position);
}

TEST_CASE("cluster assigns everyone when capacity never binds") {
  const Region region{200.0, 200.0};
  const auto grid = BuildingGrid::flat(region, 10.0);
  std::vector<UserState> users;
  for (std::size_t k = 0; k < 20; ++k) users.push_back(user_at(k, 10.0 + 9.0 * k, 30.0 + 5.0 * k));
  std::vector<UavState> uavs{uav_at(0, 100, 100, 50, 20)};
  const auto state = cluster(users, uavs, grid, slot_model(region), ClusterConfig{});
  CHECK(state.assignment.served() == 20);
  CHECK(state.assignment.feasible());
  CHECK(state.centroids[0].z == 50.0);
}

TEST_CASE("cluster with unit capacities serves the two highest priorities") {
  const Region region{300.0, 100.0};
  const auto grid = BuildingGrid::flat(region, 10.0);
  std::vector<UserState> users{user_at(0, 150, 50, 0.1), user_at(1, 60, 50, 0.8),
                               user_at(2, 240, 50, 0.5)};
  std::vector<UavState> uavs{uav_at(0, 80, 50, 30, 1), uav_at(1, 220, 50, 30, 1)};
  const auto state = cluster(users, uavs, grid, slot_model(region), ClusterConfig{});
  CHECK(state.assignment.serving(1) == std::optional<std::size_t>{0});
  CHECK(state.assignment.serving(2) == std::optional<std::size_t>{1});
  CHECK_FALSE(state.assignment.serving(0));
  CHECK(state.centroids[0].x == doctest::Approx(60.0));
  CHECK(state.centroids[1].x == doctest::Approx(240.0));
  CHECK(state.assignment.feasible());
}

TEST_CASE("cluster is deterministic and leaves priorities alone") {
  const Region region{300.0, 300.0};
  auto city = make_rng(6, Stream::kCity);
  const auto grid = generate_city(region, CityParams{}, city);
  auto rng = make_rng(6, Stream::kUsers);
  std::vector<UserState> users;
  for (std::size_t k = 0; k < 120; ++k) {
    auto u = user_at(k, uniform(rng, 0, 300), uniform(rng, 0, 300), uniform(rng, 0, 1));
    u.speed = uniform(rng, 0, 3);
    users.push_back(u);
  }
  std::vector<UavState> uavs;
  for (std::size_t m = 0; m < 4; ++m)
    uavs.push_back(uav_at(m, uniform(rng, 0, 300), uniform(rng, 0, 300), uniform(rng, 60, 150), 25));
  const auto before = users;
  const auto a = cluster(users, uavs, grid, slot_model(region), ClusterConfig{});
  const auto b = cluster(users, uavs, grid, slot_model(region), ClusterConfig{});
  CHECK(a.iterations == b.iterations);
  CHECK(a.iterations <= 50);
  for (std::size_t m = 0; m < 4; ++m) CHECK(a.centroids[m] == b.centroids[m]);
  for (std::size_t k = 0; k < users.size(); ++k) {
    CHECK(a.assignment.serving(k) == b.assignment.serving(k));
    CHECK(users[k].priority == before[k].priority);
  }
  CHECK(a.assignment.feasible());
  CHECK(a.assignment.served() <= 100);
}

TEST_CASE("bump_priorities") {
  std::vector<UserState> users{user_at(0, 0, 0), user_at(1, 0, 0)};
  AssignmentMatrix served(2, {2});
  served.assign(0, 0);
  served.assign(0, 1);
  bump_priorities(users, served, 1.0);
  CHECK(users[0].priority == 0.0);
  CHECK(users[1].waited == 0.0);

  AssignmentMatrix none(2, {2});
  bump_priorities(users, none, 1.0);
  CHECK(users[0].priority == doctest::Approx(0.1));
  bump_priorities(users, none, 1.0);
  CHECK(users[0].priority == doctest::Approx(0.2));
  CHECK(users[0].waited == 2.0);
  CHECK(users[0].total_delay == 2.0);

  // Service restarts the wait but not the cumulative delay.
  bump_priorities(users, served, 1.0);
  CHECK(users[0].waited == 0.0);
  CHECK(users[0].priority == 0.0);
  CHECK(users[0].total_delay == 2.0);

  bump_priorities(users, none, 1.0);
  bump_priorities(users, served, 1.0, false);
  CHECK(users[1].priority == doctest::Approx(0.1));
}
