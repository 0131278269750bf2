#include <doctest.h>

#include <uavnet/assignment.hpp>
#include <uavnet/errors.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

#include "../oracles/brute_force.hpp"
#include "support.hpp"

using namespace uavnet;
using uavnet::test::slot_model;
using uavnet::test::uav_at;
using uavnet::test::user_at;

namespace {

RateTable table(std::size_t k, std::size_t m, std::initializer_list<double> values) {
  RateTable t(k, m);
  auto it = values.begin();
  for (std::size_t u = 0; u < k; ++u)
    for (std::size_t j = 0; j < m; ++j) t.at(u, j) = *it++;
  return t;
}

double squared_ground(const UserState& u, const Point3& c) {
  const double dx = u.position.x - c.x, dy = u.position.y - c.y;
  return dx * dx + dy * dy;
}

// Smallest total cost over all ways to serve min(K, sum caps) users.
double brute_min_cost(const std::vector<double>& cost, std::size_t users,
                      const std::vector<int>& caps) {
  const std::size_t m = caps.size();
  int total_cap = 0;
  for (int c : caps) total_cap += c;
  const auto need = std::min<std::size_t>(users, static_cast<std::size_t>(total_cap));
  std::vector<int> load(m, 0);
  double best = std::numeric_limits<double>::infinity();
  auto rec = [&](auto&& self, std::size_t k, std::size_t served, double total) -> void {
    if (served + (users - k) < need) return;
    if (k == users) {
      if (served == need) best = std::min(best, total);
      return;
    }
    self(self, k + 1, served, total);
    for (std::size_t j = 0; j < m; ++j) {
      if (load[j] >= caps[j]) continue;
      ++load[j];
      self(self, k + 1, served + 1, total + cost[k * m + j]);
      --load[j];
    }
  };
  rec(rec, 0, 0, 0.0);
  return best;
}

}  // namespace

TEST_CASE("best UAV per user") {
  const auto t = table(3, 2, {1, 2, 5, 5, 0, 0});
  const auto best = best_uav_per_user(t);
  CHECK(best[0] == std::optional<std::size_t>{1});
  CHECK(best[1] == std::optional<std::size_t>{0});
  CHECK_FALSE(best[2]);
}

TEST_CASE("greedy hand trace with unit capacities") {
  const auto rates = table(3, 2, {10, 9, 8, 7, 6, 5});
  std::vector<UserState> users{user_at(0, 0, 0, 0.9), user_at(1, 0, 0, 0.5),
                               user_at(2, 0, 0, 0.1)};
  const std::vector<int> caps{1, 1};
  const auto a = greedy_assign(rates, users, caps);
  CHECK(a.serving(0) == std::optional<std::size_t>{0});
  CHECK(a.serving(1) == std::optional<std::size_t>{1});
  CHECK_FALSE(a.serving(2));
  CHECK(a.feasible());
}

TEST_CASE("greedy without contention equals per-user argmax") {
  const auto rates = table(4, 3, {1, 5, 2, 7, 1, 1, 0, 0, 3, 2, 2, 1});
  std::vector<UserState> users;
  for (std::size_t k = 0; k < 4; ++k) users.push_back(user_at(k, 0, 0));
  const std::vector<int> caps{5, 5, 5};
  const auto a = greedy_assign(rates, users, caps);
  const auto best = best_uav_per_user(rates);
  for (std::size_t k = 0; k < 4; ++k) CHECK(a.serving(k) == best[k]);
}

TEST_CASE("greedy with every link dead") {
  const RateTable rates(5, 2);
  std::vector<UserState> users;
  for (std::size_t k = 0; k < 5; ++k) users.push_back(user_at(k, 0, 0));
  const std::vector<int> caps{2, 2};
  CHECK(greedy_assign(rates, users, caps).served() == 0);
}

TEST_CASE("greedy keeps the highest priorities on full UAVs") {
  auto rng = make_rng(12, Stream::kUsers);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 30, m = 3;
    RateTable rates(k, m);
    std::vector<UserState> users;
    for (std::size_t u = 0; u < k; ++u) {
      users.push_back(user_at(u, 0, 0, std::floor(uniform(rng, 0, 4)) / 4));
      for (std::size_t j = 0; j < m; ++j)
        rates.at(u, j) = uniform(rng, 0, 1) < 0.3 ? 0.0 : uniform(rng, 1, 100);
    }
    const std::vector<int> caps{4, 6, 8};
    const auto a = greedy_assign(rates, users, caps);
    REQUIRE(a.feasible());
    const auto best = best_uav_per_user(rates);
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<std::size_t> wanted;
      for (std::size_t u = 0; u < k; ++u)
        if (best[u] == j) wanted.push_back(u);
      if (wanted.size() < static_cast<std::size_t>(caps[j])) continue;
      for (std::size_t kept : wanted) {
        if (a.serving(kept) != std::optional<std::size_t>{j}) continue;
        for (std::size_t spilled : wanted) {
          if (a.serving(spilled) == std::optional<std::size_t>{j}) continue;
          const auto& hi = users[kept];
          const auto& lo = users[spilled];
          CHECK((hi.priority > lo.priority || (hi.priority == lo.priority && hi.id < lo.id)));
        }
      }
    }
    for (std::size_t u = 0; u < k; ++u)
      if (auto s = a.serving(u)) CHECK(rates.at(u, *s) > 0.0);
  }
}

TEST_CASE("best-metric baseline") {
  const Region region{300.0, 100.0};
  const auto flat = BuildingGrid::flat(region, 10.0);
  const auto model = slot_model(region);
  std::vector<UserState> users;
  for (std::size_t k = 0; k < 10; ++k) users.push_back(user_at(k, 10.0 + 30.0 * k, 50));
  std::vector<UavState> uavs{uav_at(0, 50, 50, 40, 10), uav_at(1, 250, 50, 40, 10)};

  const auto by_pl = baseline_best_metric(users, uavs, flat, model, BestMetric::kPathLoss,
                                          CapacityMode::kTruncate);
  for (std::size_t k = 0; k < users.size(); ++k) {
    const std::size_t nearest =
        ground_distance(users[k].position, uavs[0].position) <=
                ground_distance(users[k].position, uavs[1].position)
            ? 0
            : 1;
    CHECK(by_pl.serving(k) == std::optional<std::size_t>{nearest});
  }

  // Capacity one: both users prefer UAV 0, only one stays.
  std::vector<UserState> pair{user_at(0, 55, 50), user_at(1, 45, 50)};
  std::vector<UavState> one{uav_at(0, 50, 50, 40, 1), uav_at(1, 290, 90, 40, 1)};
  const auto t = baseline_best_metric(pair, one, flat, model, BestMetric::kThroughput,
                                      CapacityMode::kTruncate);
  CHECK(t.served() == 1);
  CHECK(t.load(1) == 0);
  const auto u = baseline_best_metric(pair, one, flat, model, BestMetric::kThroughput,
                                      CapacityMode::kUnlimited);
  CHECK(u.load(0) == 2);
}

TEST_CASE("capacitated min-cost assignment matches enumeration") {
  auto rng = make_rng(19, Stream::kUsers);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 6;
    const std::size_t m = 1 + trial % 3;
    std::vector<int> caps;
    for (std::size_t j = 0; j < m; ++j) caps.push_back(static_cast<int>(uniform(rng, 0, 3.99)));
    std::vector<double> cost(k * m);
    for (auto& c : cost) c = uniform(rng, 0, 50);
    const auto got = capacitated_min_cost_assignment(cost, k, caps);
    std::vector<int> load(m, 0);
    double total = 0.0;
    std::size_t served = 0;
    for (std::size_t u = 0; u < k; ++u) {
      if (!got[u]) continue;
      ++load[*got[u]];
      total += cost[u * m + *got[u]];
      ++served;
    }
    int cap_sum = 0;
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(load[j] <= caps[j]);
      cap_sum += caps[j];
    }
    CHECK(served == std::min<std::size_t>(k, static_cast<std::size_t>(cap_sum)));
    CHECK(total == doctest::Approx(brute_min_cost(cost, k, caps)).epsilon(1e-9));
  }
}

TEST_CASE("balanced assignment on a small instance") {
  auto rng = make_rng(21, Stream::kUsers);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<UserState> users;
    for (std::size_t k = 0; k < 6; ++k)
      users.push_back(user_at(k, uniform(rng, 0, 100), uniform(rng, 0, 100)));
    const std::vector<Point3> centroids{{uniform(rng, 0, 100), uniform(rng, 0, 100), 30},
                                        {uniform(rng, 0, 100), uniform(rng, 0, 100), 30}};
    const std::vector<int> caps{3, 3};
    const auto a = balanced_assign(users, centroids, caps);
    CHECK(a.served() == 6);
    CHECK(a.load(0) == 3);
    double total = 0.0;
    for (std::size_t k = 0; k < 6; ++k) total += squared_ground(users[k], centroids[*a.serving(k)]);
    // Every balanced 3/3 partition.
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < 64; ++mask) {
      if (__builtin_popcount(mask) != 3) continue;
      double t = 0.0;
      for (std::size_t k = 0; k < 6; ++k) t += squared_ground(users[k], centroids[(mask >> k) & 1u]);
      best = std::min(best, t);
    }
    CHECK(total == doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("balanced k-means") {
  std::vector<UserState> users{user_at(0, 10, 10), user_at(1, 90, 90)};
  std::vector<UavState> uavs{uav_at(0, 10, 10, 30, 1), uav_at(1, 90, 90, 30, 1)};
  const auto r = baseline_balanced_kmeans(users, uavs, ClusterConfig{});
  CHECK(r.assignment.serving(0) == std::optional<std::size_t>{0});
  CHECK(r.assignment.serving(1) == std::optional<std::size_t>{1});
  CHECK(r.centroids[0] == uavs[0].position);

  auto rng = make_rng(2, Stream::kUsers);
  std::vector<UserState> many;
  for (std::size_t k = 0; k < 40; ++k) many.push_back(user_at(k, uniform(rng, 0, 300), uniform(rng, 0, 300)));
  std::vector<UavState> three{uav_at(0, 10, 10, 30, 12), uav_at(1, 150, 150, 40, 12),
                              uav_at(2, 290, 10, 50, 12)};
  const auto b = baseline_balanced_kmeans(many, three, ClusterConfig{});
  CHECK(b.assignment.served() == 36);
  for (std::size_t m = 0; m < 3; ++m) {
    CHECK(b.assignment.load(m) == 12);
    CHECK(b.centroids[m].z == three[m].position.z);
  }
}

TEST_CASE("greedy is feasible and bounded by the exhaustive optimum") {
  auto rng = make_rng(29, Stream::kUsers);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t k = 2 + trial % 9;
    const std::size_t m = 1 + trial % 3;
    RateTable rates(k, m);
    std::vector<UserState> users;
    for (std::size_t u = 0; u < k; ++u) {
      users.push_back(user_at(u, 0, 0));
      for (std::size_t j = 0; j < m; ++j)
        rates.at(u, j) = uniform(rng, 0, 1) < 0.3 ? 0.0 : uniform(rng, 1, 100);
    }
    std::vector<int> caps;
    for (std::size_t j = 0; j < m; ++j) caps.push_back(1 + static_cast<int>(uniform(rng, 0, 3.99)));
    const auto g = greedy_assign(rates, users, caps);
    CHECK(g.feasible());
    CHECK(total_data(g, rates) <= oracle::best_assignment_total(rates, caps) + 1e-9);
  }
}
