#include "uavnet/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>

#include "uavnet/errors.hpp"

namespace uavnet {
namespace {

std::vector<int> capacities_of(std::span<const UavState> uavs) {
  std::vector<int> caps;
  caps.reserve(uavs.size());
  for (const auto& u : uavs) caps.push_back(u.capacity);
  return caps;
}

std::vector<Point3> positions_of(std::span<const UavState> uavs) {
  std::vector<Point3> pos;
  pos.reserve(uavs.size());
  for (const auto& u : uavs) pos.push_back(u.position);
  return pos;
}

bool by_priority(const UserState& a, const UserState& b) {
  if (a.priority != b.priority) return a.priority > b.priority;
  return a.id < b.id;
}

// Moves each centroid to the mean of its members' ground positions.
double move_to_means(std::vector<Point3>& centroids, const AssignmentMatrix& a,
                     std::span<const UserState> users) {
  double moved = 0.0;
  for (std::size_t m = 0; m < centroids.size(); ++m) {
    double x = 0.0, y = 0.0;
    std::size_t n = 0;
    for (std::size_t k = 0; k < users.size(); ++k) {
      if (!a.at(m, k)) continue;
      x += users[k].position.x;
      y += users[k].position.y;
      ++n;
    }
    if (n == 0) continue;
    x /= static_cast<double>(n);
    y /= static_cast<double>(n);
    moved = std::max(moved, std::hypot(x - centroids[m].x, y - centroids[m].y));
    centroids[m].x = x;
    centroids[m].y = y;
  }
  return moved;
}

}  // namespace

std::vector<std::optional<std::size_t>> best_uav_per_user(const RateTable& rates) {
  std::vector<std::optional<std::size_t>> best(rates.users());
  for (std::size_t k = 0; k < rates.users(); ++k) {
    double top = 0.0;
    for (std::size_t m = 0; m < rates.uavs(); ++m) {
      if (rates.at(k, m) > top) {
        top = rates.at(k, m);
        best[k] = m;
      }
    }
  }
  return best;
}

AssignmentMatrix greedy_assign(const RateTable& rates, std::span<const UserState> users,
                               std::span<const int> capacities) {
  const std::size_t num_users = rates.users();
  const std::size_t num_uavs = rates.uavs();
  if (users.size() != num_users || capacities.size() != num_uavs)
    throw InvalidArgument("greedy_assign: rate table does not match users/UAVs");

  AssignmentMatrix out(num_users, {capacities.begin(), capacities.end()});

  // Everyone to their best UAV.
  const auto best = best_uav_per_user(rates);
  std::vector<std::vector<std::size_t>> members(num_uavs);
  for (std::size_t k = 0; k < num_users; ++k)
    if (best[k]) members[*best[k]].push_back(k);

  // Full UAVs keep their top-priority users; the rest spill.
  std::vector<char> free(num_uavs, 0);
  std::vector<std::size_t> spilled;
  for (std::size_t m = 0; m < num_uavs; ++m) {
    auto& list = members[m];
    const auto cap = static_cast<std::size_t>(capacities[m]);
    if (list.size() >= cap) {
      std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
        return by_priority(users[a], users[b]);
      });
      spilled.insert(spilled.end(), list.begin() + static_cast<std::ptrdiff_t>(cap), list.end());
      list.resize(cap);
    } else {
      free[m] = 1;
    }
    for (std::size_t k : list) out.assign(m, k);
  }

  // Sacrifices against the initial Free set, taken in ascending order with
  // (user, uav) tie-breaks; pairs whose UAV filled up meanwhile are skipped.
  std::vector<SacrificeEntry> sacrifices;
  for (std::size_t k : spilled) {
    const double top = rates.at(k, *best[k]);
    for (std::size_t m = 0; m < num_uavs; ++m)
      if (free[m]) sacrifices.push_back({k, m, top - rates.at(k, m)});
  }
  std::sort(sacrifices.begin(), sacrifices.end(), [](const auto& a, const auto& b) {
    return std::tie(a.sacrifice, a.user, a.uav) < std::tie(b.sacrifice, b.user, b.uav);
  });

  std::vector<char> pending(num_users, 0);
  for (std::size_t k : spilled) pending[k] = 1;
  for (const auto& s : sacrifices) {
    if (!pending[s.user] || !free[s.uav]) continue;
    pending[s.user] = 0;
    if (rates.at(s.user, s.uav) > 0.0) out.assign(s.uav, s.user);
    if (out.load(s.uav) >= static_cast<std::size_t>(capacities[s.uav])) free[s.uav] = 0;
  }
  // Users still pending once every UAV is full stay unserved.
  return out;
}

AssignmentMatrix greedy_assign(std::span<const UserState> users, std::span<const UavState> uavs,
                               const BuildingGrid& grid, const SlotModel& model) {
  const auto pos = positions_of(uavs);
  const auto caps = capacities_of(uavs);
  return greedy_assign(compute_rates(users, pos, grid, model), users, caps);
}

AssignmentMatrix baseline_best_metric(const RateTable& rates, std::span<const UserState> users,
                                      std::span<const Point3> uav_positions,
                                      std::span<const int> capacities, const ChannelParams& channel,
                                      BestMetric metric, CapacityMode mode) {
  const std::size_t num_users = rates.users();
  const std::size_t num_uavs = rates.uavs();
  if (users.size() != num_users || capacities.size() != num_uavs ||
      uav_positions.size() != num_uavs)
    throw InvalidArgument("baseline_best_metric: rate table does not match users/UAVs");

  // score(k, m): larger is better.
  auto score = [&](std::size_t k, std::size_t m) {
    if (metric == BestMetric::kThroughput) return rates.at(k, m);
    return -path_loss_db(distance(uav_positions[m], users[k].position), channel);
  };

  std::vector<std::vector<std::size_t>> members(num_uavs);
  if (metric == BestMetric::kThroughput) {
    const auto best = best_uav_per_user(rates);
    for (std::size_t k = 0; k < num_users; ++k)
      if (best[k]) members[*best[k]].push_back(k);
  } else {
    for (std::size_t k = 0; k < num_users; ++k) {
      std::size_t best = 0;
      for (std::size_t m = 1; m < num_uavs; ++m)
        if (score(k, m) > score(k, best)) best = m;
      if (num_uavs > 0) members[best].push_back(k);
    }
  }

  AssignmentMatrix out(num_users, {capacities.begin(), capacities.end()});
  for (std::size_t m = 0; m < num_uavs; ++m) {
    auto& list = members[m];
    const auto cap = static_cast<std::size_t>(capacities[m]);
    if (mode == CapacityMode::kTruncate && list.size() > cap) {
      std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
        const double sa = score(a, m), sb = score(b, m);
        if (sa != sb) return sa > sb;
        return users[a].id < users[b].id;
      });
      list.resize(cap);
    }
    for (std::size_t k : list) out.assign(m, k);
  }
  drop_dead_links(out, rates);
  return out;
}

AssignmentMatrix baseline_best_metric(std::span<const UserState> users,
                                      std::span<const UavState> uavs, const BuildingGrid& grid,
                                      const SlotModel& model, BestMetric metric,
                                      CapacityMode mode) {
  const auto pos = positions_of(uavs);
  const auto caps = capacities_of(uavs);
  const auto rates = compute_rates(users, pos, grid, model);
  return baseline_best_metric(rates, users, pos, caps, model.link.params(), metric, mode);
}

std::vector<std::optional<std::size_t>> capacitated_min_cost_assignment(
    std::span<const double> cost, std::size_t users, std::span<const int> capacities) {
  const std::size_t uavs = capacities.size();
  if (cost.size() != users * uavs) throw InvalidArgument("cost table must be users x UAVs");

  // Successive shortest paths on source -> user -> UAV -> sink with
  // Johnson potentials; one unit of flow per augmentation.
  struct Edge {
    std::size_t to;
    int cap;
    double cost;
  };
  const std::size_t source = 0, sink = users + uavs + 1, nodes = users + uavs + 2;
  std::vector<Edge> edges;
  std::vector<std::vector<std::size_t>> adj(nodes);
  auto add = [&](std::size_t a, std::size_t b, int cap, double c) {
    adj[a].push_back(edges.size());
    edges.push_back({b, cap, c});
    adj[b].push_back(edges.size());
    edges.push_back({a, 0, -c});
  };
  for (std::size_t k = 0; k < users; ++k) add(source, 1 + k, 1, 0.0);
  for (std::size_t k = 0; k < users; ++k)
    for (std::size_t m = 0; m < uavs; ++m) add(1 + k, 1 + users + m, 1, cost[k * uavs + m]);
  long total_cap = 0;
  for (std::size_t m = 0; m < uavs; ++m) {
    if (capacities[m] < 0) throw InvalidArgument("UAV capacity must be >= 0");
    add(1 + users + m, sink, capacities[m], 0.0);
    total_cap += capacities[m];
  }

  const auto flow = std::min<long>(static_cast<long>(users), total_cap);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> potential(nodes, 0.0), dist(nodes);
  std::vector<std::size_t> via(nodes);
  using Item = std::pair<double, std::size_t>;
  for (long f = 0; f < flow; ++f) {
    std::fill(dist.begin(), dist.end(), kInf);
    dist[source] = 0.0;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.push({0.0, source});
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (d > dist[v]) continue;
      for (std::size_t e : adj[v]) {
        const Edge& edge = edges[e];
        if (edge.cap <= 0) continue;
        const double reduced = std::max(0.0, edge.cost + potential[v] - potential[edge.to]);
        if (dist[v] + reduced < dist[edge.to]) {
          dist[edge.to] = dist[v] + reduced;
          via[edge.to] = e;
          queue.push({dist[edge.to], edge.to});
        }
      }
    }
    if (dist[sink] == kInf) break;
    for (std::size_t v = 0; v < nodes; ++v)
      if (dist[v] < kInf) potential[v] += dist[v];
    for (std::size_t v = sink; v != source;) {
      const std::size_t e = via[v];
      edges[e].cap -= 1;
      edges[e ^ 1].cap += 1;
      v = edges[e ^ 1].to;
    }
  }

  std::vector<std::optional<std::size_t>> out(users);
  for (std::size_t k = 0; k < users; ++k) {
    for (std::size_t e : adj[1 + k]) {
      const Edge& edge = edges[e];
      if (edge.to > users && edge.to <= users + uavs && edge.cap == 0 && (e % 2 == 0))
        out[k] = edge.to - 1 - users;
    }
  }
  return out;
}

AssignmentMatrix balanced_assign(std::span<const UserState> users,
                                 std::span<const Point3> centroids,
                                 std::span<const int> capacities) {
  const std::size_t num_uavs = centroids.size();
  if (capacities.size() != num_uavs) throw InvalidArgument("one capacity per centroid");
  std::vector<double> cost(users.size() * num_uavs);
  for (std::size_t k = 0; k < users.size(); ++k) {
    for (std::size_t m = 0; m < num_uavs; ++m) {
      const double dx = users[k].position.x - centroids[m].x;
      const double dy = users[k].position.y - centroids[m].y;
      cost[k * num_uavs + m] = dx * dx + dy * dy;
    }
  }
  const auto serving = capacitated_min_cost_assignment(cost, users.size(), capacities);
  AssignmentMatrix out(users.size(), {capacities.begin(), capacities.end()});
  for (std::size_t k = 0; k < users.size(); ++k)
    if (serving[k]) out.assign(*serving[k], k);
  return out;
}

KMeansResult baseline_balanced_kmeans(std::span<const UserState> users,
                                      std::span<const UavState> uavs, const ClusterConfig& cfg) {
  if (cfg.max_iterations < 1) throw InvalidArgument("K-means needs at least one iteration");
  KMeansResult r;
  r.centroids = positions_of(uavs);
  const auto caps = capacities_of(uavs);
  while (r.iterations < cfg.max_iterations) {
    ++r.iterations;
    r.assignment = balanced_assign(users, r.centroids, caps);
    if (move_to_means(r.centroids, r.assignment, users) < cfg.tolerance) break;
  }
  return r;
}

KMeansResult best_metric_kmeans(std::span<const UserState> users, std::span<const UavState> uavs,
                                const BuildingGrid& grid, const SlotModel& model,
                                BestMetric metric, const ClusterConfig& cfg) {
  if (cfg.max_iterations < 1) throw InvalidArgument("K-means needs at least one iteration");
  KMeansResult r;
  r.centroids = positions_of(uavs);
  const auto caps = capacities_of(uavs);
  const auto sets = search_point_sets(users, model);
  while (r.iterations < cfg.max_iterations) {
    ++r.iterations;
    const auto rates = compute_rates(users, sets, r.centroids, grid, model);
    r.assignment = baseline_best_metric(rates, users, r.centroids, caps, model.link.params(),
                                        metric, CapacityMode::kUnlimited);
    if (move_to_means(r.centroids, r.assignment, users) < cfg.tolerance) break;
  }
  return r;
}

void drop_dead_links(AssignmentMatrix& assignment, const RateTable& rates) {
  for (std::size_t k = 0; k < assignment.users(); ++k)
    for (std::size_t m = 0; m < assignment.uavs(); ++m)
      if (assignment.at(m, k) && !(rates.at(k, m) > 0.0)) assignment.unassign(m, k);
}

double total_data(const AssignmentMatrix& assignment, const RateTable& rates) {
  double sum = 0.0;
  for (std::size_t k = 0; k < assignment.users(); ++k)
    for (std::size_t m = 0; m < assignment.uavs(); ++m)
      if (assignment.at(m, k)) sum += rates.at(k, m);
  return sum;
}

}  // namespace uavnet
