#include "uavnet/clustering.hpp"

#include <algorithm>
#include <cmath>

#include "uavnet/errors.hpp"

namespace uavnet {

double priority(double waited, double deadline) {
  if (!(deadline > 0.0)) throw InvalidArgument("deadline must be positive");
  if (!(waited >= 0.0)) throw InvalidArgument("waited time must be >= 0");
  return waited / deadline;
}

std::optional<std::array<double, 2>> update_centroid(std::span<const WeightedMember> members) {
  double wsum = 0.0, x = 0.0, y = 0.0;
  for (const auto& m : members) {
    wsum += m.weight;
    x += m.weight * m.position.x;
    y += m.weight * m.position.y;
  }
  if (!(wsum > 0.0)) return std::nullopt;
  return std::array<double, 2>{x / wsum, y / wsum};
}

std::vector<std::size_t> priority_order(std::span<const UserState> users) {
  std::vector<std::size_t> order(users.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (users[a].priority != users[b].priority) return users[a].priority > users[b].priority;
    return users[a].id < users[b].id;
  });
  return order;
}

ClusterState cluster(std::span<const UserState> users, std::span<const UavState> uavs,
                     const BuildingGrid& grid, const SlotModel& model, const ClusterConfig& cfg) {
  if (cfg.max_iterations < 1) throw InvalidArgument("clustering needs at least one iteration");
  const std::size_t num_uavs = uavs.size();
  std::vector<int> caps(num_uavs);
  ClusterState state;
  state.centroids.resize(num_uavs);
  for (std::size_t m = 0; m < num_uavs; ++m) {
    caps[m] = uavs[m].capacity;
    state.centroids[m] = uavs[m].position;
  }
  state.assignment = AssignmentMatrix(users.size(), caps);

  const auto order = priority_order(users);
  const auto sets = search_point_sets(users, model);
  std::vector<std::vector<WeightedMember>> members(num_uavs);

  while (state.iterations < cfg.max_iterations) {
    ++state.iterations;
    state.assignment.clear();
    for (auto& list : members) list.clear();
    const RateTable rates = compute_rates(users, sets, state.centroids, grid, model);

    std::vector<char> free(num_uavs, 0);
    std::size_t free_count = 0;
    for (std::size_t m = 0; m < num_uavs; ++m) {
      free[m] = caps[m] > 0;
      free_count += free[m];
    }
    for (std::size_t k : order) {
      if (free_count == 0) break;
      std::optional<std::size_t> best;
      for (std::size_t m = 0; m < num_uavs; ++m) {
        if (!free[m]) continue;
        if (!best || rates.at(k, m) > rates.at(k, *best)) best = m;
      }
      const std::size_t m = *best;
      if (rates.at(k, m) > 0.0) {
        state.assignment.assign(m, k);
        members[m].push_back({users[k].position, rates.at(k, m)});
      }
      if (state.assignment.load(m) >= static_cast<std::size_t>(caps[m])) {
        free[m] = 0;
        --free_count;
      }
    }

    double moved = 0.0;
    for (std::size_t m = 0; m < num_uavs; ++m) {
      const auto next = update_centroid(members[m]);
      if (!next) continue;
      auto& c = state.centroids[m];
      moved = std::max(moved, std::hypot((*next)[0] - c.x, (*next)[1] - c.y));
      c.x = (*next)[0];
      c.y = (*next)[1];
    }
    if (moved < cfg.tolerance) break;
  }
  return state;
}

void bump_priorities(std::span<UserState> users, const AssignmentMatrix& assignment, double slot,
                     bool reset_on_service) {
  for (std::size_t k = 0; k < users.size(); ++k) {
    auto& u = users[k];
    if (assignment.links(k) == 0) {
      u.waited += slot;
      u.priority += slot / u.deadline;
      u.total_delay += slot;
    } else if (reset_on_service) {
      u.waited = 0.0;
      u.priority = 0.0;
    }
  }
}

}  // namespace uavnet
