#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/assignment_matrix.hpp"
#include "uavnet/clustering.hpp"
#include "uavnet/environment.hpp"
#include "uavnet/mobility.hpp"

namespace uavnet {

/// Best UAV per user by expected slot data (ties to the lowest UAV index);
/// std::nullopt for users no UAV can serve.
std::vector<std::optional<std::size_t>> best_uav_per_user(const RateTable& rates);

struct SacrificeEntry {
  std::size_t user;
  std::size_t uav;
  double sacrifice;  // bits lost versus the user's best UAV
};

/// Greedy capacity-constrained assignment: everyone goes to their best UAV,
/// over-full UAVs keep their highest-priority users, and spilled users are
/// placed by increasing sacrifice on UAVs with room left.
AssignmentMatrix greedy_assign(const RateTable& rates, std::span<const UserState> users,
                               std::span<const int> capacities);

AssignmentMatrix greedy_assign(std::span<const UserState> users, std::span<const UavState> uavs,
                               const BuildingGrid& grid, const SlotModel& model);

enum class BestMetric { kThroughput, kPathLoss };
enum class CapacityMode { kTruncate, kUnlimited };

/// Assigns each user to its best UAV by `metric` with no redistribution.
/// Under kTruncate an over-full UAV keeps its n_m best-metric users. Links
/// that carry no data are dropped.
AssignmentMatrix baseline_best_metric(std::span<const UserState> users,
                                      std::span<const UavState> uavs, const BuildingGrid& grid,
                                      const SlotModel& model, BestMetric metric,
                                      CapacityMode mode);

AssignmentMatrix baseline_best_metric(const RateTable& rates, std::span<const UserState> users,
                                      std::span<const Point3> uav_positions,
                                      std::span<const int> capacities, const ChannelParams& channel,
                                      BestMetric metric, CapacityMode mode);

/// Minimum total cost assignment of users to capacitated UAVs, serving
/// min(K, sum of capacities) users. `cost` is K x M, user-major.
std::vector<std::optional<std::size_t>> capacitated_min_cost_assignment(
    std::span<const double> cost, std::size_t users, std::span<const int> capacities);

/// Balanced assignment on squared ground distance to fixed centroids.
AssignmentMatrix balanced_assign(std::span<const UserState> users,
                                 std::span<const Point3> centroids,
                                 std::span<const int> capacities);

struct KMeansResult {
  std::vector<Point3> centroids;
  AssignmentMatrix assignment;
  int iterations = 0;
};

/// Distance-based K-means whose assignment step is a balanced min-cost
/// matching. Ignores LoS.
KMeansResult baseline_balanced_kmeans(std::span<const UserState> users,
                                      std::span<const UavState> uavs, const ClusterConfig& cfg);

/// Unconstrained K-means with the best-metric assignment step; centroids
/// move to the plain mean of their members.
KMeansResult best_metric_kmeans(std::span<const UserState> users, std::span<const UavState> uavs,
                                const BuildingGrid& grid, const SlotModel& model,
                                BestMetric metric, const ClusterConfig& cfg);

/// Removes assignments whose expected slot data is zero.
void drop_dead_links(AssignmentMatrix& assignment, const RateTable& rates);

/// Total expected slot data of an assignment.
double total_data(const AssignmentMatrix& assignment, const RateTable& rates);

}  // namespace uavnet
