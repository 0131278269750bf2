#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/assignment_matrix.hpp"
#include "uavnet/environment.hpp"
#include "uavnet/mobility.hpp"

namespace uavnet {

struct ClusterConfig {
  int max_iterations = 50;
  double tolerance = 0.1;  // metres of centroid movement
};

struct ClusterState {
  std::vector<Point3> centroids;  // altitude of centroid m stays that of UAV m
  AssignmentMatrix assignment;    // from the last iteration
  int iterations = 0;
};

double priority(double waited, double deadline);

struct WeightedMember {
  Point3 position;
  double weight = 0.0;
};

/// Weighted mean of member ground positions; std::nullopt when the cluster
/// is empty or carries no weight.
std::optional<std::array<double, 2>> update_centroid(std::span<const WeightedMember> members);

/// User indices by descending priority, ties by ascending id.
std::vector<std::size_t> priority_order(std::span<const UserState> users);

/// Priority-aware, capacity-limited clustering weighted by expected slot
/// data. Starts from the current UAV positions.
ClusterState cluster(std::span<const UserState> users, std::span<const UavState> uavs,
                     const BuildingGrid& grid, const SlotModel& model, const ClusterConfig& cfg);

/// End-of-slot bookkeeping: unserved users wait another slot and gain
/// slot/deadline priority; served users restart their wait when
/// `reset_on_service` is set.
void bump_priorities(std::span<UserState> users, const AssignmentMatrix& assignment, double slot,
                     bool reset_on_service = true);

}  // namespace uavnet
