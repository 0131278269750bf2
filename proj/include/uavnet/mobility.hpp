#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/channel.hpp"
#include "uavnet/environment.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

struct UserState {
  std::size_t id = 0;
  Point3 position;
  double speed = 0.0;      // speed during the current slot
  double max_speed = 0.0;
  double deadline = 1.0;   // tolerable wait t_k
  double waited = 0.0;     // current wait t_w; drives priority
  double priority = 0.0;   // waited / deadline
  double total_delay = 0.0;  // unserved time over the whole run, never reset
  std::optional<std::size_t> prev_uav;  // serving UAV in the previous slot
};

struct UavState {
  std::size_t id = 0;
  Point3 position;
  int capacity = 1;
  double cruise_speed = 10.0;
};

struct SearchGeometry {
  double theta = 0.7853981633974483;  // sector angle, must divide 2*pi
  double step = 1.0;                  // ring spacing, metres
};

/// Equally likely end-of-slot positions of a user: intersections of
/// concentric rings with sector rays inside the uncertainty circle.
struct SearchPointSet {
  std::vector<Point3> points;
  double probability = 1.0;
  int sectors = 1;
  int rings = 0;
};

/// Number of sectors 2*pi/theta; throws unless theta divides 2*pi.
int sector_count(double theta);

SearchPointSet search_points(const UserState& user, double slot, const SearchGeometry& geo);

/// Same construction with points falling outside `region` reflected back in.
SearchPointSet search_points(const UserState& user, double slot, const SearchGeometry& geo,
                             const Region& region);

/// Expected rate (bit/s) over the search points, using mean fading gain.
double expected_rate(const Point3& uav, const SearchPointSet& pts, const BuildingGrid& grid,
                     const LinkBudget& link);

/// Data (bits) carried in one slot, less the handover time when the user
/// switches UAV or had none in the previous slot.
double expected_data(std::size_t uav_id, double rate, const UserState& user, double slot,
                     double handover);

/// Everything needed to evaluate expected slot data for (UAV, user) pairs.
struct SlotModel {
  LinkBudget link;
  double slot = 1.0;
  double handover = 0.1;
  SearchGeometry search;
  Region region;
};

/// K x M table of expected slot data (bits), user-major.
class RateTable {
 public:
  RateTable() = default;
  RateTable(std::size_t users, std::size_t uavs)
      : users_(users), uavs_(uavs), data_(users * uavs, 0.0) {}

  std::size_t users() const { return users_; }
  std::size_t uavs() const { return uavs_; }
  double& at(std::size_t user, std::size_t uav) { return data_[user * uavs_ + uav]; }
  double at(std::size_t user, std::size_t uav) const { return data_[user * uavs_ + uav]; }

 private:
  std::size_t users_ = 0;
  std::size_t uavs_ = 0;
  std::vector<double> data_;
};

std::vector<SearchPointSet> search_point_sets(std::span<const UserState> users,
                                              const SlotModel& model);

/// Expected slot data for every pair; UAV m is identified by its index for
/// the handover indicator.
RateTable compute_rates(std::span<const UserState> users, std::span<const SearchPointSet> sets,
                        std::span<const Point3> uav_positions, const BuildingGrid& grid,
                        const SlotModel& model);

RateTable compute_rates(std::span<const UserState> users, std::span<const Point3> uav_positions,
                        const BuildingGrid& grid, const SlotModel& model);

/// Moves every user to a uniformly drawn search point of its current
/// uncertainty circle, then redraws its speed in [0, max_speed].
void advance_users(std::span<UserState> users, const Region& region, double slot,
                   const SearchGeometry& geo, Rng& rng);

}  // namespace uavnet
