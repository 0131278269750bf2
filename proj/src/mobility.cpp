#include "uavnet/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uavnet/errors.hpp"

namespace uavnet {
namespace {

double reflect(double v, double hi) {
  if (v < 0.0) v = -v;
  if (v > hi) v = 2.0 * hi - v;
  return std::clamp(v, 0.0, hi);
}

}  // namespace

int sector_count(double theta) {
  if (!(theta > 0.0)) throw InvalidArgument("sector angle must be positive");
  const double two_pi = 2.0 * std::numbers::pi;
  const double n = std::round(two_pi / theta);
  if (n < 1.0 || std::abs(n * theta - two_pi) > 1e-9 * two_pi)
    throw InvalidArgument("sector angle must divide 2*pi");
  return static_cast<int>(n);
}

SearchPointSet search_points(const UserState& user, double slot, const SearchGeometry& geo) {
  if (!(geo.step > 0.0)) throw InvalidArgument("search step must be positive");
  const int sectors = sector_count(geo.theta);
  SearchPointSet set;
  const double radius = user.speed * slot;
  if (!(radius > 0.0)) {
    set.points.push_back(user.position);
    set.probability = 1.0;
    set.sectors = 1;
    set.rings = 0;
    return set;
  }
  const int rings = static_cast<int>(std::ceil(radius / geo.step - 1e-12));
  set.sectors = sectors;
  set.rings = rings;
  set.points.reserve(static_cast<std::size_t>(rings) * sectors);
  for (int l = 1; l <= rings; ++l) {
    const double r = std::min(l * geo.step, radius);
    for (int s = 0; s < sectors; ++s) {
      const double angle = s * geo.theta;
      set.points.push_back({user.position.x + r * std::cos(angle),
                            user.position.y + r * std::sin(angle), user.position.z});
    }
  }
  set.probability = 1.0 / static_cast<double>(set.points.size());
  return set;
}

SearchPointSet search_points(const UserState& user, double slot, const SearchGeometry& geo,
                             const Region& region) {
  auto set = search_points(user, slot, geo);
  for (auto& p : set.points) {
    p.x = reflect(p.x, region.width);
    p.y = reflect(p.y, region.height);
  }
  return set;
}

double expected_rate(const Point3& uav, const SearchPointSet& pts, const BuildingGrid& grid,
                     const LinkBudget& link) {
  double sum = 0.0;
  for (const auto& p : pts.points) {
    if (!los_link(uav, p, grid)) continue;
    sum += pts.probability * link.throughput_bps(distance(uav, p), 1.0);
  }
  return sum;
}

double expected_data(std::size_t uav_id, double rate, const UserState& user, double slot,
                     double handover) {
  if (!(handover >= 0.0 && handover < slot))
    throw InvalidArgument("handover time must satisfy 0 <= handover < slot");
  const bool switching = !user.prev_uav || *user.prev_uav != uav_id;
  return (slot - (switching ? handover : 0.0)) * rate;
}

std::vector<SearchPointSet> search_point_sets(std::span<const UserState> users,
                                              const SlotModel& model) {
  std::vector<SearchPointSet> sets;
  sets.reserve(users.size());
  for (const auto& u : users) sets.push_back(search_points(u, model.slot, model.search, model.region));
  return sets;
}

RateTable compute_rates(std::span<const UserState> users, std::span<const SearchPointSet> sets,
                        std::span<const Point3> uav_positions, const BuildingGrid& grid,
                        const SlotModel& model) {
  RateTable table(users.size(), uav_positions.size());
  for (std::size_t k = 0; k < users.size(); ++k) {
    for (std::size_t m = 0; m < uav_positions.size(); ++m) {
      const double rate = expected_rate(uav_positions[m], sets[k], grid, model.link);
      table.at(k, m) = expected_data(m, rate, users[k], model.slot, model.handover);
    }
  }
  return table;
}

RateTable compute_rates(std::span<const UserState> users, std::span<const Point3> uav_positions,
                        const BuildingGrid& grid, const SlotModel& model) {
  const auto sets = search_point_sets(users, model);
  return compute_rates(users, sets, uav_positions, grid, model);
}

void advance_users(std::span<UserState> users, const Region& region, double slot,
                   const SearchGeometry& geo, Rng& rng) {
  for (auto& u : users) {
    const auto set = search_points(u, slot, geo, region);
    std::uniform_int_distribution<std::size_t> pick(0, set.points.size() - 1);
    u.position = set.points[pick(rng)];
    u.speed = u.max_speed > 0.0 ? uniform(rng, 0.0, u.max_speed) : 0.0;
  }
}

}  // namespace uavnet
