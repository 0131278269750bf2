#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "uavnet/energy.hpp"
#include "uavnet/geometry.hpp"

namespace uavnet {

/// Square cost matrix; std::nullopt marks an unreachable pair.
class CostMatrix {
 public:
  explicit CostMatrix(std::size_t n) : n_(n), cost_(n * n) {}

  std::size_t size() const { return n_; }
  const std::optional<double>& at(std::size_t row, std::size_t col) const {
    return cost_[row * n_ + col];
  }
  // Throws InvalidArgument for negative or non-finite costs.
  void set(std::size_t row, std::size_t col, double cost);
  void set_unreachable(std::size_t row, std::size_t col) { cost_[row * n_ + col].reset(); }

 private:
  std::size_t n_;
  std::vector<std::optional<double>> cost_;
};

struct Matching {
  std::vector<std::size_t> col_of_row;  // permutation: row i -> column col_of_row[i]
  double total = 0.0;                   // sum of matched costs in row order
};

/// True iff a perfect matching exists over reachable pairs.
bool has_perfect_matching(const CostMatrix& cost);

/// Minimum-cost perfect matching over reachable pairs; std::nullopt when none
/// exists. Among optimal permutations the lexicographically smallest is
/// returned.
std::optional<Matching> hungarian(const CostMatrix& cost);

/// Relocation cost matrix: row i is target i, column j is UAV j. A pair is
/// unreachable when UAV j cannot fly there within `deadline` seconds.
CostMatrix build_cost_matrix(std::span<const Point3> old_positions,
                             std::span<const Point3> new_positions, double deadline,
                             std::span<const double> speeds, const EnergyParams& params);

struct RelocationPlan {
  std::vector<std::size_t> target_of_uav;  // UAV j flies to target target_of_uav[j]
  std::vector<double> energy_of_uav;       // joules
  double total_energy = 0.0;
};

/// Energy-minimal assignment of UAVs to new positions; throws
/// InfeasibleError when no assignment meets the deadline.
RelocationPlan plan_relocation(std::span<const Point3> old_positions,
                               std::span<const Point3> new_positions, double deadline,
                               std::span<const double> speeds, const EnergyParams& params);

}  // namespace uavnet
