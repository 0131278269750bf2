#include "uavnet/matching.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "uavnet/errors.hpp"

namespace uavnet {

void CostMatrix::set(std::size_t row, std::size_t col, double cost) {
  if (!(cost >= 0.0) || !std::isfinite(cost))
    throw InvalidArgument("costs must be finite and >= 0");
  cost_[row * n_ + col] = cost;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool augment(const CostMatrix& c, std::size_t row, std::vector<int>& row_of_col,
             std::vector<char>& seen) {
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (!c.at(row, j) || seen[j]) continue;
    seen[j] = 1;
    if (row_of_col[j] < 0 ||
        augment(c, static_cast<std::size_t>(row_of_col[j]), row_of_col, seen)) {
      row_of_col[j] = static_cast<int>(row);
      return true;
    }
  }
  return false;
}

// Shortest augmenting path Hungarian method over the rows/cols still free,
// O(n^3). `rows`/`cols` list the active sub-matrix; returns the total cost or
// +inf when an augmentation fails.
double solve(const CostMatrix& c, const std::vector<std::size_t>& rows,
             const std::vector<std::size_t>& cols, std::vector<std::size_t>& col_of_row) {
  const std::size_t n = rows.size();
  auto cost = [&](std::size_t i, std::size_t j) {
    const auto& v = c.at(rows[i - 1], cols[j - 1]);
    return v ? *v : kInf;
  };
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = kInf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cij = cost(i0, j);
        if (cij < kInf) {
          const double cur = cij - u[i0] - v[j];
          if (cur < minv[j]) {
            minv[j] = cur;
            way[j] = j0;
          }
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      if (j1 == 0) return kInf;
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  col_of_row.assign(n, 0);
  for (std::size_t j = 1; j <= n; ++j) col_of_row[p[j] - 1] = j - 1;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) total += *c.at(rows[i], cols[col_of_row[i]]);
  return total;
}

bool same_cost(double a, double b) {
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

bool has_perfect_matching(const CostMatrix& c) {
  std::vector<int> row_of_col(c.size(), -1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<char> seen(c.size(), 0);
    if (!augment(c, i, row_of_col, seen)) return false;
  }
  return true;
}

std::optional<Matching> hungarian(const CostMatrix& c) {
  const std::size_t n = c.size();
  if (n == 0) return Matching{};
  if (!has_perfect_matching(c)) return std::nullopt;

  std::vector<std::size_t> rows(n), cols(n), local;
  for (std::size_t i = 0; i < n; ++i) rows[i] = cols[i] = i;
  const double best = solve(c, rows, cols, local);

  // Fix rows one at a time to the smallest column that still admits an
  // optimal completion.
  Matching m;
  m.col_of_row.assign(n, 0);
  double fixed = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rest_rows(rows.begin() + 1, rows.end());
    bool placed = false;
    for (std::size_t idx = 0; idx < cols.size() && !placed; ++idx) {
      const std::size_t j = cols[idx];
      if (!c.at(rows[0], j)) continue;
      std::vector<std::size_t> rest_cols = cols;
      rest_cols.erase(rest_cols.begin() + static_cast<std::ptrdiff_t>(idx));
      const double head = fixed + *c.at(rows[0], j);
      const double tail = rest_rows.empty() ? 0.0 : solve(c, rest_rows, rest_cols, local);
      if (tail < kInf && same_cost(head + tail, best)) {
        m.col_of_row[rows[0]] = j;
        fixed = head;
        cols = std::move(rest_cols);
        placed = true;
      }
    }
    if (!placed) throw Error("hungarian: lexicographic refinement lost optimality");
    rows = std::move(rest_rows);
  }
  for (std::size_t i = 0; i < n; ++i) m.total += *c.at(i, m.col_of_row[i]);
  return m;
}

CostMatrix build_cost_matrix(std::span<const Point3> old_positions,
                             std::span<const Point3> new_positions, double deadline,
                             std::span<const double> speeds, const EnergyParams& params) {
  const std::size_t n = old_positions.size();
  if (new_positions.size() != n || speeds.size() != n)
    throw InvalidArgument("relocation needs as many targets and speeds as UAVs");
  if (!(deadline >= 0.0)) throw InvalidArgument("relocation deadline must be >= 0");
  CostMatrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double d = distance(old_positions[j], new_positions[i]);
      if (d / speeds[j] <= deadline)
        c.set(i, j, relocation_cost(d, speeds[j], params));
      else
        c.set_unreachable(i, j);
    }
  }
  return c;
}

RelocationPlan plan_relocation(std::span<const Point3> old_positions,
                               std::span<const Point3> new_positions, double deadline,
                               std::span<const double> speeds, const EnergyParams& params) {
  const auto cost = build_cost_matrix(old_positions, new_positions, deadline, speeds, params);
  const auto match = hungarian(cost);
  if (!match) throw InfeasibleError("no relocation reaches every target within the deadline");
  RelocationPlan plan;
  const std::size_t n = cost.size();
  plan.target_of_uav.assign(n, 0);
  plan.energy_of_uav.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = match->col_of_row[i];
    plan.target_of_uav[j] = i;
    plan.energy_of_uav[j] = *cost.at(i, j);
  }
  plan.total_energy = match->total;
  return plan;
}

}  // namespace uavnet
