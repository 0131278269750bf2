#pragma once

// Exhaustive reference solvers used by the unit and acceptance tests.

#include <uavnet/matching.hpp>
#include <uavnet/mobility.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

namespace uavnet::oracle {

struct PermutationOptimum {
  std::optional<double> cost;  // empty when no reachable permutation exists
  std::vector<std::size_t> col_of_row;
};

// Minimum over all n! permutations; sums in row order like the solver does.
inline PermutationOptimum min_permutation(const CostMatrix& c) {
  const std::size_t n = c.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  PermutationOptimum best;
  do {
    double total = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      const auto& e = c.at(i, perm[i]);
      if (!e) ok = false;
      else total += *e;
    }
    if (ok && (!best.cost || total < *best.cost)) {
      best.cost = total;
      best.col_of_row = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Best (P2) objective: every user picks a UAV or nothing, loads within
// capacity. Exhaustive over (M + 1)^K choices.
inline double best_assignment_total(const RateTable& rates, const std::vector<int>& caps) {
  const std::size_t k = rates.users();
  const std::size_t m = rates.uavs();
  std::vector<std::size_t> choice(k, m);  // m means unassigned
  std::vector<int> load(m, 0);
  double best = 0.0;
  auto rec = [&](auto&& self, std::size_t user, double total) -> void {
    if (user == k) {
      best = std::max(best, total);
      return;
    }
    self(self, user + 1, total);
    for (std::size_t j = 0; j < m; ++j) {
      if (load[j] >= caps[j]) continue;
      ++load[j];
      self(self, user + 1, total + rates.at(user, j));
      --load[j];
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

}  // namespace uavnet::oracle
