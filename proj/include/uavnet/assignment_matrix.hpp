#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace uavnet {

/// Binary user-UAV decision i(m, k) with per-UAV capacities. Entries are
/// stored as given; feasible() checks both capacity and uniqueness.
class AssignmentMatrix {
 public:
  AssignmentMatrix() = default;
  AssignmentMatrix(std::size_t users, std::vector<int> capacities);

  std::size_t users() const { return users_; }
  std::size_t uavs() const { return capacities_.size(); }
  int capacity(std::size_t uav) const { return capacities_[uav]; }
  const std::vector<int>& capacities() const { return capacities_; }

  bool at(std::size_t uav, std::size_t user) const { return bits_[user * uavs() + uav] != 0; }
  void assign(std::size_t uav, std::size_t user);
  void unassign(std::size_t uav, std::size_t user);
  void clear();

  std::size_t load(std::size_t uav) const { return load_[uav]; }  // row sum
  std::size_t links(std::size_t user) const;                       // column sum
  std::optional<std::size_t> serving(std::size_t user) const;
  std::size_t served() const;

  bool feasible() const;

 private:
  std::size_t users_ = 0;
  std::vector<int> capacities_;
  std::vector<unsigned char> bits_;
  std::vector<std::size_t> load_;
};

}  // namespace uavnet
