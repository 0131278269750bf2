#include "uavnet/assignment_matrix.hpp"

#include <algorithm>

#include "uavnet/errors.hpp"

namespace uavnet {

AssignmentMatrix::AssignmentMatrix(std::size_t users, std::vector<int> capacities)
    : users_(users), capacities_(std::move(capacities)) {
  for (int c : capacities_)
    if (c < 0) throw InvalidArgument("UAV capacity must be >= 0");
  bits_.assign(users_ * capacities_.size(), 0);
  load_.assign(capacities_.size(), 0);
}

void AssignmentMatrix::assign(std::size_t uav, std::size_t user) {
  auto& bit = bits_.at(user * uavs() + uav);
  if (!bit) ++load_[uav];
  bit = 1;
}

void AssignmentMatrix::unassign(std::size_t uav, std::size_t user) {
  auto& bit = bits_.at(user * uavs() + uav);
  if (bit) --load_[uav];
  bit = 0;
}

void AssignmentMatrix::clear() {
  std::fill(bits_.begin(), bits_.end(), 0);
  std::fill(load_.begin(), load_.end(), 0);
}

std::size_t AssignmentMatrix::links(std::size_t user) const {
  std::size_t n = 0;
  for (std::size_t m = 0; m < uavs(); ++m) n += at(m, user);
  return n;
}

std::optional<std::size_t> AssignmentMatrix::serving(std::size_t user) const {
  for (std::size_t m = 0; m < uavs(); ++m)
    if (at(m, user)) return m;
  return std::nullopt;
}

std::size_t AssignmentMatrix::served() const {
  std::size_t n = 0;
  for (std::size_t k = 0; k < users_; ++k) n += links(k) > 0;
  return n;
}

bool AssignmentMatrix::feasible() const {
  for (std::size_t k = 0; k < users_; ++k)
    if (links(k) > 1) return false;
  for (std::size_t m = 0; m < uavs(); ++m) {
    std::size_t row = 0;
    for (std::size_t k = 0; k < users_; ++k) row += at(m, k);
    if (row > static_cast<std::size_t>(capacities_[m])) return false;
  }
  return true;
}

}  // namespace uavnet
