#pragma once

#include <uavnet/environment.hpp>
#include <uavnet/mobility.hpp>

#include <cstddef>
#include <vector>

namespace uavnet::test {

inline UserState user_at(std::size_t id, double x, double y, double priority = 0.0) {
  UserState u;
  u.id = id;
  u.position = {x, y, 1.5};
  u.deadline = 10.0;
  u.priority = priority;
  u.waited = priority * u.deadline;
  return u;
}

inline UavState uav_at(std::size_t id, double x, double y, double z, int capacity) {
  UavState u;
  u.id = id;
  u.position = {x, y, z};
  u.capacity = capacity;
  return u;
}

inline SlotModel slot_model(const Region& region) {
  return SlotModel{LinkBudget(ChannelParams{}), 1.0, 0.1, SearchGeometry{}, region};
}

}  // namespace uavnet::test
