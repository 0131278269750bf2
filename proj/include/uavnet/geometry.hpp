#pragma once

#include <cmath>

namespace uavnet {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y, a.z - b.z);
}

inline double ground_distance(const Point3& a, const Point3& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned rectangle [0, width] x [0, height] on the ground plane.
struct Region {
  double width = 0.0;
  double height = 0.0;

  bool contains(double x, double y) const {
    return x >= 0.0 && y >= 0.0 && x <= width && y <= height;
  }
  bool contains(const Point3& p) const { return contains(p.x, p.y); }
};

}  // namespace uavnet
