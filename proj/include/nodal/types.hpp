#pragma once

#include <cmath>

namespace nodal {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  friend bool operator==(const Point3&, const Point3&) = default;
};

inline double norm(const Point2& p) { return std::hypot(p.x, p.y); }
inline double distance(const Point2& a, const Point2& b) { return std::hypot(a.x - b.x, a.y - b.y); }
inline double distance(const Point3& a, const Point3& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
}

/// Axis-aligned box in the plane.
struct Box2 {
  double xmin = -1.0, xmax = 1.0;
  double ymin = -1.0, ymax = 1.0;
  bool empty() const { return !(xmax > xmin) || !(ymax > ymin); }
};

struct Box3 {
  double xmin = -1.0, xmax = 1.0;
  double ymin = -1.0, ymax = 1.0;
  double zmin = -1.0, zmax = 1.0;
  bool empty() const { return !(xmax > xmin) || !(ymax > ymin) || !(zmax > zmin); }
};

}  // namespace nodal
