#pragma once

#include <algorithm>
#include <cmath>

namespace xyergo {

/// Closed interval [lo, hi]; lo == hi encodes a single point.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool is_point() const { return lo == hi; }
  double length() const { return hi - lo; }
  double distance(double t) const {
    if (t < lo) return lo - t;
    if (t > hi) return t - hi;
    return 0.0;
  }
  bool operator==(const Interval&) const = default;
};

/// Hausdorff distance between two closed intervals.
inline double hausdorff(const Interval& a, const Interval& b) {
  return std::max(std::abs(a.lo - b.lo), std::abs(a.hi - b.hi));
}

}  // namespace xyergo
