#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace xyergo {

/// The eventually constant point x_0 ... x_n c c c ... of X = [0,1]^N0.
struct OrbitWord {
  std::vector<double> symbols;
  double tail = 0.0;

  /// Coordinate i of the represented point.
  double at(std::size_t i) const { return i < symbols.size() ? symbols[i] : tail; }

  /// sigma^k of the represented point.
  OrbitWord shifted(std::size_t k) const {
    OrbitWord w;
    w.tail = tail;
    if (k < symbols.size()) w.symbols.assign(symbols.begin() + static_cast<std::ptrdiff_t>(k), symbols.end());
    return w;
  }

  /// Coordinate-wise equality of the represented points.
  bool same_point(const OrbitWord& other) const {
    if (tail != other.tail) return false;
    const std::size_t n = std::max(symbols.size(), other.symbols.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (at(i) != other.at(i)) return false;
    }
    return true;
  }

  static OrbitWord fixed(double c) { return OrbitWord{{c}, c}; }
};

}  // namespace xyergo
