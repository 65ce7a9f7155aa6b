#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "xyergo/interval.hpp"
#include "xyergo/potential.hpp"

namespace xyergo {

/// Optimal ergodic average alpha = min_a h(a, a) and the minimizer set
/// m = {a : h(a, a) = alpha}, resolved at diagonal pitch 1/grid_n.
struct GroundState {
  double alpha = 0.0;
  std::vector<Interval> components;  // sorted, disjoint
  double tolerance = 0.0;            // membership cut on h(a, a) - alpha
  double detect_tolerance = 0.0;     // coarse cut max(refine_tol, L/grid_n) used to bracket runs
  double refine_tol = 0.0;
  int grid_n = 0;

  double distance(double a) const;
  bool contains(double a) const;
  std::optional<std::size_t> component_of(double a) const;
};

/// Minimum of f on [lo, hi] to bracket width tol; returns (argmin, value).
/// The bracket endpoints are compared too, so boundary minima are exact.
std::pair<double, double> golden_section_minimize(const std::function<double(double)>& f,
                                                  double lo, double hi, double tol);

GroundState compute_ground_state(const PotentialSpec& spec, int grid_n, double refine_tol);

/// Component endpoints plus interior points every `spacing`; each anchor a
/// stands for the fixed point a^inf of the Aubry set.
std::vector<double> aubry_fixed_points(const GroundState& gs, double spacing);

/// Columns a, h(a,a), in_m over the diagonal grid.
void write_groundstate_csv(std::ostream& os, const PotentialSpec& spec, const GroundState& gs);

}  // namespace xyergo
