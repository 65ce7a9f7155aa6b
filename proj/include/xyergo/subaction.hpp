#pragma once

// Calibrated subactions v(x) of the first coordinate: a 2-local potential
// makes the operator v -> min_y [h(y, x) + v(y)] - alpha close on functions
// of x_0 alone.

#include <cstddef>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "xyergo/barrier.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/orbit_word.hpp"
#include "xyergo/potential.hpp"

namespace xyergo {

struct SubactionGrid {
  std::vector<double> grid;
  std::vector<double> v;
  std::size_t anchor = 0;             // v(anchor) == 0
  double calibration_residual = 0.0;  // max_x |v(x) - (min_y [h(y,x) + v(y)] - alpha)|
  double subaction_defect = 0.0;      // max_{x,y} (v(y) - v(x) - h(x,y) + alpha)_+
  int iterations = 0;
  bool converged = false;

  /// Piecewise-linear interpolation of v.
  double value_at(double x) const;
};

/// Value iteration from `initial` (default 0), renormalized at the leftmost
/// Aubry node each sweep. Stops once the sup-change drops below tol;
/// otherwise returns the last iterate with converged == false.
SubactionGrid solve_calibrated(const PotentialSpec& spec, const GroundState& gs, int grid_n,
                               int max_iters, double tol,
                               std::optional<std::vector<double>> initial = {});

/// Fills residuals and renormalizes v at `anchor`.
SubactionGrid measure_subaction(const PotentialSpec& spec, double alpha, std::vector<double> v,
                                std::size_t anchor);

/// v(y) = min_a [H(a^inf, y) + u(a)] over the given anchor values.
SubactionGrid reconstruct(const BarrierMatrix& bm, const GroundState& gs,
                          const std::vector<std::pair<double, double>>& u_on_aubry);

/// max over pairs and grid targets y of |(H(a,y) + v(a)) - (H(b,y) + v(b))|.
double class_consistency_check(const BarrierMatrix& bm, const GroundState& gs,
                               const SubactionGrid& sub,
                               const std::vector<std::pair<double, double>>& pairs);

/// max_k |v(w_{k+1}) - v(w_k) - (h(w_k, w_{k+1}) - alpha)| along the word
/// and its first transition into the tail.
double static_identity_check(const PotentialSpec& spec, const GroundState& gs,
                             const SubactionGrid& sub, const OrbitWord& w);

/// Columns x, v, calibration_gap.
void write_subaction_csv(std::ostream& os, const PotentialSpec& spec, double alpha,
                         const SubactionGrid& sub);

}  // namespace xyergo
