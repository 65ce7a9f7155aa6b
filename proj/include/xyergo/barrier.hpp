#pragma once

// Mane potential and Peierls barrier on the uniform grid x_i = i/N by
// shortest-path dynamic programming with reduced cost c(x, y) = h(x, y) - alpha.

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "xyergo/groundstate.hpp"
#include "xyergo/matrix.hpp"
#include "xyergo/orbit_word.hpp"
#include "xyergo/potential.hpp"

namespace xyergo {

struct BarrierMatrix {
  PotentialSpec spec;
  double alpha = 0.0;
  int grid_n = 0;
  std::vector<double> grid;   // x_i = i / grid_n, i = 0..grid_n
  Matrix S;                   // min over path lengths >= 1 of the reduced action
  double neg_cycle_margin = 0.0;
  double eps_cyc = 0.0;
  int rounds = 0;

  std::size_t nodes() const { return grid.size(); }
  double eps_num() const;
  /// Index of the grid node equal to x (up to 1e-12), if any.
  std::optional<std::size_t> node_of(double x) const;
  double cost(double x, double y) const { return spec.value(x, y) - alpha; }
};

/// 10 L_h / grid_n: slack for grid-induced negative cycles.
double cycle_tolerance(const PotentialSpec& spec, int grid_n);
/// 1e-9 (1 + |alpha|).
double numeric_tolerance(double alpha);

/// C(i, j) = h(x_i, x_j) - alpha on the grid i/grid_n.
Matrix reduced_costs(const PotentialSpec& spec, double alpha, int grid_n);

/// Min-plus product A (x) B.
Matrix min_plus(const Matrix& a, const Matrix& b);

/// Running minimum over path lengths 1..max_len, one edge per round.
Matrix relax_bounded(const Matrix& cost, int max_len);

struct Closure {
  Matrix S;
  int rounds = 0;
  double margin = 0.0;  // min(min_i S(i,i), -improvement of one extra round)
};

/// Min over all path lengths >= 1 by repeated min-plus squaring with a
/// running minimum; round r covers lengths up to 2^r.
Closure min_plus_closure(const Matrix& cost, double stop_tol);

/// Throws NegativeCycleError if the closure margin is below -eps_cyc.
BarrierMatrix build_barrier(const PotentialSpec& spec, const GroundState& gs, int grid_n);

/// Mane potential between two alphabet points, path interiors on the grid.
/// Equals S(i, j) when both endpoints are grid nodes.
double mane_between(const BarrierMatrix& bm, double x, double y);

/// H(a^inf, b^inf). Throws SourceNotInAubryError if a is outside m.
double peierls_fixed(const BarrierMatrix& bm, const GroundState& gs, double a, double b);

/// S(w, v) for eventually constant points: the cheaper of an exact shift
/// sigma^k(w) = v and the route through w's tail (requires tail in m).
double mane_eventually_fixed(const BarrierMatrix& bm, const GroundState& gs, const OrbitWord& w,
                             const OrbitWord& v);

/// h(a, b) - alpha - H(a^inf, b^inf); zero when a == b.
double gap_constant(const BarrierMatrix& bm, const GroundState& gs, double a, double b);

/// Composite Simpson quadrature of x -> D2 h(x, x) over [a, b]. Requires a
/// and b in one component of m and abs_weight == 0.
double integral_barrier(const PotentialSpec& spec, const GroundState& gs, double a, double b,
                        int quad_n);

/// Exhaustive minimum over grid walks a -> b of length 1..max_len.
/// Test oracle; grid_n <= 10 and max_len <= 6.
double brute_mane_oracle(const PotentialSpec& spec, const GroundState& gs, int grid_n,
                         int max_len, std::size_t a, std::size_t b);

/// Exhaustive minimum of the reduced action of grid-periodic words of
/// period 1..period whose farthest symbol is at least delta from m.
/// Returns +inf when no word qualifies. grid_n <= 24, period <= 4.
double min_periodic_action(const PotentialSpec& spec, const GroundState& gs, int grid_n,
                           int period, double delta);

/// Columns a, b, S, H, gap over anchor pairs.
void write_barrier_csv(std::ostream& os, const BarrierMatrix& bm, const GroundState& gs,
                       const std::vector<double>& anchors);
/// Columns x, y, S over all grid pairs.
void write_mane_matrix_csv(std::ostream& os, const BarrierMatrix& bm);

}  // namespace xyergo
