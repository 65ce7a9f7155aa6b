#include "xyergo/subaction.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "xyergo/errors.hpp"
#include "xyergo/parallel.hpp"

namespace xyergo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t leftmost_aubry_node(const GroundState& gs, int grid_n) {
  if (gs.components.empty()) throw EmptyGroundStateError("ground state has no components");
  return static_cast<std::size_t>(std::llround(gs.components.front().lo * grid_n));
}

// (T v)(x_j) = min_i c(i, j) + v(i).
std::vector<double> apply_operator(const Matrix& c, const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> out(n, kInf);
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = c.row(i);
    for (std::size_t j = 0; j < n; ++j) out[j] = std::min(out[j], row[j] + v[i]);
  }
  return out;
}

}  // namespace

double SubactionGrid::value_at(double x) const {
  if (grid.empty()) return 0.0;
  if (x <= grid.front()) return v.front();
  if (x >= grid.back()) return v.back();
  const auto it = std::upper_bound(grid.begin(), grid.end(), x);
  const std::size_t j = static_cast<std::size_t>(it - grid.begin());
  const double t = (x - grid[j - 1]) / (grid[j] - grid[j - 1]);
  return (1.0 - t) * v[j - 1] + t * v[j];
}

SubactionGrid measure_subaction(const PotentialSpec& spec, double alpha, std::vector<double> v,
                                std::size_t anchor) {
  const std::size_t n = v.size();
  const int grid_n = static_cast<int>(n) - 1;
  const Matrix c = reduced_costs(spec, alpha, grid_n);
  const double shift = v[anchor];
  for (double& x : v) x -= shift;

  SubactionGrid sub;
  sub.grid.resize(n);
  for (std::size_t i = 0; i < n; ++i) sub.grid[i] = double(i) / grid_n;
  sub.anchor = anchor;

  const auto tv = apply_operator(c, v);
  for (std::size_t j = 0; j < n; ++j) {
    sub.calibration_residual = std::max(sub.calibration_residual, std::abs(v[j] - tv[j]));
  }
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      sub.subaction_defect = std::max(sub.subaction_defect, v[y] - v[x] - c(x, y));
    }
  }
  sub.v = std::move(v);
  return sub;
}

SubactionGrid solve_calibrated(const PotentialSpec& spec, const GroundState& gs, int grid_n,
                               int max_iters, double tol,
                               std::optional<std::vector<double>> initial) {
  if (grid_n < 16) throw DomainError("solve_calibrated needs grid_n >= 16");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  const std::size_t n = static_cast<std::size_t>(grid_n) + 1;
  const std::size_t anchor = leftmost_aubry_node(gs, grid_n);
  const Matrix c = reduced_costs(spec, gs.alpha, grid_n);

  std::vector<double> v = initial.value_or(std::vector<double>(n, 0.0));
  if (v.size() != n) throw DomainError("initial subaction has the wrong size");

  int it = 0;
  bool converged = false;
  while (it < max_iters) {
    auto next = apply_operator(c, v);
    const double shift = next[anchor];
    double change = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      next[j] -= shift;
      change = std::max(change, std::abs(next[j] - v[j]));
    }
    v = std::move(next);
    ++it;
    if (change < tol) {
      converged = true;
      break;
    }
  }
  SubactionGrid sub = measure_subaction(spec, gs.alpha, std::move(v), anchor);
  sub.iterations = it;
  sub.converged = converged;
  return sub;
}

SubactionGrid reconstruct(const BarrierMatrix& bm, const GroundState& gs,
                          const std::vector<std::pair<double, double>>& u_on_aubry) {
  if (u_on_aubry.empty()) throw EmptyGroundStateError("reconstruct needs at least one anchor value");
  const std::size_t n = bm.nodes();
  std::vector<double> v(n, kInf);
  parallel_for(n, [&](std::size_t j) {
    for (const auto& [a, ua] : u_on_aubry) {
      v[j] = std::min(v[j], peierls_fixed(bm, gs, a, bm.grid[j]) + ua);
    }
  });
  SubactionGrid sub = measure_subaction(bm.spec, bm.alpha, std::move(v), leftmost_aubry_node(gs, bm.grid_n));
  sub.converged = true;
  return sub;
}

double class_consistency_check(const BarrierMatrix& bm, const GroundState& gs,
                               const SubactionGrid& sub,
                               const std::vector<std::pair<double, double>>& pairs) {
  double worst = 0.0;
  for (const auto& [a, b] : pairs) {
    if (a == b) continue;
    const double va = sub.value_at(a);
    const double vb = sub.value_at(b);
    for (double y : bm.grid) {
      const double lhs = peierls_fixed(bm, gs, a, y) + va;
      const double rhs = peierls_fixed(bm, gs, b, y) + vb;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
  }
  return worst;
}

double static_identity_check(const PotentialSpec& spec, const GroundState& gs,
                             const SubactionGrid& sub, const OrbitWord& w) {
  double worst = 0.0;
  for (std::size_t k = 0; k <= w.symbols.size(); ++k) {
    const double x = w.at(k);
    const double y = w.at(k + 1);
    const double step = sub.value_at(y) - sub.value_at(x);
    worst = std::max(worst, std::abs(step - (eval(spec, x, y) - gs.alpha)));
  }
  return worst;
}

void write_subaction_csv(std::ostream& os, const PotentialSpec& spec, double alpha,
                         const SubactionGrid& sub) {
  const std::size_t n = sub.v.size();
  const Matrix c = reduced_costs(spec, alpha, static_cast<int>(n) - 1);
  const auto tv = apply_operator(c, sub.v);
  os << "x,v,calibration_gap\n" << std::setprecision(12);
  for (std::size_t j = 0; j < n; ++j) os << sub.grid[j] << ',' << sub.v[j] << ',' << sub.v[j] - tv[j] << '\n';
}

}  // namespace xyergo
