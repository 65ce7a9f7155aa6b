#include "xyergo/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "xyergo/errors.hpp"

namespace xyergo {

double GroundState::distance(double a) const {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& c : components) d = std::min(d, c.distance(a));
  return d;
}

bool GroundState::contains(double a) const { return distance(a) <= refine_tol + 1e-12; }

std::optional<std::size_t> GroundState::component_of(double a) const {
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (components[k].distance(a) <= refine_tol + 1e-12) return k;
  }
  return std::nullopt;
}

std::pair<double, double> golden_section_minimize(const std::function<double(double)>& f,
                                                  double lo, double hi, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  std::pair<double, double> best = fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
  for (double e : {lo, hi}) {
    const double fe = f(e);
    if (fe <= best.second) best = {e, fe};
  }
  return best;
}

namespace {

// Crossing of g from positive (at `out`) to nonpositive (at `in`).
double bisect_edge(const std::function<double(double)>& g, double out, double in) {
  for (int it = 0; it < 200 && std::abs(in - out) > 1e-15; ++it) {
    const double mid = 0.5 * (out + in);
    if (g(mid) <= 0.0) {
      in = mid;
    } else {
      out = mid;
    }
  }
  return in;
}

}  // namespace

GroundState compute_ground_state(const PotentialSpec& spec, int grid_n, double refine_tol) {
  if (grid_n < 16) throw DomainError("compute_ground_state needs grid_n >= 16");
  if (!(refine_tol > 0.0)) throw DomainError("refine_tol must be positive");

  const int n = grid_n;
  const double pitch = 1.0 / n;
  auto diag = [&](double a) { return spec.value(a, a); };

  std::vector<double> profile(n + 1);
  for (int i = 0; i <= n; ++i) profile[i] = diag(i * pitch);
  const double grid_min = *std::min_element(profile.begin(), profile.end());

  GroundState gs;
  gs.grid_n = n;
  gs.refine_tol = refine_tol;
  gs.detect_tolerance = std::max(refine_tol, spec.lipschitz_bound() / n);

  // Golden-section refinement in every locally minimal bracket of the coarse cut.
  std::vector<std::pair<double, double>> refined(n + 1, {0.0, std::numeric_limits<double>::infinity()});
  double alpha = grid_min;
  for (int i = 0; i <= n; ++i) {
    if (profile[i] > grid_min + gs.detect_tolerance) continue;
    if (i > 0 && profile[i - 1] < profile[i]) continue;
    if (i < n && profile[i + 1] < profile[i]) continue;
    const double lo = std::max(0, i - 1) * pitch;
    const double hi = std::min(n, i + 1) * pitch;
    refined[i] = golden_section_minimize(diag, lo, hi, refine_tol);
    alpha = std::min(alpha, refined[i].second);
  }
  gs.alpha = alpha;
  gs.tolerance = std::max(refine_tol, 64.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(alpha)));

  const double cut = alpha + gs.tolerance;
  auto excess = [&](double a) { return diag(a) - cut; };

  std::vector<Interval> comps;
  std::vector<bool> covered(n + 1, false);
  for (int i = 0; i <= n;) {
    if (profile[i] > cut) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 <= n && profile[j + 1] <= cut) ++j;
    for (int k = std::max(0, i - 1); k <= std::min(n, j + 1); ++k) covered[k] = true;
    if (i == j) {
      // A single grid point cannot resolve an interval from a point.
      const double x = std::isfinite(refined[i].second) && refined[i].second <= cut ? refined[i].first
                                                                                      : i * pitch;
      comps.push_back({x, x});
    } else {
      const double lo = i == 0 ? 0.0 : bisect_edge(excess, (i - 1) * pitch, i * pitch);
      const double hi = j == n ? 1.0 : bisect_edge(excess, (j + 1) * pitch, j * pitch);
      comps.push_back({lo, hi});
    }
    i = j + 1;
  }
  // Sharp minima strictly between grid points.
  for (int i = 0; i <= n; ++i) {
    if (!covered[i] && std::isfinite(refined[i].second) && refined[i].second <= cut) {
      comps.push_back({refined[i].first, refined[i].first});
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (const auto& c : comps) {
    if (!gs.components.empty() && c.lo - gs.components.back().hi <= pitch) {
      gs.components.back().hi = std::max(gs.components.back().hi, c.hi);
    } else {
      gs.components.push_back(c);
    }
  }
  return gs;
}

std::vector<double> aubry_fixed_points(const GroundState& gs, double spacing) {
  if (!(spacing > 0.0)) throw DomainError("spacing must be positive");
  if (gs.components.empty()) throw EmptyGroundStateError("ground state has no components");
  std::vector<double> anchors;
  for (const auto& c : gs.components) {
    anchors.push_back(c.lo);
    for (int k = 1;; ++k) {
      const double p = c.lo + k * spacing;
      if (c.hi - p < 0.5 * spacing) break;
      anchors.push_back(p);
    }
    if (!c.is_point()) anchors.push_back(c.hi);
  }
  return anchors;
}

void write_groundstate_csv(std::ostream& os, const PotentialSpec& spec, const GroundState& gs) {
  os << "a,h(a,a),in_m\n";
  os << std::setprecision(12);
  for (int i = 0; i <= gs.grid_n; ++i) {
    const double a = double(i) / gs.grid_n;
    os << a << ',' << spec.value(a, a) << ',' << (gs.contains(a) ? 1 : 0) << '\n';
  }
}

}  // namespace xyergo
