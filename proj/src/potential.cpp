#include "xyergo/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <tuple>

#include "xyergo/errors.hpp"

namespace xyergo {
namespace {

double ipow(double base, int exp) {
  double r = 1.0;
  for (int k = 0; k < exp; ++k) r *= base;
  return r;
}

double sign(double t) { return (t > 0.0) - (t < 0.0); }

void check_unit(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << t << " is outside [0,1]";
    throw DomainError(os.str());
  }
}

// Gradient of everything except the |x - y| and sqrt terms.
std::pair<double, double> smooth_gradient(const PotentialSpec& s, double x, double y) {
  double gx = s.poly_dx(x, y);
  double gy = s.poly_dy(x, y);
  if (s.wells().active()) {
    gx += s.wells().derivative(x);
    gy += s.wells().derivative(y);
  }
  return {gx, gy};
}

double compute_lipschitz(const PotentialSpec& s) {
  constexpr int n = 256;
  double sup = 0.0;
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      auto [gx, gy] = smooth_gradient(s, double(i) / n, double(j) / n);
      sup = std::max(sup, std::hypot(gx, gy));
    }
  }
  // The bound must stay positive even for h == 0.
  return std::max(1.1 * (sup + s.abs_weight() + s.sqrt_weight()), 1e-9);
}

}  // namespace

double WellTerm::value(double t) const {
  if (!active()) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (const auto& iv : intervals) d = std::min(d, iv.distance(t));
  return weight * d * d * d * d;
}

double WellTerm::derivative(double t) const {
  if (!active()) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  double slope = 0.0;
  for (const auto& iv : intervals) {
    double d = iv.distance(t);
    if (d < best) {
      best = d;
      slope = t < iv.lo ? -1.0 : (t > iv.hi ? 1.0 : 0.0);
    }
  }
  return 4.0 * weight * best * best * best * slope;
}

PotentialSpec::PotentialSpec(std::map<Exponents, double> poly, double abs_weight,
                             double sqrt_weight, WellTerm wells)
    : poly_(std::move(poly)),
      abs_weight_(abs_weight),
      sqrt_weight_(sqrt_weight),
      wells_(std::move(wells)) {
  if (!(abs_weight_ >= 0.0) || !(sqrt_weight_ >= 0.0)) {
    throw ConfigError("abs_weight and sqrt_weight must be nonnegative");
  }
  for (const auto& [e, c] : poly_) {
    if (e.first < 0 || e.second < 0) throw ConfigError("negative polynomial exponent");
    if (!std::isfinite(c)) throw ConfigError("non-finite polynomial coefficient");
  }
  if (!(wells_.weight >= 0.0) || !std::isfinite(wells_.weight)) {
    throw ConfigError("well weight must be finite and nonnegative");
  }
  for (const auto& iv : wells_.intervals) {
    if (!(iv.lo <= iv.hi)) throw ConfigError("well interval with lo > hi");
  }
  lipschitz_ = compute_lipschitz(*this);
}

PotentialSpec PotentialSpec::from_terms(const std::vector<std::tuple<int, int, double>>& terms,
                                        double abs_weight, double sqrt_weight, WellTerm wells) {
  std::map<Exponents, double> poly;
  for (const auto& [i, j, c] : terms) poly[{i, j}] += c;
  return PotentialSpec(std::move(poly), abs_weight, sqrt_weight, std::move(wells));
}

double PotentialSpec::poly_value(double x, double y) const {
  double v = 0.0;
  for (const auto& [e, c] : poly_) v += c * ipow(x, e.first) * ipow(y, e.second);
  return v;
}

double PotentialSpec::poly_dx(double x, double y) const {
  double v = 0.0;
  for (const auto& [e, c] : poly_) {
    if (e.first == 0) continue;
    v += c * e.first * ipow(x, e.first - 1) * ipow(y, e.second);
  }
  return v;
}

double PotentialSpec::poly_dy(double x, double y) const {
  double v = 0.0;
  for (const auto& [e, c] : poly_) {
    if (e.second == 0) continue;
    v += c * e.second * ipow(x, e.first) * ipow(y, e.second - 1);
  }
  return v;
}

double PotentialSpec::poly_dxy(double x, double y) const {
  double v = 0.0;
  for (const auto& [e, c] : poly_) {
    if (e.first == 0 || e.second == 0) continue;
    v += c * e.first * e.second * ipow(x, e.first - 1) * ipow(y, e.second - 1);
  }
  return v;
}

double PotentialSpec::value(double x, double y) const {
  const double z = x - y;
  double v = poly_value(x, y);
  if (abs_weight_ != 0.0) v += abs_weight_ * std::abs(z);
  if (sqrt_weight_ != 0.0) v += sqrt_weight_ * std::sqrt(1.0 + z * z);
  if (wells_.active()) v += wells_.value(x) + wells_.value(y);
  return v;
}

bool PotentialSpec::poly_is_difference_function(double tol) const {
  // Coefficient of x^i y^j in (d/dx + d/dy) P.
  std::map<Exponents, double> sum;
  for (const auto& [e, c] : poly_) {
    if (e.first > 0) sum[{e.first - 1, e.second}] += c * e.first;
    if (e.second > 0) sum[{e.first, e.second - 1}] += c * e.second;
  }
  return std::all_of(sum.begin(), sum.end(),
                     [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

double eval(const PotentialSpec& spec, double x, double y) {
  check_unit(x, "x");
  check_unit(y, "y");
  return spec.value(x, y);
}

namespace {

// Derivative of lambda |x - y| with respect to the first argument.
double abs_term_d1(const PotentialSpec& spec, double x, double y, std::optional<Side> side) {
  const double lambda = spec.abs_weight();
  if (lambda == 0.0) return 0.0;
  if (x != y) return lambda * sign(x - y);
  if (!side) throw NondifferentiableError("|x-y| term is not differentiable on the diagonal");
  return *side == Side::Right ? lambda : -lambda;
}

double sqrt_term_d1(const PotentialSpec& spec, double x, double y) {
  const double z = x - y;
  return spec.sqrt_weight() * z / std::sqrt(1.0 + z * z);
}

}  // namespace

double d1(const PotentialSpec& spec, double x, double y, std::optional<Side> side) {
  check_unit(x, "x");
  check_unit(y, "y");
  return spec.poly_dx(x, y) + abs_term_d1(spec, x, y, side) + sqrt_term_d1(spec, x, y) +
         spec.wells().derivative(x);
}

double d2(const PotentialSpec& spec, double x, double y, std::optional<Side> side) {
  check_unit(x, "x");
  check_unit(y, "y");
  // |x - y| and sqrt(1 + (x - y)^2) are symmetric, so d/dy at (x, y) is
  // d/dx at (y, x).
  return spec.poly_dy(x, y) + abs_term_d1(spec, y, x, side) + sqrt_term_d1(spec, y, x) +
         spec.wells().derivative(y);
}

double d12(const PotentialSpec& spec, double x, double y) {
  check_unit(x, "x");
  check_unit(y, "y");
  const double z = x - y;
  const double q = 1.0 + z * z;
  return spec.poly_dxy(x, y) - spec.sqrt_weight() / (q * std::sqrt(q));
}

TwistReport twist_check(const PotentialSpec& spec, int grid_n) {
  if (grid_n < 2) throw DomainError("twist_check needs grid_n >= 2");
  const double step = 1.0 / (grid_n - 1);
  const double fd = 0.25 * step;
  TwistReport rep;
  rep.worst_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const double x = i * step;
      const double y = j * step;
      double v;
      if (i == j && spec.abs_weight() > 0.0) {
        v = (spec.value(x + fd, y + fd) - spec.value(x + fd, y - fd) -
             spec.value(x - fd, y + fd) + spec.value(x - fd, y - fd)) /
            (4.0 * fd * fd);
      } else {
        v = d12(spec, x, y);
      }
      if (v > rep.worst_value) {
        rep.worst_value = v;
        rep.worst_point = {x, y};
      }
    }
  }
  rep.holds = rep.worst_value < 0.0;
  return rep;
}

H3Report h3_check(const PotentialSpec& spec, int samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("h3_check needs samples >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  H3Report rep;
  rep.holds_on_samples = true;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    double xi1 = unit(rng), xi2 = unit(rng), eta1 = unit(rng), eta2 = unit(rng);
    if (xi1 > xi2) std::swap(xi1, xi2);
    if (eta1 > eta2) std::swap(eta1, eta2);
    const double a = spec.value(xi1, eta2), b = spec.value(xi2, eta1);
    const double c = spec.value(xi1, eta1), d = spec.value(xi2, eta2);
    const double margin = a + b - c - d;
    // Positive only if it clears the rounding error of the four-term sum.
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() *
                         (std::abs(a) + std::abs(b) + std::abs(c) + std::abs(d));
    if (!(margin > noise) || xi1 == xi2 || eta1 == eta2) rep.holds_on_samples = false;
    rep.worst_margin = std::min(rep.worst_margin, margin);
  }
  return rep;
}

double interval_equivalence_defect(const PotentialSpec& spec, double z) {
  check_unit(z, "z");
  // The sqrt term has zero first derivatives on the diagonal.
  return spec.poly_dx(z, z) + spec.poly_dy(z, z) + 2.0 * spec.wells().derivative(z) +
         2.0 * spec.abs_weight();
}

namespace {

bool smooth_part_twists(const PotentialSpec& spec) {
  constexpr int n = 64;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(d12(spec, double(i) / (n - 1), double(j) / (n - 1)) < 0.0)) return false;
    }
  }
  return true;
}

bool difference_form(const PotentialSpec& spec) {
  return !spec.wells().active() && spec.poly_is_difference_function();
}

}  // namespace

H4Certificate h4_certificate(const PotentialSpec& spec) {
  if (spec.abs_weight() == 0.0 && twist_check(spec, 64).holds) return H4Certificate::Twist;
  if (difference_form(spec) && smooth_part_twists(spec)) return H4Certificate::ConvexDifference;
  return H4Certificate::Uncertified;
}

std::string to_string(H4Certificate c) {
  switch (c) {
    case H4Certificate::Twist:
      return "twist";
    case H4Certificate::ConvexDifference:
      return "convex-difference";
    case H4Certificate::Uncertified:
      break;
  }
  return "uncertified";
}

bool is_rho_family(const PotentialSpec& spec) {
  return spec.abs_weight() == 0.5 && difference_form(spec) && smooth_part_twists(spec);
}

}  // namespace xyergo
