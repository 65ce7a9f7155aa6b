#pragma once

// 2-local potentials h(x, y) on [0,1]^2 from the closed family
//
//   h(x, y) = P(x, y) + lambda |x - y| + mu sqrt(1 + (x - y)^2)
//             + kappa (w(x) + w(y)),   w(t) = dist(t, U)^4,
//
// with P a polynomial and U a finite union of closed intervals. The well
// term is separable, so it never contributes to the mixed derivative.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "xyergo/interval.hpp"

namespace xyergo {

enum class Side { Left, Right };

/// kappa * dist(t, union of intervals)^4, added as w(x) + w(y).
struct WellTerm {
  double weight = 0.0;
  std::vector<Interval> intervals;

  bool active() const { return weight != 0.0 && !intervals.empty(); }
  double value(double t) const;
  double derivative(double t) const;
};

class PotentialSpec {
 public:
  using Exponents = std::pair<int, int>;

  PotentialSpec() : PotentialSpec({}, 0.0, 0.0) {}
  PotentialSpec(std::map<Exponents, double> poly, double abs_weight, double sqrt_weight,
                WellTerm wells = {});

  /// Accumulates duplicate (i, j) entries.
  static PotentialSpec from_terms(const std::vector<std::tuple<int, int, double>>& terms,
                                  double abs_weight, double sqrt_weight, WellTerm wells = {});

  const std::map<Exponents, double>& poly_coeffs() const { return poly_; }
  double abs_weight() const { return abs_weight_; }
  double sqrt_weight() const { return sqrt_weight_; }
  const WellTerm& wells() const { return wells_; }
  double lipschitz_bound() const { return lipschitz_; }

  // Formula evaluation without domain checks; the closed form extends to R^2.
  double value(double x, double y) const;
  double poly_value(double x, double y) const;
  double poly_dx(double x, double y) const;
  double poly_dy(double x, double y) const;
  double poly_dxy(double x, double y) const;

  /// True iff P(x, y) depends on x - y only, i.e. (d/dx + d/dy) P == 0.
  bool poly_is_difference_function(double tol = 1e-12) const;

 private:
  std::map<Exponents, double> poly_;
  double abs_weight_;
  double sqrt_weight_;
  WellTerm wells_;
  double lipschitz_ = 0.0;
};

// Domain-checked evaluation; throws DomainError outside [0,1]^2.
double eval(const PotentialSpec& spec, double x, double y);

// Partial derivatives. On the diagonal with abs_weight > 0 the first
// derivatives need a side and throw NondifferentiableError without one.
double d1(const PotentialSpec& spec, double x, double y, std::optional<Side> side = {});
double d2(const PotentialSpec& spec, double x, double y, std::optional<Side> side = {});

/// Mixed derivative of the smooth part. The |x - y| term is zero off the
/// diagonal and a negative singular measure on it, so it is excluded.
double d12(const PotentialSpec& spec, double x, double y);

struct TwistReport {
  bool holds = false;
  double worst_value = 0.0;
  std::pair<double, double> worst_point{0.0, 0.0};
};

TwistReport twist_check(const PotentialSpec& spec, int grid_n);

struct H3Report {
  bool holds_on_samples = false;
  double worst_margin = 0.0;
};

H3Report h3_check(const PotentialSpec& spec, int samples, std::uint64_t seed);

/// lim_{d -> 0+} L1(z,z,d) + L2(z,z,d), from the closed form.
double interval_equivalence_defect(const PotentialSpec& spec, double z);

enum class H4Certificate { Twist, ConvexDifference, Uncertified };

/// Indirect (H4) certificate: twist for C^2 specs, strict convexity of
/// rho(z) + lambda |z| for difference-form specs.
H4Certificate h4_certificate(const PotentialSpec& spec);
std::string to_string(H4Certificate c);

/// True for rho(x - y) + 1/2 |x - y| (+ mu sqrt(1 + (x - y)^2)) with strictly
/// convex smooth part.
bool is_rho_family(const PotentialSpec& spec);

}  // namespace xyergo
