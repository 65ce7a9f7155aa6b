#pragma once

// The Aubry set as fixed points a^inf over m, the pseudo-metric
// delta(a, b) = H(a, b) + H(b, a) and its quotient on a finite anchor cover.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "xyergo/barrier.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/matrix.hpp"
#include "xyergo/potential.hpp"

namespace xyergo {

struct QuotientStructure {
  std::vector<double> anchors;
  Matrix delta;                          // H(a,b) + H(b,a)
  std::vector<std::size_t> class_of;     // class index per anchor
  std::vector<std::vector<std::size_t>> classes;
  std::vector<std::size_t> component_of;
  Matrix hausdorff;                      // Hausdorff distance of C(a), C(b)
  double eps_class = 0.0;
};

/// Default class threshold: min(spacing / 4, half the smallest cross-component
/// delta), floored at the numeric noise of delta.
double default_eps_class(const QuotientStructure& q, const BarrierMatrix& bm, double spacing);

/// Classes are the transitive closure of delta <= eps_class; without an
/// explicit eps_class the default above is used.
QuotientStructure build_quotient(const BarrierMatrix& bm, const GroundState& gs, double spacing,
                                 std::optional<double> eps_class = {});

/// max over anchor pairs of |d_X(a^inf, b^inf) - |a - b||, with d_X summed
/// over the first `truncation` coordinates.
double aubry_isometry_check(const GroundState& gs, const BarrierMatrix& bm, int truncation = 40);

enum class PairExpectation { Inequivalent, Equivalent, Exempt };

struct PairVerdict {
  std::size_t i = 0, j = 0;
  double delta = 0.0;
  bool same_component = false;
  bool same_class = false;
  PairExpectation expectation = PairExpectation::Exempt;
  bool ok = true;
  double margin = 0.0;  // signed distance of delta from eps_class in the expected direction
};

/// Distinct components must be inequivalent. Pairs in one component must be
/// equivalent when the interval-equivalence defect vanishes on the segment
/// between them; otherwise no assertion is made.
std::vector<PairVerdict> quotient_vs_components(const QuotientStructure& q, const PotentialSpec& spec,
                                                double defect_tol = 1e-9);

/// max over anchor pairs of |delta(a, b) - |a - b||. Throws FamilyError
/// unless spec is rho(x - y) + 1/2 |x - y| (+ mu sqrt term).
double isometry_to_interval_check(const QuotientStructure& q, const PotentialSpec& spec);

/// Columns a, b, delta, same_component, same_class.
void write_quotient_csv(std::ostream& os, const QuotientStructure& q);
nlohmann::json classes_json(const QuotientStructure& q, const GroundState& gs);

std::string to_string(PairExpectation e);

}  // namespace xyergo
