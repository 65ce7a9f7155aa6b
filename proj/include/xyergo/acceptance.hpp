#pragma once

// Acceptance checks shared by the `verify` subcommand and the acceptance
// test binary. Every tolerance below is fixed here, not configurable.

#include <cstdint>
#include <string>
#include <vector>

#include "xyergo/barrier.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/potential.hpp"
#include "xyergo/report.hpp"

namespace xyergo {

struct AcceptanceOptions {
  int grid_n = 256;
  double refine_tol = 1e-8;
  double spacing = 0.05;
  std::uint64_t seed = 1;
};

/// Ground state and barrier of one potential at one resolution.
struct Analysis {
  std::string name;
  PotentialSpec spec;
  GroundState gs;
  BarrierMatrix bm;
  double seconds = 0.0;  // wall time of ground state + barrier
};

Analysis analyze(const std::string& name, const PotentialSpec& spec, int grid_n, double refine_tol);

// Criterion 1: delta(a,b) = |a-b| within 0.03 for rho(z) = z^2, 60 s budget.
std::vector<CheckResult> check_isometry_rho(const Analysis& rho, const AcceptanceOptions& opt);
// Criterion 2: H(0,1) and H(1,0) within 0.02 of 1/2.
std::vector<CheckResult> check_barrier_closed_form(const Analysis& rho);
// Criterion 3: g = (x-y)^2 + x^2, m = {0}, 1^inf not semi-static, 0^inf semi-static.
std::vector<CheckResult> check_nonclosed_example(const Analysis& g);
// Criterion 4: quotient collapse on flat wells, separation across wells.
std::vector<CheckResult> check_flat_well(const Analysis& two_well, const Analysis& flat_well,
                                         const AcceptanceOptions& opt);
// Criterion 5: 1/2|x-y| + sqrt(1+(x-y)^2) keeps the interval uncollapsed.
std::vector<CheckResult> check_nonsmooth(const Analysis& nonsmooth, const AcceptanceOptions& opt);
// Criterion 6: property suite for one potential.
std::vector<CheckResult> check_properties(const Analysis& a, const AcceptanceOptions& opt);
// Criterion 7: the Aubry set is exactly the fixed points over m.
std::vector<CheckResult> check_aubry_fixed_points(const Analysis& a, const AcceptanceOptions& opt);

/// Every check that applies to the named built-in, or the generic property
/// and fixed-point checks for any other potential.
std::vector<CheckResult> verify_potential(const std::string& name, const PotentialSpec& spec,
                                          const AcceptanceOptions& opt);

}  // namespace xyergo
