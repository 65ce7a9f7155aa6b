#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <sstream>

#include "xyergo/errors.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/potential_io.hpp"

using namespace xyergo;

namespace {

// Independent minimum of h(a, a) by a dense uniform scan.
double dense_diagonal_min(const PotentialSpec& spec, int samples) {
  double best = spec.value(0.0, 0.0);
  for (int k = 1; k <= samples; ++k) {
    const double a = double(k) / samples;
    best = std::min(best, spec.value(a, a));
  }
  return best;
}

}  // namespace

TEST_CASE("golden section finds interior and boundary minima") {
  const auto [x, fx] = golden_section_minimize([](double t) { return (t - 0.37) * (t - 0.37) + 2.0; }, 0, 1, 1e-10);
  CHECK(x == doctest::Approx(0.37).epsilon(1e-6));
  CHECK(fx == doctest::Approx(2.0));
  const auto [b, fb] = golden_section_minimize([](double t) { return t; }, 0.2, 0.9, 1e-10);
  CHECK(b == 0.2);
  CHECK(fb == 0.2);
}

TEST_CASE("ground states of the built-ins") {
  SUBCASE("non-closed example: m = {0}") {
    const auto gs = compute_ground_state(builtin_potential("example-nonclosed"), 256, 1e-8);
    CHECK(std::abs(gs.alpha) <= 1e-12);
    REQUIRE(gs.components.size() == 1);
    CHECK(gs.components[0].is_point());
    CHECK(std::abs(gs.components[0].lo) <= 1e-6);
    CHECK(aubry_fixed_points(gs, 0.05) == std::vector<double>{gs.components[0].lo});
  }
  SUBCASE("rho(z) = z^2: m = [0,1]") {
    const auto gs = compute_ground_state(builtin_potential("rho-quadratic"), 256, 1e-8);
    CHECK(gs.alpha == doctest::Approx(0.0));
    REQUIRE(gs.components.size() == 1);
    CHECK(gs.components[0] == Interval{0.0, 1.0});
    const auto anchors = aubry_fixed_points(gs, 0.25);
    REQUIRE(anchors.size() == 5);
    for (int k = 0; k < 5; ++k) CHECK(anchors[k] == doctest::Approx(0.25 * k));
  }
  SUBCASE("nonsmooth example: alpha = 1, m = [0,1]") {
    const auto gs = compute_ground_state(builtin_potential("remark-nonsmooth"), 256, 1e-8);
    CHECK(gs.alpha == doctest::Approx(1.0));
    REQUIRE(gs.components.size() == 1);
    CHECK(gs.components[0] == Interval{0.0, 1.0});
  }
  SUBCASE("two wells") {
    const auto gs = compute_ground_state(builtin_potential("two-well"), 256, 1e-8);
    REQUIRE(gs.components.size() == 2);
    // a quartic well floor is flat to about refine_tol^(1/4)
    const double slack = 2.0 * std::pow(1e-8 / 64.0, 0.25);
    CHECK(std::abs(gs.components[0].lo - 0.1) <= slack);
    CHECK(std::abs(gs.components[0].hi - 0.3) <= slack);
    CHECK(std::abs(gs.components[1].lo - 0.5) <= slack);
    CHECK(std::abs(gs.components[1].hi - 0.65) <= slack);
    const auto anchors = aubry_fixed_points(gs, 0.05);
    CHECK(anchors.front() == gs.components[0].lo);
    CHECK(anchors.back() == gs.components[1].hi);
  }
}

TEST_CASE("alpha agrees with a dense diagonal scan") {
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_potential(name);
    const auto gs = compute_ground_state(spec, 64, 1e-10);
    const double oracle = dense_diagonal_min(spec, 200000);
    CHECK(gs.alpha <= oracle + 1e-12);
    CHECK(gs.alpha >= oracle - 1e-6);
  }
}

TEST_CASE("alpha does not increase on finer grids") {
  const auto spec = PotentialSpec::from_terms({{2, 0, 1.0}, {1, 0, -0.7321}, {0, 3, 0.4}}, 0.0, 0.0);
  double previous = std::numeric_limits<double>::infinity();
  for (int n : {16, 32, 64, 128, 256}) {
    const auto gs = compute_ground_state(spec, n, 1e-8);
    CHECK(gs.alpha <= previous + 1e-8);
    previous = gs.alpha;
  }
}

TEST_CASE("membership and component lookup") {
  const auto gs = compute_ground_state(builtin_potential("two-well"), 128, 1e-8);
  CHECK(gs.contains(0.2));
  CHECK(gs.contains(0.6));
  CHECK_FALSE(gs.contains(0.4));
  CHECK(gs.component_of(0.2) == std::optional<std::size_t>(0));
  CHECK(gs.component_of(0.6) == std::optional<std::size_t>(1));
  CHECK_FALSE(gs.component_of(0.9).has_value());
  CHECK(gs.distance(0.4) == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("invalid resolutions are rejected") {
  CHECK_THROWS_AS(compute_ground_state(builtin_potential("rho-quadratic"), 8, 1e-8), DomainError);
  CHECK_THROWS(compute_ground_state(builtin_potential("rho-quadratic"), 64, 0.0));
}

TEST_CASE("ground-state CSV") {
  const auto spec = builtin_potential("rho-quadratic");
  const auto gs = compute_ground_state(spec, 16, 1e-8);
  std::ostringstream os;
  write_groundstate_csv(os, spec, gs);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "a,h(a,a),in_m");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 17);
}

TEST_CASE("alpha of a quadratic diagonal converges quadratically") {
  // h(a, a) = a^2 - 0.74 a, exact minimum -0.1369 at a = 0.37
  const auto spec = PotentialSpec::from_terms({{2, 0, 1.0}, {1, 0, -0.74}}, 0.0, 0.0);
  for (int n : {16, 64, 256}) {
    const auto gs = compute_ground_state(spec, n, 1e-12);
    // second derivative 2 bounds the grid error by (1/n)^2 / 4 * 2
    CHECK(std::abs(gs.alpha + 0.1369) <= 1.0 / (2.0 * n * n));
  }
}

TEST_CASE("component count is stable under grid doubling") {
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_potential(name);
    const auto base = compute_ground_state(spec, 64, 1e-8).components.size();
    for (int n : {128, 256}) CHECK_MESSAGE(compute_ground_state(spec, n, 1e-8).components.size() == base, name);
  }
}
