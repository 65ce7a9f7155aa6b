#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "xyergo/errors.hpp"
#include "xyergo/potential.hpp"
#include "xyergo/potential_io.hpp"

using namespace xyergo;

namespace {

// Direct formulas, written independently of the library's monomial tables.
double g_direct(double x, double y) { return (x - y) * (x - y) + x * x; }
double nonsmooth_direct(double x, double y) { return 0.5 * std::abs(x - y) + std::sqrt(1.0 + (x - y) * (x - y)); }

PotentialSpec g() { return builtin_potential("example-nonclosed"); }
PotentialSpec rho2() { return builtin_potential("rho-quadratic"); }
PotentialSpec nonsmooth() { return builtin_potential("remark-nonsmooth"); }

}  // namespace

TEST_CASE("evaluation matches the closed forms") {
  CHECK(eval(g(), 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(eval(nonsmooth(), 0.0, 1.0) == doctest::Approx(0.5 + std::sqrt(2.0)));
  for (double x : {0.0, 0.3, 0.77, 1.0}) CHECK(eval(rho2(), x, x) == doctest::Approx(0.0));

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double x = u(rng), y = u(rng);
    CHECK(eval(g(), x, y) == doctest::Approx(g_direct(x, y)).epsilon(1e-13));
    CHECK(eval(nonsmooth(), x, y) == doctest::Approx(nonsmooth_direct(x, y)).epsilon(1e-13));
    CHECK(eval(rho2(), x, y) == doctest::Approx((x - y) * (x - y) + 0.5 * std::abs(x - y)).epsilon(1e-13));
  }
}

TEST_CASE("evaluation outside the unit square is rejected") {
  CHECK_THROWS_AS(eval(g(), -0.1, 0.5), DomainError);
  CHECK_THROWS_AS(eval(g(), 0.5, 1.0001), DomainError);
}

TEST_CASE("first derivatives agree with central differences off the diagonal") {
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_potential(name);
    const double tol = 1e-6 * (1.0 + spec.lipschitz_bound());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int k = 0; k < 100; ++k) {
      const double x = u(rng), y = u(rng);
      if (std::abs(x - y) < 1e-3) continue;
      const double h = 1e-5;
      const double fx = (eval(spec, x + h, y) - eval(spec, x - h, y)) / (2 * h);
      const double fy = (eval(spec, x, y + h) - eval(spec, x, y - h)) / (2 * h);
      CHECK(std::abs(d1(spec, x, y) - fx) <= tol);
      CHECK(std::abs(d2(spec, x, y) - fy) <= tol);
    }
  }
}

TEST_CASE("one-sided derivatives on the diagonal") {
  const auto spec = rho2();
  CHECK_THROWS_AS(d2(spec, 0.4, 0.4), NondifferentiableError);
  const double delta = 1e-6;
  const double right = (eval(spec, 0.4, 0.4 + delta) - eval(spec, 0.4, 0.4)) / delta;
  const double left = (eval(spec, 0.4, 0.4) - eval(spec, 0.4, 0.4 - delta)) / delta;
  CHECK(d2(spec, 0.4, 0.4, Side::Right) == doctest::Approx(0.5));
  CHECK(std::abs(d2(spec, 0.4, 0.4, Side::Right) - right) <= 1e-5);
  CHECK(std::abs(d2(spec, 0.4, 0.4, Side::Left) - left) <= 1e-5);
  CHECK_NOTHROW(d1(g(), 0.4, 0.4));
}

TEST_CASE("polynomial derivatives are exact") {
  const auto spec = PotentialSpec::from_terms({{3, 1, 2.0}, {0, 2, -1.0}}, 0.0, 0.0);
  const double x = 0.3, y = 0.6;
  CHECK(d1(spec, x, y) == doctest::Approx(6.0 * x * x * y));
  CHECK(d2(spec, x, y) == doctest::Approx(2.0 * x * x * x - 2.0 * y));
  CHECK(d12(g(), 0.2, 0.9) == doctest::Approx(-2.0));
}

TEST_CASE("twist condition") {
  const auto tg = twist_check(g(), 64);
  CHECK(tg.holds);
  CHECK(tg.worst_value == doctest::Approx(-2.0));

  const auto xy = twist_check(PotentialSpec::from_terms({{1, 1, 1.0}}, 0.0, 0.0), 16);
  CHECK_FALSE(xy.holds);
  CHECK(xy.worst_value == doctest::Approx(1.0));

  const auto quartic = twist_check(rho_family({0, 0, 1, 0, 1}), 64);
  CHECK(quartic.holds);
  CHECK(quartic.worst_value < 0.0);
  CHECK(quartic.worst_value <= -2.0 + 1e-9);
}

TEST_CASE("strict submodularity on random rectangles") {
  CHECK(h3_check(g(), 2000, 3).holds_on_samples);
  CHECK(h3_check(nonsmooth(), 2000, 3).holds_on_samples);
  const auto sep = h3_check(PotentialSpec::from_terms({{1, 0, 1.0}, {0, 1, 1.0}}, 0.0, 0.0), 500, 3);
  CHECK_FALSE(sep.holds_on_samples);
  CHECK(std::abs(sep.worst_margin) <= 1e-12);
}

TEST_CASE("interval-equivalence defect") {
  CHECK(interval_equivalence_defect(rho2(), 0.3) == doctest::Approx(1.0));
  for (double z : {0.1, 0.5, 0.9}) CHECK(interval_equivalence_defect(nonsmooth(), z) == doctest::Approx(1.0));
  // smooth spec: Px + Py on the diagonal
  const auto spec = PotentialSpec::from_terms({{2, 0, 1.0}, {0, 1, 3.0}}, 0.0, 0.0);
  CHECK(interval_equivalence_defect(spec, 0.4) == doctest::Approx(2 * 0.4 + 3.0));
  // the flat well carries no defect inside the well
  CHECK(std::abs(interval_equivalence_defect(builtin_potential("flat-well"), 0.5)) <= 1e-12);
}

TEST_CASE("family detection and certificates") {
  CHECK(is_rho_family(rho2()));
  CHECK(is_rho_family(nonsmooth()));
  CHECK_FALSE(is_rho_family(g()));
  CHECK(h4_certificate(g()) == H4Certificate::Twist);
  CHECK(h4_certificate(rho2()) == H4Certificate::ConvexDifference);
}

TEST_CASE("rho_family expands rho(x - y) exactly") {
  const auto spec = rho_family({0.5, -1.0, 2.0, 0.0, 3.0}, 0.25, 0.0);
  auto rho = [](double z) { return 0.5 - z + 2 * z * z + 3 * z * z * z * z; };
  for (double x : {0.0, 0.2, 0.7}) {
    for (double y : {0.1, 0.6, 1.0}) {
      CHECK(spec.value(x, y) == doctest::Approx(rho(x - y) + 0.25 * std::abs(x - y)).epsilon(1e-12));
    }
  }
  CHECK(spec.poly_is_difference_function());
}

TEST_CASE("potential documents") {
  const auto doc = nlohmann::json::parse(R"({"poly": [[2,0,1.5],[1,1,-1]], "abs_weight": 0.5,
                                             "wells": {"weight": 2, "intervals": [[0.1, 0.2]]}})");
  const auto spec = parse_potential(doc);
  CHECK(spec.value(0.5, 0.5) == doctest::Approx(1.5 * 0.25 - 0.25 + 2 * 2 * std::pow(0.3, 4)));
  const auto back = parse_potential(potential_to_json(spec));
  CHECK(back.value(0.3, 0.9) == doctest::Approx(spec.value(0.3, 0.9)));

  CHECK_THROWS_AS(parse_potential(nlohmann::json::parse(R"({"poly": [[1,2]]})")), ConfigError);
  CHECK_THROWS_AS(parse_potential(nlohmann::json::parse(R"({"wells": {"weight": 1, "intervals": [[0.5, 0.2]]}})")),
                  ConfigError);
  CHECK_THROWS_AS(potential_from_argument("no-such-potential"), ConfigError);
  CHECK_THROWS_AS(potential_from_argument("{not json"), ConfigError);
  CHECK(potential_from_argument("example-nonclosed").value(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("twist implies strict submodularity on smooth potentials") {
  const std::vector<PotentialSpec> smooth = {
      g(),
      rho_family({0, 0, 1}, 0.0, 0.0),
      rho_family({0, 0, 1, 0, 1}, 0.0, 0.0),
      PotentialSpec::from_terms({{2, 0, 1.0}, {1, 1, -3.0}, {0, 2, 1.0}}, 0.0, 0.0),
      PotentialSpec::from_terms({{1, 1, 1.0}}, 0.0, 0.0),
  };
  for (const auto& spec : smooth) {
    if (twist_check(spec, 64).holds) CHECK(h3_check(spec, 1000, 5).holds_on_samples);
  }
}

TEST_CASE("antisymmetric part comes from the polynomial alone") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_potential(name);
    for (int k = 0; k < 200; ++k) {
      const double x = u(rng), y = u(rng);
      const double lhs = eval(spec, x, y) - eval(spec, y, x);
      const double rhs = spec.poly_value(x, y) - spec.poly_value(y, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("Lipschitz bound holds on random pairs") {
  for (const auto& name : builtin_names()) {
    const auto spec = builtin_potential(name);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double x = u(rng), y = u(rng), xp = u(rng), yp = u(rng);
      const double d = std::abs(x - xp) + std::abs(y - yp);
      worst = std::max(worst, std::abs(eval(spec, x, y) - eval(spec, xp, yp)) / d);
    }
    CHECK_MESSAGE(worst <= spec.lipschitz_bound(), name);
  }
}
