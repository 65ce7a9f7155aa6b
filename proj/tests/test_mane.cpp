#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "xyergo/errors.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/mane.hpp"
#include "xyergo/potential_io.hpp"

using namespace xyergo;

namespace {

struct Built {
  PotentialSpec spec;
  GroundState gs;
  BarrierMatrix bm;
};

Built build(const std::string& name, int n) {
  auto spec = builtin_potential(name);
  auto gs = compute_ground_state(spec, n, 1e-8);
  auto bm = build_barrier(spec, gs, n);
  return {std::move(spec), std::move(gs), std::move(bm)};
}

}  // namespace

TEST_CASE("word distance") {
  const auto same = word_distance(OrbitWord{{0.3, 0.1}, 0.0}, OrbitWord{{0.3, 0.1}, 0.0}, 20);
  CHECK(same.value == 0.0);
  CHECK(same.error_bound == std::ldexp(1.0, -20));
  const auto far = word_distance(OrbitWord::fixed(0.0), OrbitWord::fixed(1.0), 30);
  CHECK(far.value == doctest::Approx(1.0 - std::ldexp(1.0, -30)).epsilon(1e-15));
  const auto first = word_distance(OrbitWord{{1.0}, 0.0}, OrbitWord{{0.0}, 0.0}, 10);
  CHECK(first.value == 0.5);
  CHECK_THROWS_AS(word_distance(OrbitWord{}, OrbitWord{}, 0), DomainError);
}

TEST_CASE("semi-static check on the non-closed example") {
  const auto b = build("example-nonclosed", 256);
  const auto ones = semistatic_check(b.bm, b.gs, OrbitWord{{1.0, 1.0}, 1.0}, 1e-9);
  CHECK_FALSE(ones.passes);
  CHECK(ones.worst_defect >= 1.0);
  // the pair (0, 2): two unit steps against S(1^inf, 1^inf) <= 1
  const OrbitWord w{{1.0, 1.0}, 1.0};
  CHECK(b.bm.cost(1.0, 1.0) * 2 == doctest::Approx(2.0));
  CHECK(mane_eventually_fixed(b.bm, b.gs, w, w.shifted(2)) <= 1.0 + 1e-12);

  const auto zero = semistatic_check(b.bm, b.gs, OrbitWord::fixed(0.0), 1e-9);
  CHECK(zero.passes);
  CHECK(std::abs(zero.worst_defect) <= 1e-9);

  const auto down = semistatic_check(b.bm, b.gs, OrbitWord{{0.9, 0.5, 0.3}, 0.0}, 1e-9);
  CHECK(down.passes);
}

TEST_CASE("predicted membership") {
  const auto g = build("example-nonclosed", 64);
  CHECK(mane_membership_predicted(OrbitWord{{0.3, 0.7}, 0.0}, g.gs));
  CHECK_FALSE(mane_membership_predicted(OrbitWord{{1.0}, 1.0}, g.gs));
  // an eventually constant point repeats its tail, so it is never injective
  CHECK_FALSE(is_injective(OrbitWord{{0.9, 0.5, 0.3}, 0.0}));
  CHECK_FALSE(is_injective(OrbitWord{{0.2, 0.7, 0.2, 0.7}, 0.7}));
  const auto rho = build("rho-quadratic", 64);
  CHECK(mane_membership_predicted(OrbitWord{{0.5}, 0.5}, rho.gs));
}

TEST_CASE("prediction and semi-static check agree on fixture words") {
  const auto b = build("example-nonclosed", 256);
  const auto words = parse_words(nlohmann::json::parse(R"([
    {"symbols": [0], "tail": 0},
    {"symbols": [1, 1], "tail": 1},
    {"symbols": [0.5], "tail": 0.5},
    {"symbols": [0.9, 0.5, 0.3], "tail": 0},
    {"symbols": [0.4, 0.2], "tail": 0},
    {"symbols": [0.3, 0.7], "tail": 0},
    {"symbols": [1], "tail": 0},
    {"symbols": [0.8, 0.6, 0.4, 0.2], "tail": 0},
    {"symbols": [], "tail": 0.75},
    {"symbols": [0.25], "tail": 0}
  ])"));
  REQUIRE(words.size() == 10);
  const auto table = cross_validate(b.bm, b.gs, words, b.bm.eps_num());
  for (const auto& row : table.rows) {
    INFO("tail " << row.word.tail << ", defect " << row.report.worst_defect);
    CHECK(row.predicted == row.observed);
  }
  CHECK(table.disagreements() == 0);
  CHECK(table.both_in + table.both_out == 10);
  CHECK(table.both_out == 3);

  std::ostringstream os;
  write_verdicts_csv(os, table);
  CHECK(os.str().rfind("index,symbols,tail,predicted,observed,", 0) == 0);
}

TEST_CASE("periodic orbits beyond one period are not semi-static") {
  const auto b = build("example-nonclosed", 64);
  CHECK(periodic_semistatic_defect(b.bm, {0.0}, 1) == doctest::Approx(0.0));
  // two periods of (1, 0.5): LHS is twice the cycle cost, S to itself one period
  const double cycle = b.bm.cost(1.0, 0.5) + b.bm.cost(0.5, 1.0);
  CHECK(periodic_semistatic_defect(b.bm, {1.0, 0.5}, 2) == doctest::Approx(cycle));
  CHECK(periodic_semistatic_defect(b.bm, {1.0, 0.5, 1.0, 0.5}, 1) == doctest::Approx(cycle));
  CHECK_THROWS_AS(periodic_semistatic_defect(b.bm, {}, 1), DomainError);
}

TEST_CASE("malformed word fixtures") {
  CHECK(parse_words(nlohmann::json::array()).empty());
  CHECK_THROWS_AS(parse_words(nlohmann::json::object()), ConfigError);
  CHECK_THROWS_AS(parse_words(nlohmann::json::parse(R"([{"symbols": [2], "tail": 0}])")), ConfigError);
  CHECK_THROWS_AS(parse_words(nlohmann::json::parse(R"([{"tail": 0}])")), ConfigError);
}

TEST_CASE("fixed points over m are semi-static") {
  for (const auto& name : builtin_names()) {
    const auto b = build(name, 128);
    for (double a : aubry_fixed_points(b.gs, 0.05)) {
      CHECK_MESSAGE(semistatic_check(b.bm, b.gs, OrbitWord::fixed(a), b.bm.eps_num()).passes, name << " " << a);
      // running sums along a^inf stay near zero
      double partial = 0.0;
      for (int k = 0; k < 20; ++k) {
        partial += b.bm.cost(a, a);
        CHECK(std::abs(partial) <= 2 * b.bm.eps_cyc);
      }
    }
  }
}

TEST_CASE("two-periodic orbits inside m lose semi-staticity linearly") {
  const auto b = build("rho-quadratic", 64);
  const double one = periodic_semistatic_defect(b.bm, {0.2, 0.7}, 1);
  CHECK(one == doctest::Approx(0.0));
  const double two = periodic_semistatic_defect(b.bm, {0.2, 0.7}, 2);
  const double five = periodic_semistatic_defect(b.bm, {0.2, 0.7}, 5);
  CHECK(two > 0.0);
  CHECK(five == doctest::Approx(4.0 * two));
}
