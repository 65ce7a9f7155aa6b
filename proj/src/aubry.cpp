#include "xyergo/aubry.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numeric>

#include "xyergo/errors.hpp"
#include "xyergo/mane.hpp"
#include "xyergo/parallel.hpp"

namespace xyergo {
namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

}  // namespace

double default_eps_class(const QuotientStructure& q, const BarrierMatrix& bm, double spacing) {
  const std::size_t n = q.anchors.size();
  double diag_noise = 0.0;
  double cross = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    diag_noise = std::max(diag_noise, std::abs(q.delta(i, i)));
    for (std::size_t j = 0; j < n; ++j) {
      if (q.component_of[i] != q.component_of[j]) cross = std::min(cross, q.delta(i, j));
    }
  }
  double eps = 0.25 * spacing;
  if (std::isfinite(cross)) eps = std::min(eps, 0.5 * cross);
  return std::max(eps, 4.0 * bm.eps_num() + 2.0 * diag_noise);
}

QuotientStructure build_quotient(const BarrierMatrix& bm, const GroundState& gs, double spacing,
                                 std::optional<double> eps_class) {
  QuotientStructure q;
  q.anchors = aubry_fixed_points(gs, spacing);
  const std::size_t n = q.anchors.size();

  Matrix h(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = 0; j < n; ++j) h(i, j) = peierls_fixed(bm, gs, q.anchors[i], q.anchors[j]);
  });
  q.delta = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) q.delta(i, j) = h(i, j) + h(j, i);
  }

  q.component_of.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = gs.component_of(q.anchors[i]);
    if (!c) throw EmptyGroundStateError("anchor outside every component");
    q.component_of[i] = *c;
  }
  q.hausdorff = Matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      q.hausdorff(i, j) = hausdorff(gs.components[q.component_of[i]], gs.components[q.component_of[j]]);
    }
  }

  q.eps_class = eps_class ? *eps_class : default_eps_class(q, bm, spacing);
  DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (q.delta(i, j) <= q.eps_class) sets.unite(i, j);
    }
  }
  q.class_of.assign(n, 0);
  std::vector<std::size_t> label(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (label[root] == n) {
      label[root] = q.classes.size();
      q.classes.emplace_back();
    }
    q.class_of[i] = label[root];
    q.classes[label[root]].push_back(i);
  }
  return q;
}

double aubry_isometry_check(const GroundState& gs, const BarrierMatrix& bm, int truncation) {
  std::vector<double> anchors;
  for (const auto& c : gs.components) {
    anchors.push_back(c.lo);
    anchors.push_back(c.hi);
  }
  for (double x : bm.grid) {
    if (gs.contains(x)) anchors.push_back(x);
  }
  double worst = 0.0;
  for (double a : anchors) {
    for (double b : anchors) {
      const auto d = word_distance(OrbitWord::fixed(a), OrbitWord::fixed(b), truncation);
      worst = std::max(worst, std::abs(d.value - std::abs(a - b)));
    }
  }
  return worst;
}

std::vector<PairVerdict> quotient_vs_components(const QuotientStructure& q, const PotentialSpec& spec,
                                                double defect_tol) {
  constexpr int kInteriorSamples = 16;
  std::vector<PairVerdict> out;
  const std::size_t n = q.anchors.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      PairVerdict v;
      v.i = i;
      v.j = j;
      v.delta = q.delta(i, j);
      v.same_component = q.component_of[i] == q.component_of[j];
      v.same_class = q.class_of[i] == q.class_of[j];
      if (!v.same_component) {
        v.expectation = PairExpectation::Inequivalent;
        v.margin = v.delta - q.eps_class;
        v.ok = v.margin > 0.0;
      } else {
        // Endpoint behaviour is not covered; sample the open segment only.
        const double lo = std::min(q.anchors[i], q.anchors[j]);
        const double hi = std::max(q.anchors[i], q.anchors[j]);
        double worst = 0.0;
        for (int k = 1; k <= kInteriorSamples; ++k) {
          const double z = lo + (hi - lo) * k / (kInteriorSamples + 1);
          worst = std::max(worst, std::abs(interval_equivalence_defect(spec, z)));
        }
        if (worst <= defect_tol * (1.0 + spec.lipschitz_bound())) {
          v.expectation = PairExpectation::Equivalent;
          v.margin = q.eps_class - v.delta;
          v.ok = v.margin >= 0.0;
        } else {
          v.expectation = PairExpectation::Exempt;
          v.margin = 0.0;
          v.ok = true;
        }
      }
      out.push_back(v);
    }
  }
  return out;
}

double isometry_to_interval_check(const QuotientStructure& q, const PotentialSpec& spec) {
  if (!is_rho_family(spec)) {
    throw FamilyError("isometry_to_interval_check needs h = rho(x-y) + 1/2|x-y| with strictly convex rho");
  }
  double worst = 0.0;
  const std::size_t n = q.anchors.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      worst = std::max(worst, std::abs(q.delta(i, j) - std::abs(q.anchors[i] - q.anchors[j])));
    }
  }
  return worst;
}

void write_quotient_csv(std::ostream& os, const QuotientStructure& q) {
  os << "a,b,delta,same_component,same_class\n" << std::setprecision(12);
  const std::size_t n = q.anchors.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      os << q.anchors[i] << ',' << q.anchors[j] << ',' << q.delta(i, j) << ','
         << int(q.component_of[i] == q.component_of[j]) << ',' << int(q.class_of[i] == q.class_of[j]) << '\n';
    }
  }
}

nlohmann::json classes_json(const QuotientStructure& q, const GroundState& gs) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : gs.components) comps.push_back({c.lo, c.hi});
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& members : q.classes) {
    nlohmann::json anchors = nlohmann::json::array();
    for (auto i : members) anchors.push_back(q.anchors[i]);
    classes.push_back({{"anchors", anchors}, {"component", q.component_of[members.front()]}});
  }
  return {{"eps_class", q.eps_class}, {"components", comps}, {"classes", classes}};
}

std::string to_string(PairExpectation e) {
  switch (e) {
    case PairExpectation::Inequivalent:
      return "inequivalent";
    case PairExpectation::Equivalent:
      return "equivalent";
    case PairExpectation::Exempt:
      break;
  }
  return "exempt";
}

}  // namespace xyergo
