#include "xyergo/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "xyergo/errors.hpp"
#include "xyergo/parallel.hpp"

namespace xyergo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << what << " = " << t << " is outside [0,1]";
    throw DomainError(os.str());
  }
}

}  // namespace

double BarrierMatrix::eps_num() const { return numeric_tolerance(alpha); }

std::optional<std::size_t> BarrierMatrix::node_of(double x) const {
  const double scaled = x * grid_n;
  const long long i = std::llround(scaled);
  if (i < 0 || i > grid_n) return std::nullopt;
  if (std::abs(double(i) / grid_n - x) > 1e-12) return std::nullopt;
  return static_cast<std::size_t>(i);
}

double cycle_tolerance(const PotentialSpec& spec, int grid_n) {
  return 10.0 * spec.lipschitz_bound() / grid_n;
}

double numeric_tolerance(double alpha) { return 1e-9 * (1.0 + std::abs(alpha)); }

Matrix reduced_costs(const PotentialSpec& spec, double alpha, int grid_n) {
  const std::size_t n = static_cast<std::size_t>(grid_n) + 1;
  Matrix c(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      c(i, j) = spec.value(double(i) / grid_n, double(j) / grid_n) - alpha;
    }
  }
  return c;
}

Matrix min_plus(const Matrix& a, const Matrix& b) {
  const std::size_t n = a.size();
  Matrix out(n, kInf);
  parallel_for(n, [&](std::size_t i) {
    auto dst = out.row(i);
    const auto src = a.row(i);
    for (std::size_t k = 0; k < n; ++k) {
      const double aik = src[k];
      const auto bk = b.row(k);
      for (std::size_t j = 0; j < n; ++j) dst[j] = std::min(dst[j], aik + bk[j]);
    }
  });
  return out;
}

namespace {

// S <- min(S, T); returns the largest decrease.
double absorb(Matrix& s, const Matrix& t) {
  const std::size_t n = s.size();
  double improve = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    auto dst = s.row(i);
    const auto src = t.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (src[j] < dst[j]) {
        improve = std::max(improve, dst[j] - src[j]);
        dst[j] = src[j];
      }
    }
  }
  return improve;
}

}  // namespace

Matrix relax_bounded(const Matrix& cost, int max_len) {
  if (max_len < 1) throw DomainError("relax_bounded needs max_len >= 1");
  Matrix s = cost;
  for (int r = 2; r <= max_len; ++r) absorb(s, min_plus(s, cost));
  return s;
}

Closure min_plus_closure(const Matrix& cost, double stop_tol) {
  Closure out;
  out.S = cost;
  const std::size_t n = cost.size();
  // 2^r >= n + 1 covers every simple path and simple cycle; the extra rounds
  // only matter when the fixpoint has not been reached.
  int cap = 4;
  while ((std::size_t{1} << (cap - 4)) < n + 1) ++cap;
  for (out.rounds = 1; out.rounds <= cap; ++out.rounds) {
    if (absorb(out.S, min_plus(out.S, out.S)) <= stop_tol) break;
  }
  out.rounds = std::min(out.rounds, cap);

  const Matrix extra = min_plus(out.S, out.S);
  double improve = 0.0;
  double diag = kInf;
  for (std::size_t i = 0; i < n; ++i) {
    diag = std::min(diag, out.S(i, i));
    for (std::size_t j = 0; j < n; ++j) improve = std::max(improve, out.S(i, j) - extra(i, j));
  }
  out.margin = std::min(diag, -improve);
  return out;
}

BarrierMatrix build_barrier(const PotentialSpec& spec, const GroundState& gs, int grid_n) {
  if (grid_n < 16) throw DomainError("build_barrier needs grid_n >= 16");
  BarrierMatrix bm;
  bm.spec = spec;
  bm.alpha = gs.alpha;
  bm.grid_n = grid_n;
  bm.grid.resize(static_cast<std::size_t>(grid_n) + 1);
  for (int i = 0; i <= grid_n; ++i) bm.grid[i] = double(i) / grid_n;
  bm.eps_cyc = cycle_tolerance(spec, grid_n);

  Closure cl = min_plus_closure(reduced_costs(spec, gs.alpha, grid_n), 1e-3 * bm.eps_num());
  bm.S = std::move(cl.S);
  bm.rounds = cl.rounds;
  bm.neg_cycle_margin = cl.margin;
  if (bm.neg_cycle_margin < -bm.eps_cyc) {
    std::ostringstream os;
    os << "negative grid cycle: margin " << bm.neg_cycle_margin << " < -" << bm.eps_cyc;
    throw NegativeCycleError(os.str());
  }
  return bm;
}

double mane_between(const BarrierMatrix& bm, double x, double y) {
  check_unit(x, "x");
  check_unit(y, "y");
  const auto p = bm.node_of(x);
  const auto q = bm.node_of(y);
  if (p && q) return bm.S(*p, *q);

  const std::size_t n = bm.nodes();
  double best = bm.cost(x, y);
  if (p) {
    const auto row = bm.S.row(*p);
    for (std::size_t j = 0; j < n; ++j) best = std::min(best, row[j] + bm.cost(bm.grid[j], y));
    return best;
  }
  std::vector<double> from_x(n);
  for (std::size_t i = 0; i < n; ++i) from_x[i] = bm.cost(x, bm.grid[i]);
  if (q) {
    for (std::size_t i = 0; i < n; ++i) best = std::min(best, from_x[i] + bm.S(i, *q));
    return best;
  }
  // reach[j]: cheapest x -> ... -> x_j with all interior nodes on the grid.
  std::vector<double> reach = from_x;
  for (std::size_t i = 0; i < n; ++i) {
    const auto row = bm.S.row(i);
    for (std::size_t j = 0; j < n; ++j) reach[j] = std::min(reach[j], from_x[i] + row[j]);
  }
  for (std::size_t j = 0; j < n; ++j) best = std::min(best, reach[j] + bm.cost(bm.grid[j], y));
  return best;
}

double peierls_fixed(const BarrierMatrix& bm, const GroundState& gs, double a, double b) {
  check_unit(a, "a");
  check_unit(b, "b");
  if (!gs.contains(a)) {
    std::ostringstream os;
    os << "source " << a << " is not in the minimizer set; the barrier may be infinite";
    throw SourceNotInAubryError(os.str());
  }
  return mane_between(bm, a, b);
}

double mane_eventually_fixed(const BarrierMatrix& bm, const GroundState& gs, const OrbitWord& w,
                             const OrbitWord& v) {
  for (double s : w.symbols) check_unit(s, "symbol");
  check_unit(w.tail, "tail");
  double best = kInf;

  // sigma^k(w) = v: only the first k transitions are charged.
  double partial = 0.0;
  for (std::size_t k = 1; k <= w.symbols.size() + 1; ++k) {
    partial += bm.cost(w.at(k - 1), w.at(k));
    if (w.shifted(k).same_point(v)) best = std::min(best, partial);
  }

  // Head of w into its tail, free loops at the tail, then on to v_0.
  if (gs.contains(w.tail)) {
    double head = 0.0;
    for (std::size_t i = 0; i < w.symbols.size(); ++i) head += bm.cost(w.at(i), w.at(i + 1));
    best = std::min(best, head + mane_between(bm, w.tail, v.at(0)));
  }

  if (!std::isfinite(best)) {
    std::ostringstream os;
    os << "tail " << w.tail << " is outside the minimizer set and no shift of the source matches the target";
    throw InfiniteBarrierError(os.str());
  }
  return best;
}

double gap_constant(const BarrierMatrix& bm, const GroundState& gs, double a, double b) {
  if (!gs.contains(b)) {
    std::ostringstream os;
    os << "gap_constant needs both anchors in the minimizer set; " << b << " is not";
    throw SourceNotInAubryError(os.str());
  }
  const double h = peierls_fixed(bm, gs, a, b);
  if (a == b) return 0.0;
  return bm.cost(a, b) - h;
}

double integral_barrier(const PotentialSpec& spec, const GroundState& gs, double a, double b,
                        int quad_n) {
  check_unit(a, "a");
  check_unit(b, "b");
  if (spec.abs_weight() != 0.0) {
    throw HypothesisError("integral_barrier needs h to be C^1 near the diagonal (abs_weight == 0)");
  }
  const auto ca = gs.component_of(a);
  const auto cb = gs.component_of(b);
  if (!ca || !cb || *ca != *cb) {
    throw HypothesisError("integral_barrier needs [a, b] inside one component of the minimizer set");
  }
  if (a == b) return 0.0;
  if (quad_n < 2) throw DomainError("quad_n must be at least 2");
  const int panels = quad_n + (quad_n % 2);
  const double h = (b - a) / panels;
  auto f = [&](double x) { return d2(spec, x, x); };
  double sum = f(a) + f(b);
  for (int k = 1; k < panels; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return sum * h / 3.0;
}

double brute_mane_oracle(const PotentialSpec& spec, const GroundState& gs, int grid_n, int max_len,
                         std::size_t a, std::size_t b) {
  if (grid_n < 1 || grid_n > 10) throw SizeError("brute_mane_oracle needs 1 <= grid_n <= 10");
  if (max_len < 1 || max_len > 6) throw SizeError("brute_mane_oracle needs 1 <= max_len <= 6");
  const std::size_t n = static_cast<std::size_t>(grid_n) + 1;
  if (a >= n || b >= n) throw DomainError("oracle endpoints must be grid indices");

  auto c = [&](std::size_t i, std::size_t j) {
    return spec.value(double(i) / grid_n, double(j) / grid_n) - gs.alpha;
  };
  double best = kInf;
  std::vector<std::size_t> path(static_cast<std::size_t>(max_len) + 1);
  path[0] = a;
  // Odometer over the interior nodes of each length.
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::size_t> mid(static_cast<std::size_t>(len - 1), 0);
    while (true) {
      double total = 0.0;
      std::size_t prev = a;
      for (std::size_t k = 0; k < mid.size(); ++k) {
        total += c(prev, mid[k]);
        prev = mid[k];
      }
      total += c(prev, b);
      best = std::min(best, total);
      std::size_t pos = 0;
      while (pos < mid.size() && ++mid[pos] == n) mid[pos++] = 0;
      if (pos == mid.size()) break;
    }
  }
  return best;
}

double min_periodic_action(const PotentialSpec& spec, const GroundState& gs, int grid_n,
                           int period, double delta) {
  if (grid_n < 1 || grid_n > 24) throw SizeError("min_periodic_action needs 1 <= grid_n <= 24");
  if (period < 1 || period > 4) throw SizeError("min_periodic_action needs 1 <= period <= 4");
  const std::size_t n = static_cast<std::size_t>(grid_n) + 1;
  const Matrix c = reduced_costs(spec, gs.alpha, grid_n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) dist[i] = gs.distance(double(i) / grid_n);

  double best = kInf;
  for (int p = 1; p <= period; ++p) {
    std::vector<std::size_t> word(static_cast<std::size_t>(p), 0);
    while (true) {
      double far = 0.0;
      for (auto s : word) far = std::max(far, dist[s]);
      if (delta <= 0.0 || far >= delta) {
        double total = 0.0;
        for (std::size_t k = 0; k < word.size(); ++k) total += c(word[k], word[(k + 1) % word.size()]);
        best = std::min(best, total);
      }
      std::size_t pos = 0;
      while (pos < word.size() && ++word[pos] == n) word[pos++] = 0;
      if (pos == word.size()) break;
    }
  }
  return best;
}

void write_barrier_csv(std::ostream& os, const BarrierMatrix& bm, const GroundState& gs,
                       const std::vector<double>& anchors) {
  os << "a,b,S,H,gap\n" << std::setprecision(12);
  for (double a : anchors) {
    for (double b : anchors) {
      const double s = mane_between(bm, a, b);
      os << a << ',' << b << ',' << s << ',';
      if (gs.contains(a)) {
        os << s << ',';
        if (gs.contains(b)) {
          os << (a == b ? 0.0 : bm.cost(a, b) - s);
        } else {
          os << "nan";
        }
      } else {
        os << "inf,nan";
      }
      os << '\n';
    }
  }
}

void write_mane_matrix_csv(std::ostream& os, const BarrierMatrix& bm) {
  os << "x,y,S\n" << std::setprecision(12);
  for (std::size_t i = 0; i < bm.nodes(); ++i) {
    for (std::size_t j = 0; j < bm.nodes(); ++j) os << bm.grid[i] << ',' << bm.grid[j] << ',' << bm.S(i, j) << '\n';
  }
}

}  // namespace xyergo
