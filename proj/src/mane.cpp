#include "xyergo/mane.hpp"

#include <cmath>
#include <iomanip>
#include <limits>

#include "xyergo/errors.hpp"

namespace xyergo {

WordDistance word_distance(const OrbitWord& w, const OrbitWord& v, int truncation) {
  if (truncation < 1) throw DomainError("word_distance needs a truncation of at least 1");
  WordDistance d;
  double weight = 0.5;
  for (int i = 0; i < truncation; ++i, weight *= 0.5) {
    d.value += std::abs(w.at(static_cast<std::size_t>(i)) - v.at(static_cast<std::size_t>(i))) * weight;
  }
  d.error_bound = std::ldexp(1.0, -truncation);
  return d;
}

SemistaticReport semistatic_check(const BarrierMatrix& bm, const GroundState& gs, const OrbitWord& w,
                                  double tol) {
  const std::size_t last = w.symbols.size() + 2;  // after two tail steps
  const double per_step = 2.0 * bm.spec.lipschitz_bound() / bm.grid_n;
  SemistaticReport rep;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < last; ++i) {
    const OrbitWord from = w.shifted(i);
    double lhs = 0.0;
    for (std::size_t j = i + 1; j <= last; ++j) {
      lhs += bm.cost(w.at(j - 1), w.at(j));
      const double rhs = mane_eventually_fixed(bm, gs, from, w.shifted(j));
      const double defect = lhs - rhs;
      const double excess = defect - (tol + per_step * double(j - i));
      if (excess > rep.worst_excess) {
        rep.worst_excess = excess;
        rep.worst_pair = {i, j};
        rep.worst_defect = defect;
        rep.worst_lhs = lhs;
        rep.worst_rhs = rhs;
      }
    }
  }
  rep.passes = rep.worst_excess <= 0.0;
  return rep;
}

bool is_injective(const OrbitWord& w) {
  const std::size_t n = w.symbols.size() + 2;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (w.shifted(i).same_point(w.shifted(j))) return false;
    }
  }
  return true;
}

bool mane_membership_predicted(const OrbitWord& w, const GroundState& gs) {
  return is_injective(w) || gs.contains(w.tail);
}

double periodic_semistatic_defect(const BarrierMatrix& bm, const std::vector<double>& cycle,
                                  int repeats) {
  if (cycle.empty() || repeats < 1) throw DomainError("periodic_semistatic_defect needs a cycle and repeats >= 1");
  const std::size_t p = cycle.size();
  std::size_t q = p;  // minimal period
  for (std::size_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool periodic = true;
    for (std::size_t k = 0; k < p && periodic; ++k) periodic = cycle[k] == cycle[(k + d) % p];
    if (periodic) {
      q = d;
      break;
    }
  }
  auto action = [&](std::size_t len) {
    double s = 0.0;
    for (std::size_t k = 0; k < len; ++k) s += bm.cost(cycle[k % p], cycle[(k + 1) % p]);
    return s;
  };
  return action(p * static_cast<std::size_t>(repeats)) - action(q);
}

ConfusionTable cross_validate(const BarrierMatrix& bm, const GroundState& gs,
                              const std::vector<OrbitWord>& words, double tol) {
  ConfusionTable t;
  for (const auto& w : words) {
    ConfusionRow row;
    row.word = w;
    row.predicted = mane_membership_predicted(w, gs);
    row.report = semistatic_check(bm, gs, w, tol);
    row.observed = row.report.passes;
    if (row.predicted && row.observed) ++t.both_in;
    if (!row.predicted && !row.observed) ++t.both_out;
    if (row.predicted && !row.observed) ++t.predicted_only;
    if (!row.predicted && row.observed) ++t.observed_only;
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::vector<OrbitWord> parse_words(const nlohmann::json& doc) {
  if (!doc.is_array()) throw ConfigError("word fixtures must be a JSON array");
  std::vector<OrbitWord> out;
  try {
    for (const auto& item : doc) {
      OrbitWord w;
      w.symbols = item.at("symbols").get<std::vector<double>>();
      w.tail = item.at("tail").get<double>();
      for (double s : w.symbols) {
        if (!(s >= 0.0 && s <= 1.0)) throw ConfigError("word symbols must lie in [0,1]");
      }
      if (!(w.tail >= 0.0 && w.tail <= 1.0)) throw ConfigError("word tail must lie in [0,1]");
      out.push_back(std::move(w));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed word fixture: ") + e.what());
  }
  return out;
}

void write_verdicts_csv(std::ostream& os, const ConfusionTable& table) {
  os << "index,symbols,tail,predicted,observed,worst_i,worst_j,worst_defect,agree\n"
     << std::setprecision(12);
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& r = table.rows[k];
    os << k << ',';
    for (std::size_t i = 0; i < r.word.symbols.size(); ++i) os << (i ? " " : "") << r.word.symbols[i];
    os << ',' << r.word.tail << ',' << int(r.predicted) << ',' << int(r.observed) << ','
       << r.report.worst_pair.first << ',' << r.report.worst_pair.second << ',' << r.report.worst_defect
       << ',' << int(r.predicted == r.observed) << '\n';
  }
}

}  // namespace xyergo
