#pragma once

// Semi-static words and the Mane set of eventually constant points.

#include <cstddef>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "xyergo/barrier.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/orbit_word.hpp"

namespace xyergo {

struct WordDistance {
  double value = 0.0;
  double error_bound = 0.0;  // 2^-M bounds the dropped tail of the series
};

/// d_X(w, v) = sum_i |w_i - v_i| / 2^(i+1), truncated to i < M.
WordDistance word_distance(const OrbitWord& w, const OrbitWord& v, int truncation);

struct SemistaticReport {
  bool passes = true;
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
  double worst_defect = 0.0;  // LHS - RHS at worst_pair
  double worst_lhs = 0.0;
  double worst_rhs = 0.0;
  double worst_excess = 0.0;  // defect minus its allowance; > 0 means failure
};

/// Compares, for all 0 <= i < j <= n + 2 with n the number of symbols
/// before the tail (so two tail steps are covered), the partial reduced action from
/// index i to j with S(sigma^i w, sigma^j w). Each defect may exceed tol by
/// the grid allowance 2 L_h (j - i) / grid_n.
SemistaticReport semistatic_check(const BarrierMatrix& bm, const GroundState& gs, const OrbitWord& w,
                                  double tol);

/// All shifts sigma^i of the represented point are pairwise distinct.
bool is_injective(const OrbitWord& w);

/// Mane-set membership by the closed-form characterization: injective
/// points, or preimages of a^inf with a in m.
bool mane_membership_predicted(const OrbitWord& w, const GroundState& gs);

/// LHS - RHS of the semi-static identity at (i, j) = (0, repeats * period)
/// for the periodic point (cycle)^inf. Its Mane potential to itself is
/// carried by exact shifts, i.e. one period.
double periodic_semistatic_defect(const BarrierMatrix& bm, const std::vector<double>& cycle,
                                  int repeats);

struct ConfusionRow {
  OrbitWord word;
  bool predicted = false;
  bool observed = false;
  SemistaticReport report;
};

struct ConfusionTable {
  std::vector<ConfusionRow> rows;
  std::size_t both_in = 0, both_out = 0, predicted_only = 0, observed_only = 0;
  std::size_t disagreements() const { return predicted_only + observed_only; }
};

ConfusionTable cross_validate(const BarrierMatrix& bm, const GroundState& gs,
                              const std::vector<OrbitWord>& words, double tol);

/// [{"symbols": [...], "tail": c}, ...]
std::vector<OrbitWord> parse_words(const nlohmann::json& doc);

/// Columns index, symbols, tail, predicted, observed, worst_i, worst_j,
/// worst_defect, agree.
void write_verdicts_csv(std::ostream& os, const ConfusionTable& table);

}  // namespace xyergo
