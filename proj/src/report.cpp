#include "xyergo/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "xyergo/potential_io.hpp"

namespace xyergo {
namespace {

// JSON has no infinity; non-finite values are written as strings.
nlohmann::json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

}  // namespace

nlohmann::json to_json(const CheckResult& c) {
  return {{"id", c.id},
          {"description", c.description},
          {"passed", c.passed},
          {"value", number(c.value)},
          {"threshold", number(c.threshold)},
          {"detail", c.detail}};
}

std::string format_check(const CheckResult& c) {
  std::ostringstream os;
  os.precision(6);
  os << (c.passed ? "[PASS] " : "[FAIL] ") << c.id << ": " << c.description << " (value " << c.value
     << ", threshold " << c.threshold << ")";
  if (!c.detail.empty()) os << " -- " << c.detail;
  return os.str();
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json ground_state_json(const PotentialSpec& spec, const GroundState& gs,
                                 const std::vector<double>& anchors) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : gs.components) comps.push_back({c.lo, c.hi});
  const auto twist = twist_check(spec, 64);
  return {{"potential", potential_to_json(spec)},
          {"alpha", gs.alpha},
          {"components", comps},
          {"anchors", anchors},
          {"tolerance", gs.tolerance},
          {"detect_tolerance", gs.detect_tolerance},
          {"grid_n", gs.grid_n},
          {"lipschitz_bound", spec.lipschitz_bound()},
          {"twist", {{"holds", twist.holds}, {"worst_value", twist.worst_value}}},
          {"h4_certificate", to_string(h4_certificate(spec))}};
}

}  // namespace xyergo
