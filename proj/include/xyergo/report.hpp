#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/potential.hpp"

namespace xyergo {

/// One verified quantity: `value` compared against `threshold`.
struct CheckResult {
  std::string id;
  std::string description;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

nlohmann::json to_json(const CheckResult& c);
std::string format_check(const CheckResult& c);
bool all_passed(const std::vector<CheckResult>& checks);

nlohmann::json ground_state_json(const PotentialSpec& spec, const GroundState& gs,
                                 const std::vector<double>& anchors);

}  // namespace xyergo
