#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "xyergo/potential.hpp"

namespace xyergo {

/// Names accepted wherever a potential document is expected.
const std::vector<std::string>& builtin_names();

/// Throws ConfigError for unknown names.
PotentialSpec builtin_potential(std::string_view name);

/// rho(x - y) + abs_weight |x - y| + sqrt_weight sqrt(1 + (x - y)^2) with
/// rho(z) = sum_k rho_coeffs[k] z^k, expanded into monomials.
PotentialSpec rho_family(const std::vector<double>& rho_coeffs, double abs_weight = 0.5,
                         double sqrt_weight = 0.0);

/// {"poly": [[i,j,c],...], "abs_weight": l, "sqrt_weight": m,
///  "wells": {"weight": k, "intervals": [[lo,hi],...]}}; all keys optional.
PotentialSpec parse_potential(const nlohmann::json& doc);
nlohmann::json potential_to_json(const PotentialSpec& spec);

/// Built-in name, inline JSON text, or path to a JSON file.
PotentialSpec potential_from_argument(const std::string& arg);

}  // namespace xyergo
