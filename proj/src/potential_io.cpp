#include "xyergo/potential_io.hpp"

#include <fstream>
#include <sstream>

#include "xyergo/errors.hpp"

namespace xyergo {
namespace {

using Terms = std::vector<std::tuple<int, int, double>>;

// -xy + x^2/2 + y^2/2, i.e. (x - y)^2 / 2.
const Terms kWellQuadratic = {{1, 1, -1.0}, {2, 0, 0.5}, {0, 2, 0.5}};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"example-nonclosed", "rho-quadratic",
                                                 "remark-nonsmooth", "flat-well", "two-well"};
  return names;
}

PotentialSpec builtin_potential(std::string_view name) {
  if (name == "example-nonclosed") {
    // (x - y)^2 + x^2
    return PotentialSpec::from_terms({{2, 0, 2.0}, {1, 1, -2.0}, {0, 2, 1.0}}, 0.0, 0.0);
  }
  if (name == "rho-quadratic") return rho_family({0.0, 0.0, 1.0});
  if (name == "remark-nonsmooth") return PotentialSpec::from_terms({}, 0.5, 1.0);
  if (name == "flat-well") {
    return PotentialSpec::from_terms(kWellQuadratic, 0.0, 0.0, WellTerm{1.0, {{0.25, 0.75}}});
  }
  if (name == "two-well") {
    return PotentialSpec::from_terms(kWellQuadratic, 0.0, 0.0,
                                     WellTerm{64.0, {{0.1, 0.3}, {0.5, 0.65}}});
  }
  throw ConfigError("unknown built-in potential '" + std::string(name) + "'");
}

PotentialSpec rho_family(const std::vector<double>& rho_coeffs, double abs_weight,
                         double sqrt_weight) {
  Terms terms;
  for (int k = 0; k < static_cast<int>(rho_coeffs.size()); ++k) {
    if (rho_coeffs[k] == 0.0) continue;
    // (x - y)^k = sum_m C(k,m) x^m (-y)^(k-m)
    for (int m = 0; m <= k; ++m) {
      const double s = ((k - m) % 2 == 0) ? 1.0 : -1.0;
      terms.emplace_back(m, k - m, rho_coeffs[k] * binomial(k, m) * s);
    }
  }
  return PotentialSpec::from_terms(terms, abs_weight, sqrt_weight);
}

PotentialSpec parse_potential(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("potential document must be a JSON object");
  try {
    Terms terms;
    if (doc.contains("poly")) {
      for (const auto& t : doc.at("poly")) {
        if (!t.is_array() || t.size() != 3) throw ConfigError("poly entries must be [i, j, c]");
        terms.emplace_back(t[0].get<int>(), t[1].get<int>(), t[2].get<double>());
      }
    }
    const double lambda = doc.value("abs_weight", 0.0);
    const double mu = doc.value("sqrt_weight", 0.0);
    WellTerm wells;
    if (doc.contains("wells")) {
      const auto& w = doc.at("wells");
      wells.weight = w.value("weight", 1.0);
      for (const auto& iv : w.at("intervals")) {
        if (!iv.is_array() || iv.size() != 2) throw ConfigError("well intervals must be [lo, hi]");
        wells.intervals.push_back({iv[0].get<double>(), iv[1].get<double>()});
      }
    }
    return PotentialSpec::from_terms(terms, lambda, mu, std::move(wells));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed potential document: ") + e.what());
  }
}

nlohmann::json potential_to_json(const PotentialSpec& spec) {
  nlohmann::json poly = nlohmann::json::array();
  for (const auto& [e, c] : spec.poly_coeffs()) poly.push_back({e.first, e.second, c});
  nlohmann::json doc = {{"poly", poly},
                        {"abs_weight", spec.abs_weight()},
                        {"sqrt_weight", spec.sqrt_weight()}};
  if (spec.wells().active()) {
    nlohmann::json ivs = nlohmann::json::array();
    for (const auto& iv : spec.wells().intervals) ivs.push_back({iv.lo, iv.hi});
    doc["wells"] = {{"weight", spec.wells().weight}, {"intervals", ivs}};
  }
  return doc;
}

PotentialSpec potential_from_argument(const std::string& arg) {
  for (const auto& n : builtin_names()) {
    if (arg == n) return builtin_potential(n);
  }
  std::string text = arg;
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw ConfigError("empty potential argument");
  if (arg[first] != '{') {
    std::ifstream in(arg);
    if (!in) throw ConfigError("'" + arg + "' is neither a built-in name nor a readable file");
    std::ostringstream os;
    os << in.rdbuf();
    text = os.str();
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed potential JSON: ") + e.what());
  }
  return parse_potential(doc);
}

}  // namespace xyergo
