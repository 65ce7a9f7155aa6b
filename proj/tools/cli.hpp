#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

namespace xyergo::cli {

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2, kCompute = 3 };

struct RunConfig {
  std::string potential = "example-nonclosed";  // built-in name, inline JSON or file path
  int grid_n = 256;
  int quad_n = 512;
  double spacing = 0.05;
  double refine_tol = 1e-8;
  double tol_subaction = 1e-7;
  std::optional<double> eps_class;  // auto when unset
  std::filesystem::path output_dir = ".";
  std::uint64_t seed = 1;
  std::string words;  // semistatic fixtures file

  /// Throws ConfigError on out-of-range values.
  void validate() const;
};

/// Overlays the keys present in `doc` onto `cfg`.
void apply_config(RunConfig& cfg, const nlohmann::json& doc);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xyergo::cli
