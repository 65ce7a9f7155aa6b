#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "xyergo/acceptance.hpp"
#include "xyergo/aubry.hpp"
#include "xyergo/barrier.hpp"
#include "xyergo/errors.hpp"
#include "xyergo/groundstate.hpp"
#include "xyergo/mane.hpp"
#include "xyergo/report.hpp"
#include "xyergo/potential_io.hpp"
#include "xyergo/subaction.hpp"

namespace xyergo::cli {
namespace {

namespace fs = std::filesystem;

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::ofstream os(cfg.output_dir / name, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + (cfg.output_dir / name).string());
  return os;
}

void write_json(const RunConfig& cfg, const std::string& name, const nlohmann::json& doc) {
  auto os = open_output(cfg, name);
  os << doc.dump(2) << '\n';
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("malformed JSON in " + path + ": " + e.what());
  }
}

struct Prepared {
  PotentialSpec spec;
  GroundState gs;
};

Prepared prepare(const RunConfig& cfg) {
  auto spec = potential_from_argument(cfg.potential);
  auto gs = compute_ground_state(spec, cfg.grid_n, cfg.refine_tol);
  return {std::move(spec), std::move(gs)};
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
  const auto p = prepare(cfg);
  auto os = open_output(cfg, "groundstate.csv");
  write_groundstate_csv(os, p.spec, p.gs);
  auto summary = ground_state_json(p.spec, p.gs, aubry_fixed_points(p.gs, cfg.spacing));
  write_json(cfg, "summary.json", summary);
  out << "alpha " << p.gs.alpha << ", " << p.gs.components.size() << " component(s)\n";
  return kOk;
}

int cmd_barrier(const RunConfig& cfg, std::ostream& out) {
  const auto p = prepare(cfg);
  const auto bm = build_barrier(p.spec, p.gs, cfg.grid_n);
  auto os = open_output(cfg, "barrier.csv");
  write_barrier_csv(os, bm, p.gs, aubry_fixed_points(p.gs, cfg.spacing));
  auto mm = open_output(cfg, "mane_matrix.csv");
  write_mane_matrix_csv(mm, bm);
  out << "barrier: " << bm.nodes() << " nodes, " << bm.rounds << " rounds, margin " << bm.neg_cycle_margin << '\n';
  return kOk;
}

int cmd_subaction(const RunConfig& cfg, std::ostream& out) {
  const auto p = prepare(cfg);
  const auto sub = solve_calibrated(p.spec, p.gs, cfg.grid_n, 20000, cfg.tol_subaction);
  auto os = open_output(cfg, "subaction.csv");
  write_subaction_csv(os, p.spec, p.gs.alpha, sub);
  out << "subaction: " << sub.iterations << " iterations, residual " << sub.calibration_residual
      << (sub.converged ? "" : " (not converged)") << '\n';
  return sub.converged ? kOk : kCompute;
}

int cmd_quotient(const RunConfig& cfg, std::ostream& out) {
  const auto p = prepare(cfg);
  const auto bm = build_barrier(p.spec, p.gs, cfg.grid_n);
  const auto q = build_quotient(bm, p.gs, cfg.spacing, cfg.eps_class);
  auto os = open_output(cfg, "quotient.csv");
  write_quotient_csv(os, q);
  write_json(cfg, "classes.json", classes_json(q, p.gs));
  out << "quotient: " << q.anchors.size() << " anchors, " << q.classes.size() << " class(es)\n";
  return kOk;
}

int cmd_semistatic(const RunConfig& cfg, std::ostream& out) {
  if (cfg.words.empty()) throw ConfigError("semistatic needs --words");
  const auto words = parse_words(read_json_file(cfg.words));
  ConfusionTable table;
  if (!words.empty()) {
    const auto p = prepare(cfg);
    const auto bm = build_barrier(p.spec, p.gs, cfg.grid_n);
    table = cross_validate(bm, p.gs, words, bm.eps_num());
  }
  auto os = open_output(cfg, "verdicts.csv");
  write_verdicts_csv(os, table);
  out << "semistatic: " << table.rows.size() << " word(s), " << table.disagreements() << " disagreement(s)\n";
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto spec = potential_from_argument(cfg.potential);
  const auto& names = builtin_names();
  const bool builtin = std::find(names.begin(), names.end(), cfg.potential) != names.end();
  AcceptanceOptions opt;
  opt.grid_n = cfg.grid_n;
  opt.refine_tol = cfg.refine_tol;
  opt.spacing = cfg.spacing;
  opt.seed = cfg.seed;
  const auto checks = verify_potential(builtin ? cfg.potential : "custom", spec, opt);
  nlohmann::json doc = {{"potential", builtin ? nlohmann::json(cfg.potential) : potential_to_json(spec)},
                        {"passed", all_passed(checks)},
                        {"checks", nlohmann::json::array()}};
  for (const auto& c : checks) {
    doc["checks"].push_back(to_json(c));
    out << format_check(c) << '\n';
  }
  write_json(cfg, "report.json", doc);
  return all_passed(checks) ? kOk : kVerificationFailed;
}

}  // namespace

void RunConfig::validate() const {
  if (grid_n < 16) throw ConfigError("grid_n must be at least 16");
  if (quad_n < 2) throw ConfigError("quad_n must be at least 2");
  if (!(spacing > 0.0)) throw ConfigError("spacing must be positive");
  if (!(refine_tol > 0.0)) throw ConfigError("refine_tol must be positive");
  if (!(tol_subaction > 0.0)) throw ConfigError("tol_subaction must be positive");
  if (eps_class && !(*eps_class > 0.0)) throw ConfigError("eps_class must be positive");
  std::error_code ec;
  if (!fs::is_directory(output_dir, ec)) throw ConfigError("output directory does not exist: " + output_dir.string());
}

void apply_config(RunConfig& cfg, const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  try {
    if (doc.contains("potential")) {
      const auto& p = doc["potential"];
      cfg.potential = p.is_string() ? p.get<std::string>() : p.dump();
    }
    if (doc.contains("grid_n")) cfg.grid_n = doc["grid_n"].get<int>();
    if (doc.contains("quad_n")) cfg.quad_n = doc["quad_n"].get<int>();
    if (doc.contains("spacing")) cfg.spacing = doc["spacing"].get<double>();
    if (doc.contains("output_dir")) cfg.output_dir = doc["output_dir"].get<std::string>();
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("words")) cfg.words = doc["words"].get<std::string>();
    if (doc.contains("tolerances")) {
      const auto& t = doc["tolerances"];
      if (t.contains("refine_tol")) cfg.refine_tol = t["refine_tol"].get<double>();
      if (t.contains("tol_subaction")) cfg.tol_subaction = t["tol_subaction"].get<double>();
      if (t.contains("eps_class") && !(t["eps_class"].is_string() && t["eps_class"] == "auto")) {
        cfg.eps_class = t["eps_class"].get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ergodic optimization tools for 2-locally constant XY potentials"};
  app.require_subcommand(1, 1);

  std::string config_path, potential, out_dir, words;
  std::optional<int> grid_n, quad_n;
  std::optional<double> spacing, refine_tol, tol_subaction, eps_class;
  std::optional<std::uint64_t> seed;

  const char* names[] = {"analyze", "barrier", "subaction", "quotient", "semistatic", "verify"};
  const char* blurbs[] = {"ground state: groundstate.csv, summary.json",
                          "Mane potential and Peierls barrier: barrier.csv, mane_matrix.csv",
                          "calibrated subaction: subaction.csv",
                          "Aubry quotient: quotient.csv, classes.json",
                          "semi-static verdicts for words: verdicts.csv",
                          "acceptance checks: report.json"};
  for (int k = 0; k < 6; ++k) {
    auto* sub = app.add_subcommand(names[k], blurbs[k]);
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--potential", potential, "built-in name, inline JSON or JSON file");
    sub->add_option("--grid-n", grid_n, "grid resolution N (>= 16)");
    sub->add_option("--quad-n", quad_n, "quadrature points");
    sub->add_option("--spacing", spacing, "anchor spacing inside components");
    sub->add_option("--refine-tol", refine_tol, "ground-state refinement tolerance");
    sub->add_option("--tol-subaction", tol_subaction, "value-iteration tolerance");
    sub->add_option("--eps-class", eps_class, "class threshold (default: automatic)");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "random seed");
    if (std::string(names[k]) == "semistatic") sub->add_option("--words", words, "JSON file of words");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config(cfg, read_json_file(config_path));
    if (!potential.empty()) cfg.potential = potential;
    if (grid_n) cfg.grid_n = *grid_n;
    if (quad_n) cfg.quad_n = *quad_n;
    if (spacing) cfg.spacing = *spacing;
    if (refine_tol) cfg.refine_tol = *refine_tol;
    if (tol_subaction) cfg.tol_subaction = *tol_subaction;
    if (eps_class) cfg.eps_class = *eps_class;
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (seed) cfg.seed = *seed;
    if (!words.empty()) cfg.words = words;
    cfg.validate();
    potential_from_argument(cfg.potential);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (command == "analyze") return cmd_analyze(cfg, out);
    if (command == "barrier") return cmd_barrier(cfg, out);
    if (command == "subaction") return cmd_subaction(cfg, out);
    if (command == "quotient") return cmd_quotient(cfg, out);
    if (command == "semistatic") return cmd_semistatic(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kCompute;
  }
}

}  // namespace xyergo::cli
