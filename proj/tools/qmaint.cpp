// qmaint command-line front end. Each subcommand loads a chain, calls the
// library and writes its table into --out.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmaint/config.hpp"
#include "qmaint/csv.hpp"
#include "qmaint/errors.hpp"
#include "qmaint/figdata.hpp"
#include "qmaint/oracle.hpp"
#include "qmaint/solver.hpp"

namespace fs = std::filesystem;
using namespace qmaint;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitSolver = 2;

struct Globals {
  std::string config;
  std::string preset;
  std::string out = ".";
  bool strict = false;
  std::uint64_t seed = 0;
  double tolerance = 1e-5;
};

struct SpaceOptions {
  std::optional<double> stages;
  std::optional<double> kappa;
  std::optional<double> e_m;
  std::optional<double> e_i;
};

struct GridOptions {
  int points = 200;
  double lo = 1e-4;
  double hi = 0.5;
};

LoadedChain load(const Globals& g) {
  if (!g.config.empty() && !g.preset.empty()) {
    throw ConfigError("--config and --preset are mutually exclusive");
  }
  if (!g.config.empty()) return load_chain_file(g.config);
  return load_preset(g.preset.empty() ? "ref50" : g.preset);
}

Provenance provenance_of(const LoadedChain& c) { return {c.preset, c.hash}; }

SolveSettings settings_of(const Globals& g) {
  SolveSettings s;
  s.tolerance = g.tolerance;
  s.validate();
  return s;
}

// N-space of the chain with the operating point and kappa overrides applied.
struct Space {
  StrategySet set;
  double e_m = 0.0;
  double e_i = 0.0;
};

Space space_of(const LoadedChain& c, const SpaceOptions& o) {
  const double n = o.stages.value_or(static_cast<double>(c.chain.size()));
  Space s;
  s.set = homogenize_all(c.chain, n);
  if (o.kappa) s.set = with_kappa(s.set, *o.kappa);
  s.e_m = o.e_m.value_or(s.set.monitoring.effectiveness.monitoring);
  s.e_i = o.e_i.value_or(s.set.inspection.effectiveness.inspection);
  s.set = with_state(s.set, s.set.monitoring.defect_rate, s.e_m, s.e_i);
  return s;
}

void add_space_options(CLI::App* cmd, SpaceOptions& o, bool operating_point) {
  cmd->add_option("--N", o.stages, "Virtual stage count (default: n)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kappa", o.kappa, "Override reputation strength alpha(1+beta)")
      ->check(CLI::NonNegativeNumber);
  if (operating_point) {
    cmd->add_option("--em", o.e_m, "Monitoring effectiveness")->check(CLI::Range(0.0, 1.0));
  }
  cmd->add_option("--ei", o.e_i, "Inspection effectiveness")->check(CLI::Range(0.0, 1.0));
}

void add_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--points", g.points, "Defect-rate grid points")->check(CLI::Range(2, 100000));
  cmd->add_option("--d-lo", g.lo, "Smallest defect rate")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--d-hi", g.hi, "Largest defect rate")->check(CLI::Range(0.0, 1.0));
}

fs::path prepare_out(const Globals& g) {
  fs::path dir(g.out);
  fs::create_directories(dir);
  return dir;
}

void write_json(const fs::path& path, const nlohmann::json& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

int finish(const Globals& g, bool failed, const std::string& what) {
  if (!failed) return 0;
  std::cerr << "warning: " << what << " had solver failures (points flagged)\n";
  return g.strict ? kExitSolver : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit-cost comparison of zero maintenance, inspection and monitoring"};
  app.set_version_flag("--version", QMAINT_VERSION);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Chain configuration JSON");
  app.add_option("--preset", g.preset, "Built-in chain preset (ref50)");
  app.add_option("--out", g.out, "Output directory");
  app.add_flag("--strict", g.strict, "Exit 2 if any solve fails");
  app.add_option("--seed", g.seed, "Monte Carlo seed");
  app.add_option("--tolerance", g.tolerance, "Root tolerance on the varied parameter")
      ->check(CLI::PositiveNumber);

  auto* compare = app.add_subcommand("compare", "Cost breakdown of the three pure strategies");

  auto* homogenize_cmd = app.add_subcommand("homogenize", "Homogenize the chain to N stages");
  std::string strategy_name = "general";
  std::optional<double> homogenize_n;
  homogenize_cmd->add_option("--strategy", strategy_name, "zero|inspection|monitoring|general");
  homogenize_cmd->add_option("--N", homogenize_n, "Virtual stage count (default: n)")
      ->check(CLI::PositiveNumber);

  auto* rescale_cmd = app.add_subcommand("rescale", "Rescale a homogenized record to another N");
  std::string rescale_input;
  double rescale_n = 1.0;
  rescale_cmd->add_option("--input", rescale_input, "Homogenized JSON record")
      ->required()
      ->check(CLI::ExistingFile);
  rescale_cmd->add_option("--N", rescale_n, "Target virtual stage count")
      ->required()
      ->check(CLI::PositiveNumber);

  auto* curve_cmd = app.add_subcommand("critical-curve", "Critical effectiveness against d");
  SpaceOptions curve_space;
  GridOptions curve_grid;
  std::string pair_name = "monitoring-zero";
  std::string method_name = "all";
  curve_cmd->add_option("--pair", pair_name,
                        "monitoring-zero|monitoring-inspection|inspection-zero");
  curve_cmd->add_option("--method", method_name, "direct|rescale|closed|all");
  add_space_options(curve_cmd, curve_space, false);
  add_grid_options(curve_cmd, curve_grid);

  auto* surface_cmd = app.add_subcommand("surface", "Monitoring vs inspection critical surface");
  SpaceOptions surface_space;
  GridOptions surface_grid;
  int ei_points = 50;
  std::string surface_method = "rescale";
  add_space_options(surface_cmd, surface_space, false);
  add_grid_options(surface_cmd, surface_grid);
  surface_cmd->add_option("--ei-points", ei_points, "Inspection effectiveness grid points")
      ->check(CLI::Range(2, 100000));
  surface_cmd->add_option("--method", surface_method, "direct|rescale");

  auto* regimes_cmd = app.add_subcommand("regimes", "Uncertainty / superiority / avoidance fields");
  SpaceOptions regime_space;
  GridOptions regime_grid;
  add_space_options(regimes_cmd, regime_space, true);
  add_grid_options(regimes_cmd, regime_grid);

  auto* simulate_cmd = app.add_subcommand("simulate", "Unit-level Monte Carlo of the chain");
  std::string sim_strategy = "general";
  std::uint64_t replications = 30;
  bool sim_trace = false;
  simulate_cmd->add_option("--strategy", sim_strategy, "zero|inspection|monitoring|general");
  simulate_cmd->add_option("--replications", replications, "Replications")
      ->check(CLI::PositiveNumber);
  simulate_cmd->add_flag("--trace", sim_trace, "Add per-stage means to the summary");

  auto* figdata_cmd = app.add_subcommand("figdata", "Data tables for figures 2-8");
  std::string figure = "all";
  figdata_cmd->add_option("--figure", figure, "2..8 or all");

  CLI11_PARSE(app, argc, argv);

  try {
    const LoadedChain chain = load(g);
    const SolveSettings settings = settings_of(g);
    const Provenance prov = provenance_of(chain);

    if (*compare) {
      const auto rows = compare_strategies(chain.chain);
      const fs::path dir = prepare_out(g);
      write_csv_file(dir / "compare.csv", prov, compare_table(rows));
      std::cout << compare_text(rows);
      return 0;
    }

    if (*homogenize_cmd) {
      const Strategy s = parse_strategy(strategy_name);
      const double n = homogenize_n.value_or(static_cast<double>(chain.chain.size()));
      auto doc = homogenized_to_json(homogenize(chain.chain, s, n));
      doc["provenance"] = prov.line().substr(2);
      const fs::path dir = prepare_out(g);
      write_json(dir / "homogenized.json", doc);
      std::cout << doc.dump(2) << '\n';
      return 0;
    }

    if (*rescale_cmd) {
      const HomogenizedChain h = load_homogenized_file(rescale_input);
      auto doc = homogenized_to_json(rescale(h, rescale_n));
      doc["provenance"] = prov.line().substr(2);
      const fs::path dir = prepare_out(g);
      write_json(dir / "rescaled.json", doc);
      std::cout << doc.dump(2) << '\n';
      return 0;
    }

    if (*curve_cmd) {
      const Pair pair = parse_pair(pair_name);
      std::vector<Method> methods;
      if (method_name == "all") {
        methods = {Method::DirectNn, Method::N1Rescale, Method::ClosedForm};
      } else {
        methods = {parse_method(method_name)};
      }
      const Space sp = space_of(chain, curve_space);
      const CriticalQuery q{pair, sp.set, sp.e_i};
      const auto grid = log_grid(curve_grid.points, curve_grid.lo, curve_grid.hi);
      std::vector<CriticalCurve> curves;
      bool failed = false;
      for (Method m : methods) {
        curves.push_back(trace_critical_curve(q, grid, m, settings));
        failed = failed || curves.back().any_failure();
      }
      const fs::path dir = prepare_out(g);
      write_csv_file(dir / "critical_curve.csv", prov, curve_table(curves));
      return finish(g, failed, "critical-curve");
    }

    if (*surface_cmd) {
      const Space sp = space_of(chain, surface_space);
      const CriticalQuery q{Pair::MonitoringVsInspection, sp.set, sp.e_i};
      const auto s = superiority_surface(
          q, log_grid(surface_grid.points, surface_grid.lo, surface_grid.hi),
          linear_grid(ei_points, 0.0, 1.0), settings, parse_method(surface_method));
      const fs::path dir = prepare_out(g);
      write_csv_file(dir / "surface.csv", prov, surface_table(s));
      return finish(g, s.any_failure(), "surface");
    }

    if (*regimes_cmd) {
      const Space sp = space_of(chain, regime_space);
      bool failed = false;
      RegimeBounds r;
      try {
        r = regime_bounds(sp.set, sp.e_m, sp.e_i, settings);
      } catch (const NoConvergence& e) {
        std::cerr << "error: " << e.what() << '\n';
        failed = true;
        r.a = r.b = std::numeric_limits<double>::quiet_NaN();
      }
      const fs::path dir = prepare_out(g);
      write_csv_file(dir / "regimes.csv", prov,
                     regime_table(log_grid(regime_grid.points, regime_grid.lo, regime_grid.hi), r,
                                  sp.set.stages()));
      return finish(g, failed, "regimes");
    }

    if (*simulate_cmd) {
      const Strategy s = parse_strategy(sim_strategy);
      SimSettings ss;
      ss.replications = replications;
      ss.seed = g.seed;
      ss.record_trace = sim_trace;
      const SimResult r = simulate(chain.chain, s, ss);
      const Volumes expected = recursive_volumes(chain.chain, s);
      nlohmann::json summary{{"provenance", prov.line().substr(2)},
                             {"strategy", std::string(to_string(s))},
                             {"replications", r.replications},
                             {"seed", r.seed},
                             {"X_n_mean", r.sold_mean},
                             {"X_n_stderr", r.sold_stderr},
                             {"X_n_bad_mean", r.defective_mean},
                             {"X_n_bad_stderr", r.defective_stderr},
                             {"X_n_expected", expected.sold},
                             {"X_n_bad_expected", expected.defective}};
      if (sim_trace) {
        auto& stages = summary["stages"] = nlohmann::json::array();
        for (const auto& t : r.trace) {
          stages.push_back({{"X_k", t.sold},
                            {"X_k_bad", t.defective},
                            {"removed", t.removed},
                            {"d_mk", t.effective_defect_rate}});
        }
      }
      const fs::path dir = prepare_out(g);
      write_csv_file(dir / "simulate.csv", prov, simulation_table(r));
      write_json(dir / "simulate_summary.json", summary);
      std::cout << summary.dump(2) << '\n';
      return 0;
    }

    if (*figdata_cmd) {
      std::vector<int> figures;
      if (figure == "all") {
        for (int f = kFirstFigure; f <= kLastFigure; ++f) figures.push_back(f);
      } else {
        figures.push_back(std::stoi(figure));
      }
      std::vector<FigureData> data;
      bool failed = false;
      for (int f : figures) {
        data.push_back(figure_data(f, chain.chain, settings));
        failed = failed || data.back().solver_failed;
      }
      const fs::path dir = prepare_out(g);
      for (const auto& d : data) write_csv_file(dir / (d.name + ".csv"), prov, d.table);
      return finish(g, failed, "figdata");
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NoConvergence& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
