#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "qmaint/config.hpp"
#include "qmaint/csv.hpp"
#include "qmaint/figdata.hpp"
#include "qmaint/oracle.hpp"
#include "qmaint/solver.hpp"

namespace fs = std::filesystem;
using namespace qmaint;

namespace {

// Fresh empty directory per call, removed with the object.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("qmaint_cli_" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(QMAINT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

const LoadedChain& ref() {
  static const LoadedChain c = load_preset("ref50");
  return c;
}

Provenance prov() { return {ref().preset, ref().hash}; }

// Same construction as the CLI: homogenize at N = n, then set the operating point.
StrategySet space() {
  const StrategySet s = homogenize_all(ref().chain, 50.0);
  return with_state(s, s.monitoring.defect_rate, s.monitoring.effectiveness.monitoring,
                    s.inspection.effectiveness.inspection);
}

}  // namespace

TEST_CASE("compare") {
  TempDir dir("compare");
  REQUIRE(run("--preset ref50 --out " + dir.path.string() + " compare") == 0);
  CHECK(slurp(dir.path / "compare.csv") ==
        to_csv(prov(), compare_table(compare_strategies(ref().chain))));
}

TEST_CASE("critical-curve") {
  TempDir dir("curve");
  REQUIRE(run("--out " + dir.path.string() +
              " critical-curve --pair monitoring-zero --points 60") == 0);
  const CriticalQuery q{Pair::MonitoringVsZero, space(), 0.8};
  const auto grid = log_grid(60, 1e-4, 0.5);
  std::vector<CriticalCurve> curves;
  for (Method m : {Method::DirectNn, Method::N1Rescale, Method::ClosedForm}) {
    curves.push_back(trace_critical_curve(q, grid, m, SolveSettings{}));
  }
  CHECK(slurp(dir.path / "critical_curve.csv") == to_csv(prov(), curve_table(curves)));
}

TEST_CASE("critical-curve with overrides") {
  TempDir dir("curve_kappa");
  REQUIRE(run("--out " + dir.path.string() +
              " critical-curve --pair monitoring-inspection --method direct --kappa 4 --ei 0.5"
              " --points 30 --d-lo 0.001 --d-hi 0.3") == 0);
  const StrategySet k = with_kappa(homogenize_all(ref().chain, 50.0), 4.0);
  const StrategySet s = with_state(k, k.monitoring.defect_rate, 0.8, 0.5);
  const CriticalQuery q{Pair::MonitoringVsInspection, s, 0.5};
  const CriticalCurve c =
      trace_critical_curve(q, log_grid(30, 1e-3, 0.3), Method::DirectNn, SolveSettings{});
  CHECK(slurp(dir.path / "critical_curve.csv") == to_csv(prov(), curve_table({c})));
}

TEST_CASE("surface") {
  TempDir dir("surface");
  REQUIRE(run("--out " + dir.path.string() + " surface --points 20 --ei-points 10") == 0);
  const CriticalQuery q{Pair::MonitoringVsInspection, space(), 0.8};
  const auto s = superiority_surface(q, log_grid(20, 1e-4, 0.5), linear_grid(10, 0.0, 1.0),
                                     SolveSettings{}, Method::N1Rescale);
  CHECK(slurp(dir.path / "surface.csv") == to_csv(prov(), surface_table(s)));
}

TEST_CASE("regimes") {
  TempDir dir("regimes");
  REQUIRE(run("--out " + dir.path.string() + " regimes --points 40") == 0);
  const StrategySet s = space();
  const RegimeBounds r = regime_bounds(s, s.monitoring.effectiveness.monitoring,
                                       s.inspection.effectiveness.inspection, SolveSettings{});
  CHECK(slurp(dir.path / "regimes.csv") ==
        to_csv(prov(), regime_table(log_grid(40, 1e-4, 0.5), r, 50.0)));
}

TEST_CASE("simulate") {
  TempDir dir("simulate");
  REQUIRE(run("--out " + dir.path.string() +
              " --config " QMAINT_PRESET_DIR "/ref50.json --seed 3"
              " simulate --strategy inspection --replications 2") == 0);
  // X0 = 1e6 over 2 replications; compare against the library run.
  SimSettings s;
  s.seed = 3;
  s.replications = 2;
  const SimResult r = simulate(ref().chain, Strategy::Inspection, s);
  Provenance p = prov();
  p.preset = "none";
  CHECK(slurp(dir.path / "simulate.csv") == to_csv(p, simulation_table(r)));
  const auto summary = nlohmann::json::parse(slurp(dir.path / "simulate_summary.json"));
  CHECK(summary.at("X_n_mean").get<double>() == r.sold_mean);
  CHECK(summary.at("replications").get<int>() == 2);
}

TEST_CASE("figdata") {
  TempDir dir("figdata");
  REQUIRE(run("--out " + dir.path.string() + " figdata") == 0);
  for (int f = kFirstFigure; f <= kLastFigure; ++f) {
    const FigureData data = figure_data(f, ref().chain, SolveSettings{});
    CHECK(slurp(dir.path / (data.name + ".csv")) == to_csv(prov(), data.table));
  }
}

TEST_CASE("homogenize and rescale") {
  TempDir dir("homogenize");
  REQUIRE(run("--out " + dir.path.string() + " homogenize --strategy monitoring --N 1") == 0);
  const auto doc = nlohmann::json::parse(slurp(dir.path / "homogenized.json"));
  const HomogenizedChain h = parse_homogenized(doc);
  CHECK(h.variable.production == doctest::Approx(500.0));
  REQUIRE(run("--out " + dir.path.string() + " rescale --input " +
              (dir.path / "homogenized.json").string() + " --N 50") == 0);
  const HomogenizedChain back = load_homogenized_file(dir.path / "rescaled.json");
  CHECK(back.defect_rate == doctest::Approx(0.02).epsilon(1e-12));
  CHECK(back.strategy == Strategy::Monitoring);
}

TEST_CASE("config file hashes like the preset") {
  TempDir a("hash_file");
  TempDir b("hash_preset");
  REQUIRE(run("--out " + a.path.string() + " --config " QMAINT_PRESET_DIR "/ref50.json compare") ==
          0);
  REQUIRE(run("--out " + b.path.string() + " --preset ref50 compare") == 0);
  const std::string file = slurp(a.path / "compare.csv");
  const std::string preset = slurp(b.path / "compare.csv");
  const auto hash_of = [](const std::string& csv) {
    const auto at = csv.find("config_hash=");
    return csv.substr(at, csv.find('\n') - at);
  };
  CHECK(hash_of(file) == hash_of(preset));
  CHECK(file.find("preset=none") != std::string::npos);
}

TEST_CASE("errors and exit codes") {
  TempDir dir("errors");
  fs::create_directories(dir.path);
  const fs::path bad = dir.path / "bad.json";
  {
    std::ofstream out(bad);
    out << R"({"n": 2, "X0": 10, "alpha": 0.5, "beta": 1, "uniform": {"d": 2}})";
  }
  const fs::path out = dir.path / "out";
  CHECK(run("--out " + out.string() + " --config " + bad.string() + " compare") == 1);
  CHECK_FALSE(fs::exists(out));
  CHECK(run("--out " + out.string() + " --config " + (dir.path / "none.json").string() +
            " compare") == 1);
  CHECK(run("--out " + out.string() + " --preset nope compare") == 1);
  CHECK_FALSE(fs::exists(out));
  CHECK(run("--out " + out.string() + " critical-curve --pair sideways") == 1);
  CHECK(run("--out " + out.string()) != 0);
  CHECK(run("--version") == 0);
}
