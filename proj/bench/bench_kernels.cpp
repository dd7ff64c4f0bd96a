// Serial vs OpenMP timings for the grid kernels and the Monte Carlo oracle.
// Run with OMP_NUM_THREADS set to compare worker counts.

#include <benchmark/benchmark.h>

#include "qmaint/critical.hpp"
#include "qmaint/oracle.hpp"
#include "qmaint/solver.hpp"

namespace {

using namespace qmaint;

CriticalQuery ref50_query(Pair p) {
  return {p, homogenize_all(ref50(), static_cast<double>(kRef50Stages)), 0.8};
}

void BM_CurveDirect(benchmark::State& state) {
  const auto q = ref50_query(Pair::MonitoringVsInspection);
  const auto grid = default_d_grid();
  const SolveSettings s;
  for (auto _ : state) {
    auto c = state.range(0) ? trace_critical_curve(q, grid, Method::DirectNn, s)
                            : serial::trace_critical_curve(q, grid, Method::DirectNn, s);
    benchmark::DoNotOptimize(c.points.data());
  }
}
BENCHMARK(BM_CurveDirect)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_CurveRescale(benchmark::State& state) {
  const auto q = ref50_query(Pair::MonitoringVsInspection);
  const auto grid = default_d_grid();
  const SolveSettings s;
  for (auto _ : state) {
    auto c = state.range(0) ? trace_critical_curve(q, grid, Method::N1Rescale, s)
                            : serial::trace_critical_curve(q, grid, Method::N1Rescale, s);
    benchmark::DoNotOptimize(c.points.data());
  }
}
BENCHMARK(BM_CurveRescale)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

void BM_Surface(benchmark::State& state) {
  const auto q = ref50_query(Pair::MonitoringVsInspection);
  const auto d_grid = log_grid(50, 1e-4, 0.5);
  const auto e_grid = linear_grid(40, 0.0, 1.0);
  const SolveSettings s;
  const Method m = state.range(1) ? Method::DirectNn : Method::N1Rescale;
  for (auto _ : state) {
    auto out = state.range(0) ? superiority_surface(q, d_grid, e_grid, s, m)
                              : serial::superiority_surface(q, d_grid, e_grid, s, m);
    benchmark::DoNotOptimize(out.cells.data());
  }
}
BENCHMARK(BM_Surface)
    ->ArgsProduct({{0, 1}, {0, 1}})
    ->ArgNames({"parallel", "direct"})
    ->Unit(benchmark::kMillisecond);

void BM_Simulate(benchmark::State& state) {
  const Chain chain = Chain::uniform(kRef50Stages, ref50_stage(), 1e5, Reputation{0.5, 1.0});
  SimSettings ss;
  ss.replications = 4;
  for (auto _ : state) {
    auto r = state.range(0) ? simulate(chain, Strategy::Inspection, ss)
                            : serial::simulate(chain, Strategy::Inspection, ss);
    benchmark::DoNotOptimize(r.sold_mean);
  }
}
BENCHMARK(BM_Simulate)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
