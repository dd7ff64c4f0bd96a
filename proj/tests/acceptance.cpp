// Acceptance run: one PASS/FAIL line per criterion, details indented below
// it, INFO lines for reference values that are reported but not gated.
// Exits 1 if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qmaint/critical.hpp"
#include "qmaint/errors.hpp"
#include "qmaint/homogenization.hpp"
#include "qmaint/oracle.hpp"
#include "qmaint/solver.hpp"
#include "support.hpp"

using namespace qmaint;
namespace t = qmaint::testing;

namespace {

struct Report {
  bool pass = true;
  std::vector<std::string> lines;

  // Records one sub-check and returns it.
  bool check(bool ok, const std::string& what) {
    lines.push_back(std::string(ok ? "ok    " : "MISS  ") + what);
    pass = pass && ok;
    return ok;
  }
  void note(const std::string& what) { lines.push_back("      " + what); }
};

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

template <class... A>
std::string cat(const A&... parts) {
  std::ostringstream os;
  os.precision(6);
  (os << ... << parts);
  return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool near(double v, double want, double tol) { return std::abs(v - want) <= tol; }

StrategySet ref50_space(double d = 0.02, double e_m = 0.8, double e_i = 0.8) {
  return homogenize_all(ref50(d, e_m, e_i), 50.0);
}

// REF50 with M = 2e4 per stage, read at defect rate d.
StrategySet heavy_monitoring_space(double stages, double d = 0.02) {
  std::vector<StageParams> s(50, ref50_stage(d));
  for (auto& st : s) st.fixed.monitoring = 2e4;
  return homogenize_all(Chain(std::move(s), 1e6, {0.5, 1.0}), stages);
}

Report homogenization() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const t::Deviation dev = t::homogenization_deviation(1, 1000);
  const double dt = seconds_since(t0);
  r.check(dev.max <= 1e-10, cat("max relative deviation ", dev.max, " over ", dev.cases,
                                " cases (<= 1e-10); worst ", dev.worst));
  r.check(dt < 10.0, cat("runtime ", dt, " s (< 10 s)"));
  return r;
}

Report oracle() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const t::Deviation dev = t::oracle_deviation(2, 1000);
  const double dt = seconds_since(t0);
  r.check(dev.max <= 1e-12, cat("max relative deviation ", dev.max, " over ", dev.cases,
                                " comparisons (<= 1e-12); worst ", dev.worst));
  r.check(dt < 5.0, cat("runtime ", dt, " s (< 5 s)"));
  return r;
}

Report monte_carlo() {
  Report r;
  const Chain c = Chain::uniform(kRef50Stages, ref50_stage(0.02, 0.8, 0.8), 1e5, {0.5, 1.0});
  SimSettings s;
  s.replications = 30;
  s.seed = 3;
  const auto t0 = std::chrono::steady_clock::now();
  const SimResult sim = simulate(c, Strategy::Inspection, s);
  const double dt = seconds_since(t0);
  const double xn = sold_volume(c, Strategy::Inspection);
  const double bad = defective_sold_volume(c, Strategy::Inspection);
  const double z_sold = (sim.sold_mean - xn) / sim.sold_stderr;
  const double z_bad = (sim.defective_mean - bad) / sim.defective_stderr;
  r.check(std::abs(z_sold) <= 4.0,
          cat("X_n ", sim.sold_mean, " vs ", xn, ", z = ", z_sold, " (|z| <= 4)"));
  r.check(std::abs(z_bad) <= 4.0,
          cat("X_n_bad ", sim.defective_mean, " vs ", bad, ", z = ", z_bad, " (|z| <= 4)"));
  r.check(dt < 60.0, cat("runtime ", dt, " s (< 60 s)"));
  return r;
}

Report saturation() {
  Report r;
  const Chain c = ref50(1.0, 0.8, 0.8);
  const HomogenizedChain z = homogenize(c, Strategy::Zero, 50.0);
  const HomogenizedChain m = homogenize(c, Strategy::Monitoring, 50.0);
  const double bz = saturation_bound(z, Strategy::Zero);
  const double bm = saturation_bound(m, Strategy::Monitoring);
  r.check(near(bz, 1002.5, 1e-9), cat("zero maintenance bound ", fmt("%.12g", bz), " (1002.5)"));
  r.check(near(bm, 1103.0, 1e-9), cat("monitoring bound ", fmt("%.12g", bm), " (1103)"));
  r.note(cat("unit cost at d = 1: zero ", fmt("%.12g", unit_cost_zero(z)), ", monitoring (e_m = 0.8) ",
             fmt("%.12g", unit_cost_monitoring(m)), "; power term 550*0.8^50 = ",
             550.0 * std::pow(0.8, 50)));
  return r;
}

Report numerics() {
  Report r;
  const MaintenanceCosts k = maintenance_costs(ref50_space());
  const double max_v = max_em_crit(k);
  const double at0 = em_crit_at_d0(k, 0.8);
  const double inv = ei_for_d0_threshold(k, 0.4);
  const double kmin = kappa_min(k);
  r.check(near(max_v, 0.4845, 5e-4), cat("max em_crit ", fmt("%.6f", max_v), " (0.4845 +- 5e-4)"));
  r.check(near(at0, 0.3876, 5e-4),
          cat("em_crit at d -> 0, e_i = 0.8 ", fmt("%.6f", at0), " (0.3876 +- 5e-4)"));
  r.check(near(inv, 0.826, 1e-3), cat("e_i for target 0.4 ", fmt("%.6f", inv), " (0.826 +- 1e-3)"));
  r.check(near(kmin, 0.51545, 5e-5), cat("kappa_min ", fmt("%.6f", kmin), " (0.51545 +- 5e-5)"));
  return r;
}

double max_gap(const CriticalCurve& a, const CriticalCurve& b, int& compared) {
  double worst = 0.0;
  for (std::size_t k = 0; k < a.points.size(); ++k) {
    const auto& p = a.points[k];
    const auto& q = b.points[k];
    if (p.status != PointStatus::Inside || q.status != PointStatus::Inside) continue;
    ++compared;
    worst = std::max(worst, std::abs(p.value - q.value));
  }
  return worst;
}

Report triple_agreement() {
  Report r;
  const auto t0 = std::chrono::steady_clock::now();
  const auto grid = default_d_grid(200);
  const SolveSettings s;
  for (Pair p : {Pair::MonitoringVsZero, Pair::MonitoringVsInspection}) {
    const CriticalQuery q{p, ref50_space(), 0.8};
    const auto direct = trace_critical_curve(q, grid, Method::DirectNn, s);
    const auto rescaled = trace_critical_curve(q, grid, Method::N1Rescale, s);
    const auto closed = trace_critical_curve(q, grid, Method::ClosedForm, s);
    int n1 = 0, n2 = 0;
    const double g1 = max_gap(direct, rescaled, n1);
    const double g2 = max_gap(direct, closed, n2);
    r.check(g1 <= 1e-5 && n1 > 0,
            cat(to_string(p), ": |direct - rescale| ", g1, " over ", n1, " points (<= 1e-5)"));
    r.check(g2 <= 1e-5, cat(to_string(p), ": |direct - closed| ", g2, " over ", n2,
                            " points where defined (<= 1e-5)"));
    if (n2 == 0) r.note(cat(to_string(p), ": no closed form at N = n; the rescale column is the closed form at N = 1"));
    r.check(!direct.any_failure(), cat(to_string(p), ": no solver failures"));
  }
  const double dt = seconds_since(t0);
  r.check(dt < 120.0, cat("runtime ", dt, " s (< 2 min)"));
  return r;
}

CurvePoint curve_minimum(double kappa) {
  const CriticalQuery q{Pair::MonitoringVsZero, with_kappa(ref50_space(), kappa), 0.8};
  const auto c = trace_critical_curve(q, log_grid(400, 1e-3, 0.5), Method::ClosedForm, {});
  CurvePoint best;
  best.value = 2.0;
  for (const auto& p : c.points) {
    if (p.status == PointStatus::Inside && p.value < best.value) best = p;
  }
  return best;
}

Report landmarks() {
  Report r;
  double tangency = 2.0, at = 0.0;
  for (double d : log_grid(400, 3e-3, 0.2)) {
    const double v = em_crit_vs_zero_raw(ref50_space(d).monitoring);
    if (v < tangency) tangency = v, at = d;
  }
  r.check(near(tangency, 0.35, 0.02) && near(at, 0.02, 0.005),
          cat("tangency e_m ", fmt("%.4f", tangency), " at d ", fmt("%.5f", at),
              " (0.35 +- 0.02 at 0.02 +- 0.005)"));

  const CriticalQuery mz{Pair::MonitoringVsZero, ref50_space(), 0.8};
  SolveSettings fine;
  fine.tolerance = 1e-9;
  const RootReport roots = find_cost_equality(mz, Parameter::DefectRate, fine);
  const double lower = roots.roots.empty() ? NAN : roots.roots.front();
  r.check(lower >= 2.0e-3 && lower <= 2.6e-3,
          cat("lower superiority boundary at e_m = 0.8: d = ", fmt("%.4e", lower),
              " (in [2.0e-3, 2.6e-3])"));
  r.note(cat("envelope over e_m: d_min = ", fmt("%.4e", d_min_vs_zero(ref50_space().monitoring)),
             "; upper boundary d = ", fmt("%.5f", roots.roots.back())));

  const CurvePoint k4 = curve_minimum(4.0);
  r.check(near(k4.value, 0.18, 0.02) && near(k4.d, 0.012, 0.003),
          cat("kappa = 4 minimum ", fmt("%.4f", k4.value), " at d ", fmt("%.5f", k4.d),
              " (0.18 +- 0.02 at 0.012 +- 0.003)"));

  const CurvePoint weak = curve_minimum(0.2);
  const double onset = d_min_vs_zero(with_kappa(ref50_space(), 0.2).monitoring);
  r.check(near(weak.value, 0.8, 0.02) && near(onset, 0.015, 0.003),
          cat("kappa = 0.2 onset e_m ", fmt("%.4f", weak.value), ", d ", fmt("%.5f", onset),
              " (0.8 +- 0.02, 0.015 +- 0.003)"));
  return r;
}

Report taylor() {
  Report r;
  bool zero = true;
  for (double g : {0.01, 0.1, 0.5, 0.9, 0.99, 1.0}) zero = zero && taylor_error(g, 1.0).error == 0.0;
  r.check(zero, "error is 0 at N = 1");
  for (double g : {0.5, 0.9, 0.99}) {
    bool rising = true;
    double last = taylor_error(g, 1.0).error;
    for (double n = 1.1; n <= 1e6; n *= 1.1) {
      const double e = taylor_error(g, n).error;
      rising = rising && e > last;
      last = e;
    }
    const double limit = -std::log(g) + g - 1.0;
    const double gap = std::abs(taylor_error(g, 1e6).error - limit);
    r.check(rising, cat("gamma ", g, ": strictly increasing in N over [1, 1e6]"));
    r.check(gap <= 1e-6, cat("gamma ", g, ": |error(1e6) - limit| ", gap, " (<= 1e-6)"));
  }
  return r;
}

Report properties_and_surface() {
  Report r;
  constexpr int kDraws = 1000;
  const std::vector<std::function<t::PropertyResult()>> suite = {
      [] { return t::threshold_monotonicity(12, kDraws); },
      [] { return t::interval_shrinks(13, kDraws); },
      [] { return t::single_minimum(14, kDraws); },
      [] { return t::peak_at_zero(15, kDraws); },
      [] { return t::no_crossing(17, kDraws); },
      [] { return t::kappa_ei_rise(18, kDraws); },
  };
  for (const auto& run : suite) {
    const t::PropertyResult p = run();
    r.check(p.ok(), cat(p.name, ": ", p.violations, " violations, ", p.checked, " of ", p.draws,
                        " draws in domain", p.detail.empty() ? "" : "; " + p.detail));
  }

  const CriticalQuery q{Pair::MonitoringVsInspection, ref50_space(), 0.8};
  const auto e_grid = linear_grid(40, 0.0, 1.0);
  const SuperioritySurface s = superiority_surface(q, log_grid(50, 1e-4, 0.5), e_grid, {});
  const double corner = s.at(0, e_grid.size() - 1).em_crit;
  r.check(s.max_value() < 0.5, cat("50x40 surface max ", fmt("%.5f", s.max_value()), " (< 0.5)"));
  r.check(near(corner, 0.4845, 2e-3),
          cat("corner d = 1e-4, e_i = 1: ", fmt("%.5f", corner), " (0.4845 +- 2e-3)"));
  return r;
}

void info() {
  // Coefficients read at d = 0, where the N = 1 costs are plain stage sums.
  const MaintenanceCosts k1 = maintenance_costs(heavy_monitoring_space(1.0, 0.0));
  const double direct = ei_crit(k1, 1e-4);
  const double mapped = ei_crit(k1, rescale_defect_rate(1e-4, 50.0, 1.0));
  std::printf("INFO  critical e_i with M = 2e4: d(N=1) = 1e-4 gives %.4f; d(N=n) = 1e-4 mapped to "
              "N = 1 gives %.4f; reference 0.353\n",
              direct, mapped);
  const double kc = kappa_crit(maintenance_costs(heavy_monitoring_space(50.0)));
  std::printf("INFO  critical kappa with M = 2e4: %.5f; reference 0.5145\n", kc);
  const double low = em_crit_at_d0(maintenance_costs(with_kappa(ref50_space(), 0.6)), 0.8);
  std::printf("INFO  em_crit at d -> 0, kappa = 0.6: %.4f; reference 0.1156\n", low);
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Report (*run)();
  };
  const Criterion criteria[] = {
      {"homogenization exactness", homogenization},
      {"recursive oracle vs product forms", oracle},
      {"Monte Carlo consistency", monte_carlo},
      {"saturation bounds", saturation},
      {"small-d numerics", numerics},
      {"triple-method agreement", triple_agreement},
      {"curve landmarks", landmarks},
      {"Taylor error function", taylor},
      {"property suite and 50x40 surface", properties_and_surface},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.check(false, cat("threw: ", e.what()));
    }
    std::printf("%s  %s (%.2f s)\n", r.pass ? "PASS" : "FAIL", c.name, seconds_since(t0));
    for (const auto& l : r.lines) std::printf("        %s\n", l.c_str());
    failed += !r.pass;
  }
  info();
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed,
              std::size(criteria));
  return failed == 0 ? 0 : 1;
}
