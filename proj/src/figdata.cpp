#include "qmaint/figdata.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "qmaint/critical.hpp"
#include "qmaint/errors.hpp"
#include "qmaint/solver.hpp"

namespace qmaint {

namespace {

constexpr double kEffectivenessSeries[] = {0.2, 0.4, 0.6, 0.8, 1.0};

struct Base {
  StrategySet set;
  double e_m = 0.0;
  double e_i = 0.0;
};

Base base_of(const Chain& chain) {
  Base b;
  b.set = homogenize_all(chain, static_cast<double>(chain.size()));
  b.e_m = b.set.monitoring.effectiveness.monitoring;
  b.e_i = b.set.inspection.effectiveness.inspection;
  return b;
}

std::string status_text(PointStatus s) { return std::string(to_string(s)); }

FigureData fig2(const Base& b) {
  FigureData f{"fig2", {{"d", "series", "e_m", "c_u"}, {}}, false};
  for (double d : linear_grid(201, 0.0, 0.2)) {
    for (double em : kEffectivenessSeries) {
      const StrategySet s = with_state(b.set, d, em, b.e_i);
      f.table.add({format_number(d), "monitoring", format_number(em),
                   format_number(unit_cost_monitoring(s.monitoring))});
    }
    const StrategySet s = with_state(b.set, d, b.e_m, b.e_i);
    f.table.add({format_number(d), "zero", "", format_number(unit_cost_zero(s.zero))});
  }
  return f;
}

FigureData fig3(const Base& b) {
  FigureData f{"fig3", {{"d", "e_m", "delta_c_u"}, {}}, false};
  for (double d : default_d_grid()) {
    for (double em : kEffectivenessSeries) {
      const StrategySet s = with_state(b.set, d, em, b.e_i);
      f.table.add({format_number(d), format_number(em),
                   format_number(cost_difference(Pair::MonitoringVsZero, s))});
    }
  }
  return f;
}

FigureData fig4(const Base& b, const SolveSettings& settings) {
  FigureData f{"fig4", {{"kappa", "method", "d", "value", "status"}, {}}, false};
  for (double kappa : {0.2, 1.0, 4.0}) {
    CriticalQuery q{Pair::MonitoringVsZero, with_kappa(b.set, kappa), b.e_i};
    for (Method m : {Method::DirectNn, Method::N1Rescale, Method::ClosedForm}) {
      const CriticalCurve c = trace_critical_curve(q, default_d_grid(), m, settings);
      f.solver_failed = f.solver_failed || c.any_failure();
      for (const auto& pt : c.points) {
        if (pt.status == PointStatus::Undefined) continue;
        f.table.add({format_number(kappa), std::string(csv_label(m)), format_number(pt.d),
                     format_number(pt.value), status_text(pt.status)});
      }
    }
  }
  return f;
}

FigureData fig5(const Base& b) {
  FigureData f{"fig5", {{"d", "strategy", "c_u"}, {}}, false};
  for (double d : linear_grid(201, 0.0, 1.0)) {
    const StrategySet s = with_state(b.set, d, b.e_m, b.e_i);
    f.table.add({format_number(d), "zero", format_number(unit_cost_zero(s.zero))});
    try {
      f.table.add(
          {format_number(d), "inspection", format_number(unit_cost_inspection(s.inspection))});
    } catch (const DegenerateChain&) {
    }
    f.table.add({format_number(d), "monitoring", format_number(unit_cost_monitoring(s.monitoring))});
  }
  return f;
}

FigureData fig6(const Base& b, const SolveSettings& settings) {
  CriticalQuery q{Pair::MonitoringVsInspection, b.set, b.e_i};
  const SuperioritySurface s = superiority_surface(q, log_grid(50, 1e-4, 0.5),
                                                   linear_grid(40, 0.0, 1.0), settings);
  return {"fig6", surface_table(s), s.any_failure()};
}

FigureData fig7(const Base& b, const SolveSettings& settings) {
  FigureData f{"fig7", {{"space", "kappa", "M", "d", "value", "status"}, {}}, false};
  constexpr double e_i = 0.8;
  const double inspection_fixed = b.set.inspection.fixed.inspection;
  for (double kappa : {1.0, 0.6}) {
    for (double factor : {0.0, 1.0, 2.0}) {
      StrategySet set = with_kappa(b.set, kappa);
      set.monitoring.fixed.monitoring = factor * inspection_fixed;
      const std::string M = format_number(factor * inspection_fixed);
      CriticalQuery q{Pair::MonitoringVsInspection, set, e_i};
      const CriticalCurve c = trace_critical_curve(q, default_d_grid(), Method::N1Rescale, settings);
      for (const auto& pt : c.points) {
        if (pt.status == PointStatus::Undefined) continue;
        f.table.add({"N=n", format_number(kappa), M, format_number(pt.d), format_number(pt.value),
                     status_text(pt.status)});
      }
      for (double d : default_d_grid()) {
        try {
          StrategySet at = with_state(set, d, 0.0, e_i);
          const StrategySet one = rescale(at, 1.0);
          const CriticalValue v = classify_value(em_crit_vs_inspection_N1(one));
          const PointStatus st = v.position == Position::Inside  ? PointStatus::Inside
                                 : v.position == Position::Below ? PointStatus::Below
                                                                 : PointStatus::Above;
          f.table.add({"N=1", format_number(kappa), M, format_number(one.inspection.defect_rate),
                       format_number(std::clamp(v.value, 0.0, 1.0)), status_text(st)});
        } catch (const Error&) {
        }
      }
    }
  }
  return f;
}

FigureData fig8(const Base& b, const SolveSettings& settings) {
  FigureData f{"fig8", {{"e_m", "a", "b", "empty"}, {}}, false};
  for (double em : linear_grid(71, 0.3, 1.0)) {
    try {
      const RegimeBounds r = regime_bounds(b.set, em, b.e_i, settings);
      f.table.add({format_number(em), format_number(r.a), format_number(r.b), r.empty ? "1" : "0"});
    } catch (const NoConvergence&) {
      f.solver_failed = true;
      const std::string nan = format_number(std::numeric_limits<double>::quiet_NaN());
      f.table.add({format_number(em), nan, nan, "0"});
    }
  }
  return f;
}

}  // namespace

FigureData figure_data(int figure, const Chain& chain, const SolveSettings& settings) {
  const Base b = base_of(chain);
  switch (figure) {
    case 2: return fig2(b);
    case 3: return fig3(b);
    case 4: return fig4(b, settings);
    case 5: return fig5(b);
    case 6: return fig6(b, settings);
    case 7: return fig7(b, settings);
    case 8: return fig8(b, settings);
    default: break;
  }
  throw std::invalid_argument("figure must be between 2 and 8, got " + std::to_string(figure));
}

}  // namespace qmaint
