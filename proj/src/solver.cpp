#include "qmaint/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "grid_kernels.hpp"
#include "qmaint/errors.hpp"

namespace qmaint {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_parameter_range(Parameter vary, Interval range) {
  const bool is_rate = vary != Parameter::Kappa;
  if (range.lo < 0.0 || (is_rate && range.hi > 1.0)) {
    throw std::invalid_argument("bracket [" + std::to_string(range.lo) + ", " +
                                std::to_string(range.hi) + "] leaves the range of " +
                                std::string(to_string(vary)));
  }
}

std::vector<double> parameter_scan(Parameter vary, Interval range, int samples) {
  if (vary == Parameter::DefectRate && range.lo == 0.0) {
    std::vector<double> xs{0.0};
    const auto tail = log_grid(samples - 1, range.hi * 1e-6, range.hi);
    xs.insert(xs.end(), tail.begin(), tail.end());
    return xs;
  }
  return scan_points(range, samples);
}

Parameter effectiveness_of(Pair p) {
  return p == Pair::InspectionVsZero ? Parameter::InspectionEffectiveness
                                     : Parameter::MonitoringEffectiveness;
}

// Clamps a critical value into [0,1] and records which side it fell on.
CurvePoint from_value(double d, double v) {
  CurvePoint pt;
  pt.d = d;
  if (std::isnan(v)) return pt;
  const CriticalValue cv = classify_value(v);
  pt.value = std::clamp(v, 0.0, 1.0);
  pt.status = cv.position == Position::Below   ? PointStatus::Below
              : cv.position == Position::Above ? PointStatus::Above
                                               : PointStatus::Inside;
  return pt;
}

CurvePoint numeric_point(const CriticalQuery& q, double d, const SolveSettings& settings) {
  CriticalQuery at_d = q;
  at_d.h = set_parameter(q, Parameter::DefectRate, d);
  const Parameter vary = effectiveness_of(q.pair);
  SolveSettings s = settings;
  s.bracket = {0.0, 1.0};
  CurvePoint pt;
  pt.d = d;
  try {
    const RootReport r = find_cost_equality(at_d, vary, s);
    if (r.degenerate) return pt;
    pt.value = r.roots.front();
    pt.status = PointStatus::Inside;
  } catch (const NoRoot&) {
    // The left strategy either never or always wins on [0,1].
    const bool never = cost_difference_at(at_d, vary, 1.0) > 0.0;
    pt.value = never ? 1.0 : 0.0;
    pt.status = never ? PointStatus::Above : PointStatus::Below;
  }
  return pt;
}

// N = 1 closed form, mapped back with the monitoring-effectiveness transform.
CurvePoint rescaled_point(const CriticalQuery& q, double d) {
  return from_value(d, em_crit_rescaled(q.pair, set_parameter(q, Parameter::DefectRate, d)));
}

}  // namespace

void SolveSettings::validate() const {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("solver tolerance must be positive and finite");
  }
  if (max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  if (!(bracket.lo < bracket.hi) || !std::isfinite(bracket.lo) || !std::isfinite(bracket.hi)) {
    throw std::invalid_argument("solver bracket must be a nonempty finite interval");
  }
  if (scan_samples < 2) throw std::invalid_argument("scan_samples must be >= 2");
}

std::vector<double> scan_points(Interval range, int samples) {
  if (samples < 2) throw std::invalid_argument("scan needs at least two samples");
  if (range.lo > 0.0 && range.hi / range.lo > 100.0) return log_grid(samples, range.lo, range.hi);
  return linear_grid(samples, range.lo, range.hi);
}

std::vector<double> linear_grid(int points, double lo, double hi) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int k = 0; k < points; ++k) xs[static_cast<std::size_t>(k)] = lo + step * k;
  xs.back() = hi;
  return xs;
}

std::vector<double> log_grid(int points, double lo, double hi) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("log grid needs 0 < lo < hi");
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double span = std::log(hi / lo);
  for (int k = 0; k < points; ++k) {
    xs[static_cast<std::size_t>(k)] = lo * std::exp(span * k / (points - 1));
  }
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

std::vector<double> default_d_grid(int points, double lo, double hi) {
  return log_grid(points, lo, hi);
}

std::string_view to_string(Parameter p) {
  switch (p) {
    case Parameter::DefectRate: return "d";
    case Parameter::MonitoringEffectiveness: return "em";
    case Parameter::InspectionEffectiveness: return "ei";
    case Parameter::Kappa: return "kappa";
  }
  return "d";
}

Parameter parse_parameter(std::string_view name) {
  for (auto p : {Parameter::DefectRate, Parameter::MonitoringEffectiveness,
                 Parameter::InspectionEffectiveness, Parameter::Kappa}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
}

StrategySet set_parameter(const CriticalQuery& q, Parameter vary, double value) {
  StrategySet s = with_state(q.h, q.h.monitoring.defect_rate,
                             q.h.monitoring.effectiveness.monitoring, q.fixed_e_i);
  switch (vary) {
    case Parameter::DefectRate: return with_state(s, value, s.monitoring.effectiveness.monitoring, q.fixed_e_i);
    case Parameter::MonitoringEffectiveness: s.monitoring.effectiveness.monitoring = value; break;
    case Parameter::InspectionEffectiveness: s.inspection.effectiveness.inspection = value; break;
    case Parameter::Kappa: s = with_kappa(s, value); break;
  }
  return s;
}

double cost_difference_at(const CriticalQuery& q, Parameter vary, double value) {
  const StrategySet s = set_parameter(q, vary, value);
  try {
    return cost_difference(q.pair, s);
  } catch (const DegenerateChain&) {
    const double inf = std::numeric_limits<double>::infinity();
    return lhs_strategy(q.pair) == Strategy::Inspection ? inf : -inf;
  }
}

RootReport find_cost_equality(const CriticalQuery& q, Parameter vary,
                              const SolveSettings& settings) {
  settings.validate();
  require_parameter_range(vary, settings.bracket);
  auto f = [&](double x) { return cost_difference_at(q, vary, x); };

  const ScanResult scan =
      scan_sign_changes(f, parameter_scan(vary, settings.bracket, settings.scan_samples));
  RootReport out;
  if (scan.identically_zero) {
    out.degenerate = true;
    return out;
  }
  out.roots = scan.exact_roots;
  for (const Bracket& b : scan.brackets) out.roots.push_back(solve_bracketed(f, b, settings));
  if (out.roots.empty()) {
    throw NoRoot("no sign change of c_u(" + std::string(to_string(lhs_strategy(q.pair))) +
                 ") - c_u(" + std::string(to_string(rhs_strategy(q.pair))) + ") in " +
                 std::string(to_string(vary)) + " on [" + std::to_string(settings.bracket.lo) +
                 ", " + std::to_string(settings.bracket.hi) + "]");
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.roots.erase(std::unique(out.roots.begin(), out.roots.end()), out.roots.end());
  return out;
}

std::string_view to_string(Method m) {
  switch (m) {
    case Method::DirectNn: return "direct";
    case Method::N1Rescale: return "rescale";
    case Method::ClosedForm: return "closed";
  }
  return "direct";
}

std::string_view csv_label(Method m) {
  switch (m) {
    case Method::DirectNn: return "numeric";
    case Method::N1Rescale: return "closed_N1_rescaled";
    case Method::ClosedForm: return "closed_Nn";
  }
  return "numeric";
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::DirectNn, Method::N1Rescale, Method::ClosedForm}) {
    if (name == to_string(m) || name == csv_label(m)) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string_view to_string(PointStatus s) {
  switch (s) {
    case PointStatus::Inside: return "inside";
    case PointStatus::Below: return "below";
    case PointStatus::Above: return "above";
    case PointStatus::Undefined: return "undefined";
  }
  return "undefined";
}

std::string_view to_string(Dominance v) {
  switch (v) {
    case Dominance::Monitoring: return "monitoring";
    case Dominance::Inspection: return "inspection";
    case Dominance::Split: return "split";
    case Dominance::Undefined: return "undefined";
  }
  return "undefined";
}

CurvePoint critical_point(const CriticalQuery& q, double d, Method method,
                          const SolveSettings& settings) {
  CurvePoint undefined;
  undefined.d = d;
  undefined.value = kNaN;
  try {
    CurvePoint pt = undefined;
    switch (method) {
      case Method::DirectNn: pt = numeric_point(q, d, settings); break;
      case Method::N1Rescale:
        if (q.pair == Pair::InspectionVsZero) return undefined;
        pt = rescaled_point(q, d);
        break;
      case Method::ClosedForm:
        if (q.pair != Pair::MonitoringVsZero) return undefined;
        pt = from_value(d, em_crit_vs_zero_raw(set_parameter(q, Parameter::DefectRate, d).monitoring));
        break;
    }
    if (pt.status == PointStatus::Undefined) pt.value = kNaN;
    return pt;
  } catch (const NoConvergence&) {
    undefined.solver_failed = true;
    return undefined;
  } catch (const Error&) {
    return undefined;
  } catch (const std::invalid_argument&) {
    return undefined;
  }
}

bool CriticalCurve::any_failure() const {
  return std::any_of(points.begin(), points.end(),
                     [](const CurvePoint& p) { return p.solver_failed; });
}

const SurfaceCell& SuperioritySurface::at(std::size_t d_index, std::size_t e_i_index) const {
  return cells.at(d_index * e_i_grid.size() + e_i_index);
}

double SuperioritySurface::max_value() const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& c : cells) {
    if (c.status == PointStatus::Inside) best = std::max(best, c.em_crit);
  }
  return best;
}

bool SuperioritySurface::any_failure() const {
  return std::any_of(cells.begin(), cells.end(),
                     [](const SurfaceCell& c) { return c.solver_failed; });
}

namespace detail {

void require_d_grid(const std::vector<double>& d_grid) {
  for (std::size_t k = 0; k < d_grid.size(); ++k) {
    if (!(d_grid[k] > 0.0 && d_grid[k] < 1.0)) {
      throw std::invalid_argument("defect-rate grid must lie inside (0,1)");
    }
    if (k > 0 && !(d_grid[k] > d_grid[k - 1])) {
      throw std::invalid_argument("defect-rate grid must be strictly increasing");
    }
  }
}

void require_e_i_grid(const std::vector<double>& e_i_grid) {
  for (double e : e_i_grid) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("e_i grid must lie in [0,1]");
  }
}

SurfaceCell surface_cell(const CriticalQuery& q, double d, double e_i, Method method,
                         const SolveSettings& settings) {
  CriticalQuery at = q;
  at.pair = Pair::MonitoringVsInspection;
  at.fixed_e_i = e_i;
  const CurvePoint pt = critical_point(at, d, method, settings);
  SurfaceCell cell;
  cell.d = d;
  cell.e_i = e_i;
  cell.em_crit = pt.value;
  cell.status = pt.status;
  cell.solver_failed = pt.solver_failed;
  switch (pt.status) {
    case PointStatus::Inside: cell.dominant = Dominance::Split; break;
    case PointStatus::Below: cell.dominant = Dominance::Monitoring; break;
    case PointStatus::Above: cell.dominant = Dominance::Inspection; break;
    case PointStatus::Undefined: cell.dominant = Dominance::Undefined; break;
  }
  return cell;
}

}  // namespace detail

}  // namespace qmaint
