#pragma once

// Numeric side of the critical analysis: roots of unit-cost differences,
// critical curves over a defect-rate grid and the (d, e_i) superiority
// surface. Grid kernels run under OpenMP; qmaint::serial holds the plain
// loops they are checked against.

#include <string_view>
#include <vector>

#include "qmaint/critical.hpp"
#include "qmaint/roots.hpp"

namespace qmaint {

enum class Parameter { DefectRate, MonitoringEffectiveness, InspectionEffectiveness, Kappa };

[[nodiscard]] std::string_view to_string(Parameter p);
// Accepts "d", "em", "ei", "kappa".
[[nodiscard]] Parameter parse_parameter(std::string_view name);

// The query's N-space with `vary` set to `value`; the other parameters come
// from q.h (d and e_m from the monitoring side) and q.fixed_e_i.
[[nodiscard]] StrategySet set_parameter(const CriticalQuery& q, Parameter vary, double value);

// Cost difference lhs - rhs as a function of one parameter. Inspection
// scrapping every unit counts as an infinite inspection cost.
[[nodiscard]] double cost_difference_at(const CriticalQuery& q, Parameter vary, double value);

struct RootReport {
  std::vector<double> roots;  // ascending
  bool degenerate = false;    // difference identically zero on the bracket
};

// Every sign change of the cost difference on settings.bracket, each located
// to better than settings.tolerance. Defect-rate scans sample 0 and a log
// grid; other parameters a linear grid.
// Throws NoRoot if there is no sign change, NoConvergence from refinement.
[[nodiscard]] RootReport find_cost_equality(const CriticalQuery& q, Parameter vary,
                                            const SolveSettings& settings);

enum class Method { DirectNn, N1Rescale, ClosedForm };
[[nodiscard]] std::string_view to_string(Method m);
// CSV label: numeric, closed_N1_rescaled, closed_Nn.
[[nodiscard]] std::string_view csv_label(Method m);
// Accepts "direct", "rescale", "closed".
[[nodiscard]] Method parse_method(std::string_view name);

enum class PointStatus { Inside, Below, Above, Undefined };
[[nodiscard]] std::string_view to_string(PointStatus s);

// value is clamped into [0,1] for Below/Above and NaN when Undefined.
struct CurvePoint {
  double d = 0.0;
  double value = 0.0;
  PointStatus status = PointStatus::Undefined;
  bool solver_failed = false;  // NoConvergence during a numeric solve
};

struct CriticalCurve {
  Pair pair = Pair::MonitoringVsZero;
  Method method = Method::DirectNn;
  double stages = 1.0;
  std::vector<CurvePoint> points;

  [[nodiscard]] bool any_failure() const;
};

// Critical effectiveness at one defect rate: e_m for the monitoring pairs,
// e_i for inspection vs zero. Never throws on domain problems; they are
// reported through the status.
[[nodiscard]] CurvePoint critical_point(const CriticalQuery& q, double d, Method method,
                                        const SolveSettings& settings);

// `d_grid` must be strictly increasing inside (0,1).
[[nodiscard]] CriticalCurve trace_critical_curve(const CriticalQuery& q,
                                                 const std::vector<double>& d_grid, Method method,
                                                 const SolveSettings& settings);

enum class Dominance { Monitoring, Inspection, Split, Undefined };
[[nodiscard]] std::string_view to_string(Dominance v);

struct SurfaceCell {
  double d = 0.0;
  double e_i = 0.0;
  double em_crit = 0.0;
  PointStatus status = PointStatus::Undefined;
  // Monitoring: wins for every e_m; Inspection: for none; Split: depends on
  // whether e_m exceeds em_crit.
  Dominance dominant = Dominance::Undefined;
  bool solver_failed = false;
};

// Rectangular grid, d-major: cell (k, j) sits at k * e_i_grid.size() + j.
struct SuperioritySurface {
  std::vector<double> d_grid;
  std::vector<double> e_i_grid;
  double stages = 1.0;
  std::vector<SurfaceCell> cells;

  [[nodiscard]] const SurfaceCell& at(std::size_t d_index, std::size_t e_i_index) const;
  [[nodiscard]] double max_value() const;  // over Inside cells
  [[nodiscard]] bool any_failure() const;
};

// Monitoring vs inspection critical e_m over the grid; q.pair is ignored.
[[nodiscard]] SuperioritySurface superiority_surface(const CriticalQuery& q,
                                                     const std::vector<double>& d_grid,
                                                     const std::vector<double>& e_i_grid,
                                                     const SolveSettings& settings,
                                                     Method method = Method::N1Rescale);

// Default grids: 200 log-spaced d on [1e-4, 0.5]; 50 linear e_i on [0,1].
[[nodiscard]] std::vector<double> default_d_grid(int points = 200, double lo = 1e-4,
                                                 double hi = 0.5);
[[nodiscard]] std::vector<double> linear_grid(int points, double lo, double hi);
[[nodiscard]] std::vector<double> log_grid(int points, double lo, double hi);

namespace serial {

[[nodiscard]] CriticalCurve trace_critical_curve(const CriticalQuery& q,
                                                 const std::vector<double>& d_grid, Method method,
                                                 const SolveSettings& settings);
[[nodiscard]] SuperioritySurface superiority_surface(const CriticalQuery& q,
                                                     const std::vector<double>& d_grid,
                                                     const std::vector<double>& e_i_grid,
                                                     const SolveSettings& settings,
                                                     Method method = Method::N1Rescale);

}  // namespace serial

}  // namespace qmaint
