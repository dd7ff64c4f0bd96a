#pragma once

// Critical parameters between pure strategies: closed forms for monitoring
// vs zero maintenance and monitoring vs inspection, the small-d
// approximation and its corollaries, and the regime partition of the
// defect-rate axis.

#include <string_view>

#include "qmaint/homogenization.hpp"
#include "qmaint/roots.hpp"

namespace qmaint {

// The three masked homogenizations of one chain, all at the same N.
struct StrategySet {
  HomogenizedChain zero;
  HomogenizedChain inspection;
  HomogenizedChain monitoring;

  [[nodiscard]] double stages() const { return monitoring.stages; }
  [[nodiscard]] double kappa() const { return monitoring.kappa(); }
};

[[nodiscard]] StrategySet homogenize_all(const Chain& chain, double stages);
[[nodiscard]] StrategySet rescale(const StrategySet& set, double target_stages);

// Overwrites the operating point of the N-space: d on every side, e_m on the
// monitoring side, e_i on the inspection side. Cost coefficients are kept.
[[nodiscard]] StrategySet with_state(StrategySet set, double d, double e_m, double e_i);
// Replaces alpha, beta on every side by a decomposition with the given kappa.
[[nodiscard]] StrategySet with_kappa(StrategySet set, double kappa);
[[nodiscard]] Reputation reputation_for_kappa(double kappa);

enum class Pair { MonitoringVsZero, MonitoringVsInspection, InspectionVsZero };

[[nodiscard]] std::string_view to_string(Pair p);
// Accepts "monitoring-zero", "monitoring-inspection", "inspection-zero".
[[nodiscard]] Pair parse_pair(std::string_view name);
[[nodiscard]] Strategy lhs_strategy(Pair p);
[[nodiscard]] Strategy rhs_strategy(Pair p);

struct CriticalQuery {
  Pair pair = Pair::MonitoringVsZero;
  StrategySet h;
  double fixed_e_i = 0.0;  // inspection effectiveness for pairs with inspection
};

// c_u(lhs) - c_u(rhs) at the current state of `set`. DegenerateChain on
// either side propagates.
[[nodiscard]] double cost_difference(Pair p, const StrategySet& set);

enum class Position { Below, Inside, Above };
[[nodiscard]] std::string_view to_string(Position p);

// A critical effectiveness together with where it falls relative to [0,1].
// Below: the left strategy wins for every feasible effectiveness; Above:
// it never wins.
struct CriticalValue {
  double value = 0.0;
  Position position = Position::Inside;
};
[[nodiscard]] CriticalValue classify_value(double v);

// ---- Monitoring vs zero maintenance ----

// Critical monitoring effectiveness with the N of `h` as exponent.
// Throws NoThreshold when kappa c <= M/X0 + m or d <= d_min.
[[nodiscard]] double em_crit_vs_zero_Nn(const HomogenizedChain& monitoring);
// Same formula without the domain checks; above 1 below d_min, NaN only if
// the operating point is outside every domain (d = 0).
[[nodiscard]] double em_crit_vs_zero_raw(const HomogenizedChain& monitoring);
// Defect rate below which zero maintenance wins at any e_m.
// Throws NoThreshold when kappa c <= M/X0 + m.
[[nodiscard]] double d_min_vs_zero(const HomogenizedChain& monitoring);
// Linear N = 1 form; requires N == 1 and d > 0. Throws NoThreshold if > 1.
[[nodiscard]] double em_crit_vs_zero_N1(const HomogenizedChain& monitoring);
[[nodiscard]] double em_crit_vs_zero_N1_raw(const HomogenizedChain& monitoring);

// Reference saturation of the monitoring and zero unit costs as d -> 1 with
// the power term vanishing: N (C + M)/X0 + N (1 + kappa)(c + m).
[[nodiscard]] double saturation_bound(const HomogenizedChain& h, Strategy s);

// ---- Monitoring vs inspection ----

// Critical e_m in the N = 1 space for the inspection side's current d, e_i.
// Both sides must be at N = 1. Throws DegenerateChain if e_i d == 1 and
// std::invalid_argument if kappa == 0 or N != 1.
[[nodiscard]] double em_crit_vs_inspection_N1(const StrategySet& set);

// Critical e_m in the N-space of `set`, computed at N = 1 and mapped back.
// The monitoring side's e_m is ignored. NaN where the N = 1 form is
// undefined; -inf when the N = 1 value is too negative to map back.
// Throws std::invalid_argument for Pair::InspectionVsZero.
[[nodiscard]] double em_crit_rescaled(Pair p, StrategySet set);

// Per-stage cost coefficients feeding the small-d results. `stages` is the
// N of the space they were read from, `source_stages` the physical n.
struct MaintenanceCosts {
  double stages = 1.0;
  double source_stages = 1.0;
  double initial_volume = 1.0;
  double kappa = 0.0;
  double C = 0.0, M = 0.0, I = 0.0;
  double c_m = 0.0, c_i = 0.0;  // production cost under monitoring / inspection
  double m = 0.0, i = 0.0;

  // (M - I)/X0 + m - i
  [[nodiscard]] double maintenance_gap() const;
  // (M - I)/X0 + m - i + c_m - c_i
  [[nodiscard]] double balance() const;
};

// Reads the coefficients of the monitoring and inspection sides.
[[nodiscard]] MaintenanceCosts maintenance_costs(const StrategySet& set);

// First-order small-d approximation; uses the space's N. Valid for d <= 1e-2.
[[nodiscard]] double em_crit_taylor(const MaintenanceCosts& k, double e_i, double d);
inline constexpr double kTaylorDefectLimit = 1e-2;

// The following use the source stage count n in the 1/2 (1 + 1/n) factor,
// which makes them invariant under rescaling. Balance-type preconditions are
// checked to relative 1e-12 and throw ConditionViolated.
[[nodiscard]] double max_em_crit(const MaintenanceCosts& k);
[[nodiscard]] double em_crit_at_d0(const MaintenanceCosts& k, double e_i);
// Inverse of em_crit_at_d0 in e_i; the result may leave [0,1].
[[nodiscard]] double ei_for_d0_threshold(const MaintenanceCosts& k, double target);
[[nodiscard]] double kappa_min(const MaintenanceCosts& k);
// Critical e_i at which the kappa-derivative flips; k must be read at N = 1.
[[nodiscard]] double ei_crit(const MaintenanceCosts& k, double d);
[[nodiscard]] double kappa_crit(const MaintenanceCosts& k);

// ---- Regimes ----

enum class Field { Uncertainty, MonitoringSuperiority, Avoidance };
[[nodiscard]] std::string_view to_string(Field f);

struct RegimeClassification {
  Field field = Field::Uncertainty;
  double a = 1.0;
  double b = 1.0;
  bool empty_monitoring_field = false;  // monitoring never wins; a = b = 1
};

struct RegimeBounds {
  double a = 1.0;
  double b = 1.0;
  bool empty = false;
};

// a: smallest d where monitoring is at least as cheap as the better of zero
// maintenance and inspection; b: largest such d. Operating point e_m, e_i
// is set on the N-space of `set`.
[[nodiscard]] RegimeBounds regime_bounds(const StrategySet& set, double e_m, double e_i,
                                         const SolveSettings& settings);
[[nodiscard]] Field field_of(double d, const RegimeBounds& r);
[[nodiscard]] RegimeClassification classify_regime(const StrategySet& set, double d, double e_m,
                                                   double e_i, const SolveSettings& settings);

}  // namespace qmaint
