#include "qmaint/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmaint/errors.hpp"

namespace qmaint {

namespace {

constexpr double kConditionTolerance = 1e-12;

double half_factor(double n) { return 0.5 * (1.0 + 1.0 / n); }

double power_of(double rate, double stages) { return std::exp(stages * std::log1p(-rate)); }

double side_cost(const StrategySet& set, Strategy s) {
  switch (s) {
    case Strategy::Zero: return unit_cost_zero(set.zero);
    case Strategy::Inspection: return unit_cost_inspection(set.inspection);
    case Strategy::Monitoring: return unit_cost_monitoring(set.monitoring);
    case Strategy::General: break;
  }
  throw std::invalid_argument("strategy set holds pure strategies only");
}

double condition_scale(const MaintenanceCosts& k) {
  return std::max({std::abs(k.M) / k.initial_volume, std::abs(k.I) / k.initial_volume,
                   std::abs(k.m), std::abs(k.i), std::abs(k.c_m), std::abs(k.c_i),
                   std::numeric_limits<double>::min()});
}

void require_balance(const MaintenanceCosts& k, const char* what) {
  if (std::abs(k.balance()) > kConditionTolerance * condition_scale(k)) {
    throw ConditionViolated(std::string(what) +
                            " requires (M - I)/X0 + m - i + c_m - c_i = 0, got " +
                            std::to_string(k.balance()));
  }
}

void require_gap_nonpositive(const MaintenanceCosts& k, const char* what) {
  if (k.maintenance_gap() > kConditionTolerance * condition_scale(k)) {
    throw ConditionViolated(std::string(what) + " requires (M - I)/X0 + m - i <= 0, got " +
                            std::to_string(k.maintenance_gap()));
  }
}

void require_gap_positive(const MaintenanceCosts& k, const char* what) {
  if (!(k.maintenance_gap() > kConditionTolerance * condition_scale(k))) {
    throw ConditionViolated(std::string(what) + " requires (M - I)/X0 + m - i > 0, got " +
                            std::to_string(k.maintenance_gap()));
  }
}

void require_kappa(const MaintenanceCosts& k) {
  if (!(k.kappa > 0.0)) throw std::invalid_argument("reputation strength kappa must be > 0");
}

// kappa c > M/X0 + m, otherwise no monitoring superiority at all.
void require_monitoring_domain(const HomogenizedChain& h) {
  const double burden = h.fixed.monitoring / h.initial_volume + h.variable.monitoring;
  if (!(h.kappa() * h.variable.production > burden)) {
    throw NoThreshold("monitoring never beats zero maintenance: kappa c <= M/X0 + m");
  }
}

}  // namespace

StrategySet homogenize_all(const Chain& chain, double stages) {
  return {homogenize(chain, Strategy::Zero, stages), homogenize(chain, Strategy::Inspection, stages),
          homogenize(chain, Strategy::Monitoring, stages)};
}

StrategySet rescale(const StrategySet& set, double target_stages) {
  return {rescale(set.zero, target_stages), rescale(set.inspection, target_stages),
          rescale(set.monitoring, target_stages)};
}

StrategySet with_state(StrategySet set, double d, double e_m, double e_i) {
  set.zero.defect_rate = d;
  set.inspection.defect_rate = d;
  set.monitoring.defect_rate = d;
  set.monitoring.effectiveness.monitoring = e_m;
  set.inspection.effectiveness.inspection = e_i;
  return set;
}

Reputation reputation_for_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("kappa must be finite and >= 0");
  }
  if (kappa <= 1.0) return {kappa, 0.0};
  return {1.0, kappa - 1.0};
}

StrategySet with_kappa(StrategySet set, double kappa) {
  const Reputation r = reputation_for_kappa(kappa);
  set.zero.reputation = r;
  set.inspection.reputation = r;
  set.monitoring.reputation = r;
  return set;
}

std::string_view to_string(Pair p) {
  switch (p) {
    case Pair::MonitoringVsZero: return "monitoring-zero";
    case Pair::MonitoringVsInspection: return "monitoring-inspection";
    case Pair::InspectionVsZero: return "inspection-zero";
  }
  return "monitoring-zero";
}

Pair parse_pair(std::string_view name) {
  for (auto p : {Pair::MonitoringVsZero, Pair::MonitoringVsInspection, Pair::InspectionVsZero}) {
    if (name == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown strategy pair '" + std::string(name) + "'");
}

Strategy lhs_strategy(Pair p) {
  return p == Pair::InspectionVsZero ? Strategy::Inspection : Strategy::Monitoring;
}

Strategy rhs_strategy(Pair p) {
  return p == Pair::MonitoringVsInspection ? Strategy::Inspection : Strategy::Zero;
}

double cost_difference(Pair p, const StrategySet& set) {
  return side_cost(set, lhs_strategy(p)) - side_cost(set, rhs_strategy(p));
}

std::string_view to_string(Position p) {
  switch (p) {
    case Position::Below: return "below";
    case Position::Inside: return "inside";
    case Position::Above: return "above";
  }
  return "inside";
}

CriticalValue classify_value(double v) {
  if (v < 0.0) return {v, Position::Below};
  if (v > 1.0) return {v, Position::Above};
  return {v, Position::Inside};
}

double em_crit_vs_zero_raw(const HomogenizedChain& h) {
  const double n = h.stages;
  const double d = h.defect_rate;
  const double c = h.variable.production;
  const double m = h.variable.monitoring;
  if (!(d > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double burden = h.fixed.monitoring / h.initial_volume + m;
  const double p = (burden / h.kappa() + m + c * power_of(d, n)) / (c + m);
  // 1 - P^(1/N), kept accurate when P is close to 1.
  const double gap = -std::expm1(std::log(p) / n);
  return 1.0 - gap / d;
}

double em_crit_vs_zero_Nn(const HomogenizedChain& h) {
  require_monitoring_domain(h);
  if (!(h.defect_rate > d_min_vs_zero(h))) {
    throw NoThreshold("defect rate at or below d_min: zero maintenance wins for every e_m");
  }
  return em_crit_vs_zero_raw(h);
}

double d_min_vs_zero(const HomogenizedChain& h) {
  require_monitoring_domain(h);
  const double burden = h.fixed.monitoring / h.initial_volume + h.variable.monitoring;
  const double ratio = burden / (h.kappa() * h.variable.production);
  return -std::expm1(std::log1p(-ratio) / h.stages);
}

double em_crit_vs_zero_N1_raw(const HomogenizedChain& h) {
  if (h.stages != 1.0) {
    throw std::invalid_argument("the linear form needs the N = 1 space; rescale first");
  }
  const double d = h.defect_rate;
  const double c = h.variable.production;
  const double m = h.variable.monitoring;
  if (!(d > 0.0)) return std::numeric_limits<double>::quiet_NaN();
  const double burden = h.fixed.monitoring / h.initial_volume + m;
  return m / (c + m) + burden / (h.kappa() * (c + m) * d);
}

double em_crit_vs_zero_N1(const HomogenizedChain& h) {
  if (!(h.defect_rate > 0.0)) throw std::invalid_argument("defect rate must be > 0");
  const double v = em_crit_vs_zero_N1_raw(h);
  if (v > 1.0) throw NoThreshold("critical monitoring effectiveness exceeds 1");
  return v;
}

double saturation_bound(const HomogenizedChain& h, Strategy s) {
  const double n = h.stages;
  const double k = h.kappa();
  switch (s) {
    case Strategy::Zero:
      return n * h.fixed.production / h.initial_volume + n * (1.0 + k) * h.variable.production;
    case Strategy::Monitoring:
      return n * (h.fixed.production + h.fixed.monitoring) / h.initial_volume +
             n * (1.0 + k) * (h.variable.production + h.variable.monitoring);
    default: break;
  }
  throw std::invalid_argument("saturation bound exists for zero maintenance and monitoring only");
}

double em_crit_vs_inspection_N1(const StrategySet& set) {
  const HomogenizedChain& hm = set.monitoring;
  const HomogenizedChain& hi = set.inspection;
  if (hm.stages != 1.0 || hi.stages != 1.0) {
    throw std::invalid_argument("the N = 1 form needs both sides in the N = 1 space");
  }
  const double k = hi.kappa();
  if (!(k > 0.0)) throw std::invalid_argument("reputation strength kappa must be > 0");
  const double d = hi.defect_rate;
  const double e_i = hi.effectiveness.inspection;
  const double removal = 1.0 - e_i * d;
  if (removal <= 0.0) throw DegenerateChain("e_i d = 1: inspection scraps every unit");
  if (!(d > 0.0)) throw std::invalid_argument("defect rate must be > 0");

  const double x0 = hm.initial_volume;
  const double c_fix = hm.fixed.production;
  const double mon = hm.variable.production + hm.variable.monitoring;  // c_m + m
  const double ins = hi.variable.production + hi.variable.inspection;  // c_i + i
  return 1.0 + 1.0 / (k * d) + (c_fix + hm.fixed.monitoring) / (x0 * k * mon * d) -
         ((c_fix + hi.fixed.inspection) / x0 + ins) / (k * mon * removal * d) -
         ins * (1.0 - e_i) / (mon * removal * removal);
}

double em_crit_rescaled(Pair p, StrategySet set) {
  if (p == Pair::InspectionVsZero) {
    throw std::invalid_argument("no monitoring side in the inspection-zero pair");
  }
  const double n = set.stages();
  const double d = set.monitoring.defect_rate;
  set.monitoring.effectiveness.monitoring = 0.0;
  const StrategySet one = rescale(set, 1.0);
  const double e1 = p == Pair::MonitoringVsZero ? em_crit_vs_zero_N1_raw(one.monitoring)
                                                : em_crit_vs_inspection_N1(one);
  if (std::isnan(e1)) return e1;
  const double residual = (1.0 - e1) * one.monitoring.defect_rate;
  if (!(residual < 1.0)) return -std::numeric_limits<double>::infinity();
  // Same transform as rescale_monitoring_effectiveness, but dividing by the
  // known N-space d: recovering it from d1 ~ 1 loses most digits.
  return 1.0 + std::expm1(std::log1p(-residual) / n) / d;
}

double MaintenanceCosts::maintenance_gap() const { return (M - I) / initial_volume + m - i; }

double MaintenanceCosts::balance() const { return maintenance_gap() + c_m - c_i; }

MaintenanceCosts maintenance_costs(const StrategySet& set) {
  MaintenanceCosts k;
  k.stages = set.monitoring.stages;
  k.source_stages = static_cast<double>(set.monitoring.source_stages);
  k.initial_volume = set.monitoring.initial_volume;
  k.kappa = set.monitoring.kappa();
  k.C = set.monitoring.fixed.production;
  k.M = set.monitoring.fixed.monitoring;
  k.I = set.inspection.fixed.inspection;
  k.c_m = set.monitoring.variable.production;
  k.c_i = set.inspection.variable.production;
  k.m = set.monitoring.variable.monitoring;
  k.i = set.inspection.variable.inspection;
  return k;
}

double em_crit_taylor(const MaintenanceCosts& k, double e_i, double d) {
  require_kappa(k);
  const double mon = k.c_m + k.m;
  const double ins = k.c_i + k.i;
  const double n = k.stages;
  return 1.0 - ins * (1.0 - e_i) / mon -
         ((k.C + k.I) / k.initial_volume + half_factor(n) * ins) * e_i / (k.kappa * mon) +
         k.balance() / (k.kappa * mon * n * d);
}

double em_crit_at_d0(const MaintenanceCosts& k, double e_i) {
  require_balance(k, "threshold at d = 0");
  require_kappa(k);
  const double mon = k.c_m + k.m;
  const double ins = k.c_i + k.i;
  return 1.0 - ins * (1.0 - e_i) / mon -
         ((k.C + k.I) / k.initial_volume + half_factor(k.source_stages) * ins) * e_i /
             (k.kappa * mon);
}

double max_em_crit(const MaintenanceCosts& k) { return em_crit_at_d0(k, 1.0); }

double ei_for_d0_threshold(const MaintenanceCosts& k, double target) {
  const double intercept = em_crit_at_d0(k, 0.0);
  const double slope = em_crit_at_d0(k, 1.0) - intercept;
  if (slope == 0.0) throw NoThreshold("threshold at d = 0 does not depend on e_i");
  return (target - intercept) / slope;
}

double kappa_min(const MaintenanceCosts& k) {
  require_gap_nonpositive(k, "minimal reputation strength");
  return ((k.C + k.I) / k.initial_volume + half_factor(k.source_stages) * (k.c_i + k.i)) /
         (k.c_m + k.m);
}

double ei_crit(const MaintenanceCosts& k, double d) {
  require_gap_positive(k, "critical inspection effectiveness");
  if (!(d > 0.0)) throw std::invalid_argument("defect rate must be > 0");
  const double x0 = k.initial_volume;
  const double ratio = (k.C + k.I + x0 * (k.c_i + k.i)) / (k.C + k.M + x0 * (k.c_m + k.m));
  return (1.0 - ratio) / d;
}

double kappa_crit(const MaintenanceCosts& k) {
  require_gap_positive(k, "critical reputation strength");
  return (k.C + k.I) / (k.initial_volume * (k.c_i + k.i)) + half_factor(k.source_stages);
}

std::string_view to_string(Field f) {
  switch (f) {
    case Field::Uncertainty: return "uncertainty";
    case Field::MonitoringSuperiority: return "monitoring_superiority";
    case Field::Avoidance: return "avoidance";
  }
  return "uncertainty";
}

RegimeBounds regime_bounds(const StrategySet& set, double e_m, double e_i,
                           const SolveSettings& settings) {
  settings.validate();
  auto margin = [&](double d) {
    const StrategySet s = with_state(set, d, e_m, e_i);
    const double mon = unit_cost_monitoring(s.monitoring);
    double best = unit_cost_zero(s.zero);
    try {
      best = std::min(best, unit_cost_inspection(s.inspection));
    } catch (const DegenerateChain&) {
    }
    return mon - best;
  };

  std::vector<double> xs{0.0};
  const auto grid = scan_points({1e-6, 1.0}, 4 * settings.scan_samples);
  xs.insert(xs.end(), grid.begin(), grid.end());
  std::vector<double> fs(xs.size());
  for (std::size_t k = 0; k < xs.size(); ++k) fs[k] = margin(xs[k]);

  auto wins = [&](std::size_t k) { return fs[k] <= 0.0; };
  std::size_t first = xs.size();
  std::size_t last = xs.size();
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (wins(k)) {
      if (first == xs.size()) first = k;
      last = k;
    }
  }
  RegimeBounds out;
  if (first == xs.size()) {
    out.empty = true;
    return out;
  }
  out.a = first == 0 ? 0.0
                     : solve_bracketed(margin, {xs[first - 1], xs[first], fs[first - 1], fs[first]},
                                       settings);
  out.b = last + 1 == xs.size()
              ? 1.0
              : solve_bracketed(margin, {xs[last], xs[last + 1], fs[last], fs[last + 1]}, settings);
  return out;
}

Field field_of(double d, const RegimeBounds& r) {
  if (d < r.a) return Field::Uncertainty;
  if (r.empty || d > r.b) return Field::Avoidance;
  return Field::MonitoringSuperiority;
}

RegimeClassification classify_regime(const StrategySet& set, double d, double e_m, double e_i,
                                     const SolveSettings& settings) {
  const RegimeBounds r = regime_bounds(set, e_m, e_i, settings);
  return {field_of(d, r), r.a, r.b, r.empty};
}

}  // namespace qmaint
