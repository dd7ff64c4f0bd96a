#include "qmaint/homogenization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "qmaint/errors.hpp"

namespace qmaint {

namespace {

void require_stages(double n) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw std::invalid_argument("virtual stage count N must be positive, got " +
                                std::to_string(n));
  }
}

// log(1 - x) for x in [0,1]; -inf at x = 1.
double log1m(double x) { return std::log1p(-x); }

// 1 - exp(L / N): the per-stage rate whose N-fold product has logarithm L.
double rate_from_log(double log_product, double stages) {
  return -std::expm1(log_product / stages);
}

// (1 - (1 - x)^N) / x, with its x -> 0 limit N.
double growth(double x, double stages) {
  if (x == 0.0) return stages;
  return -std::expm1(stages * log1m(x)) / x;
}

struct ConservedLogs {
  double defect = 0.0;    // log prod (1 - d)
  double good = 0.0;      // log prod (1 - (1 - e_m) d)
  double survival = 0.0;  // log prod (1 - e_i (1 - e_m) d)
};

// Per-stage rates and effectiveness recovered from conserved products.
struct RecoveredRates {
  double defect_rate = 0.0;
  double residual_rate = 0.0;  // (1 - e_m) d
  double removal_rate = 0.0;   // e_i (1 - e_m) d
  Effectiveness effectiveness;
};

RecoveredRates recover(const ConservedLogs& logs, double stages) {
  RecoveredRates r;
  r.defect_rate = rate_from_log(logs.defect, stages);
  r.residual_rate = rate_from_log(logs.good, stages);
  r.removal_rate = rate_from_log(logs.survival, stages);

  if (r.defect_rate > 0.0) {
    r.effectiveness.monitoring = 1.0 - r.residual_rate / r.defect_rate;
  } else if (r.residual_rate != 0.0) {
    throw UndefinedEffectiveness("monitoring effectiveness: zero defect rate with residual defects");
  }
  if (r.residual_rate > 0.0) {
    r.effectiveness.inspection = r.removal_rate / r.residual_rate;
  } else if (r.removal_rate != 0.0) {
    throw UndefinedEffectiveness("inspection effectiveness: no residual defects but removals");
  }
  // Rounding can push the ratios a few ulps outside [0,1].
  r.effectiveness.monitoring = std::clamp(r.effectiveness.monitoring, 0.0, 1.0);
  r.effectiveness.inspection = std::clamp(r.effectiveness.inspection, 0.0, 1.0);
  return r;
}

double power_of(double base_rate, double stages) { return std::exp(stages * log1m(base_rate)); }

}  // namespace

double HomogenizedChain::log_defect_product() const { return stages * log1m(defect_rate); }

double HomogenizedChain::log_good_product() const {
  return stages * log1m((1.0 - effectiveness.monitoring) * defect_rate);
}

double HomogenizedChain::log_survival_product() const {
  return stages *
         log1m(effectiveness.inspection * (1.0 - effectiveness.monitoring) * defect_rate);
}

void HomogenizedChain::validate() const {
  require_stages(stages);
  StageParams as_stage;
  as_stage.defect_rate = defect_rate;
  as_stage.effectiveness = effectiveness;
  as_stage.variable = variable;
  as_stage.fixed = fixed;
  as_stage.validate();
  reputation.validate();
  if (!std::isfinite(initial_volume) || initial_volume <= 0.0) {
    throw std::invalid_argument("initial volume X0 must be positive and finite");
  }
  if (source_stages == 0) throw std::invalid_argument("source stage count must be >= 1");
}

HomogenizedChain homogenize(const Chain& chain, Strategy s, double stages) {
  require_stages(stages);
  const Chain masked = chain.masked(s);

  ConservedLogs logs;
  CostTriple fixed_sum;
  CostTriple weighted;  // sum_j v_j prod_{k<j} (1 - e_ik (1 - e_mk) d_k)
  double prefix = 1.0;
  for (const auto& st : masked.stages()) {
    const double d = st.defect_rate;
    const double residual = (1.0 - st.effectiveness.monitoring) * d;
    const double removal = st.effectiveness.inspection * residual;
    logs.defect += log1m(d);
    logs.good += log1m(residual);
    logs.survival += log1m(removal);

    fixed_sum.production += st.fixed.production;
    fixed_sum.monitoring += st.fixed.monitoring;
    fixed_sum.inspection += st.fixed.inspection;
    weighted.production += st.variable.production * prefix;
    weighted.monitoring += st.variable.monitoring * prefix;
    weighted.inspection += st.variable.inspection * prefix;
    prefix *= 1.0 - removal;
  }

  const RecoveredRates r = recover(logs, stages);

  HomogenizedChain h;
  h.stages = stages;
  h.defect_rate = r.defect_rate;
  h.effectiveness = r.effectiveness;
  h.fixed = {fixed_sum.production / stages, fixed_sum.monitoring / stages,
             fixed_sum.inspection / stages};
  // v(N) = S_v * x / (1 - (1 - x)^N), x the homogenized removal rate.
  const double spread = 1.0 / growth(r.removal_rate, stages);
  h.variable = {weighted.production * spread, weighted.monitoring * spread,
                weighted.inspection * spread};
  h.initial_volume = chain.initial_volume();
  h.reputation = chain.reputation();
  h.source_stages = chain.size();
  h.strategy = s;
  return h;
}

double unit_cost_general(const HomogenizedChain& h) {
  const double n = h.stages;
  const double x = h.effectiveness.inspection * (1.0 - h.effectiveness.monitoring) * h.defect_rate;
  const double survival = power_of(x, n);
  if (survival < kDegenerateSurvival) {
    throw DegenerateChain("homogenized survival product vanished; unit cost undefined");
  }
  const double good = power_of((1.0 - h.effectiveness.monitoring) * h.defect_rate, n);
  return n * h.fixed.total() / (h.initial_volume * survival) +
         h.variable.total() * growth(x, n) / survival *
             (1.0 + h.kappa() * (survival - good) / survival);
}

double unit_cost_inspection(const HomogenizedChain& h) {
  const double n = h.stages;
  const double x = h.effectiveness.inspection * h.defect_rate;
  const double survival = power_of(x, n);
  if (survival < kDegenerateSurvival) {
    throw DegenerateChain("inspection removes every unit; unit cost undefined");
  }
  const double good = power_of(h.defect_rate, n);
  return n * (h.fixed.production + h.fixed.inspection) / (h.initial_volume * survival) +
         (1.0 + h.kappa() * (survival - good) / survival) *
             (h.variable.production + h.variable.inspection) * growth(x, n) / survival;
}

double unit_cost_monitoring(const HomogenizedChain& h) {
  const double n = h.stages;
  const double good = power_of((1.0 - h.effectiveness.monitoring) * h.defect_rate, n);
  return n * (h.fixed.production + h.fixed.monitoring) / h.initial_volume +
         n * (h.variable.production + h.variable.monitoring) * (1.0 + h.kappa() * (1.0 - good));
}

double unit_cost_zero(const HomogenizedChain& h) {
  const double n = h.stages;
  const double good = power_of(h.defect_rate, n);
  return n * h.fixed.production / h.initial_volume +
         n * h.variable.production * (1.0 + h.kappa() * (1.0 - good));
}

double homogenized_unit_cost(const HomogenizedChain& h, Strategy s) {
  if (s != Strategy::General && s != h.strategy) {
    throw std::invalid_argument("homogenized chain was built under the '" +
                                std::string(to_string(h.strategy)) +
                                "' mask; re-homogenize the source chain for '" +
                                std::string(to_string(s)) + "'");
  }
  switch (s) {
    case Strategy::Zero: return unit_cost_zero(h);
    case Strategy::Inspection: return unit_cost_inspection(h);
    case Strategy::Monitoring: return unit_cost_monitoring(h);
    case Strategy::General: return unit_cost_general(h);
  }
  return unit_cost_general(h);
}

HomogenizedChain rescale(const HomogenizedChain& h, double target_stages) {
  require_stages(target_stages);
  require_stages(h.stages);
  if (target_stages == h.stages) return h;

  const ConservedLogs logs{h.log_defect_product(), h.log_good_product(),
                           h.log_survival_product()};
  const RecoveredRates r = recover(logs, target_stages);
  const double x_from =
      h.effectiveness.inspection * (1.0 - h.effectiveness.monitoring) * h.defect_rate;

  HomogenizedChain out = h;
  out.stages = target_stages;
  out.defect_rate = r.defect_rate;
  out.effectiveness = r.effectiveness;
  const double fixed_scale = h.stages / target_stages;
  out.fixed = {h.fixed.production * fixed_scale, h.fixed.monitoring * fixed_scale,
               h.fixed.inspection * fixed_scale};
  // The weighted variable sum v (1 - (1-x)^N) / x is conserved.
  const double variable_scale = growth(x_from, h.stages) / growth(r.removal_rate, target_stages);
  out.variable = {h.variable.production * variable_scale, h.variable.monitoring * variable_scale,
                  h.variable.inspection * variable_scale};
  return out;
}

double rescale_defect_rate(double d, double from_stages, double to_stages) {
  require_stages(from_stages);
  require_stages(to_stages);
  return rate_from_log(from_stages * log1m(d), to_stages);
}

double rescale_monitoring_effectiveness(double e_m, double d, double from_stages,
                                        double to_stages) {
  require_stages(from_stages);
  require_stages(to_stages);
  const double residual = (1.0 - e_m) * d;
  if (!(residual < 1.0)) return std::numeric_limits<double>::quiet_NaN();
  const double d_to = rate_from_log(from_stages * log1m(d), to_stages);
  if (d_to == 0.0) return e_m;
  const double residual_to = rate_from_log(from_stages * log1m(residual), to_stages);
  return 1.0 - residual_to / d_to;
}

TaylorError taylor_error(double gamma, double stages) {
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw std::invalid_argument("conserved product gamma must lie in (0,1]");
  }
  require_stages(stages);
  TaylorError out{gamma, stages, 0.0};
  // N = 1 is the identity case; the error vanishes exactly there.
  if (stages != 1.0) out.error = (gamma - 1.0) - stages * std::expm1(std::log(gamma) / stages);
  return out;
}

}  // namespace qmaint
