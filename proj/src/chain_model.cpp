#include "qmaint/chain_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qmaint/errors.hpp"

namespace qmaint {

namespace {

void require_fraction(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " +
                                std::to_string(v));
  }
}

void require_cost(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    throw std::invalid_argument(std::string(what) + " must be finite and >= 0, got " +
                                std::to_string(v));
  }
}

// Per-stage factor of the sold-volume product, 1 - e_i (1 - e_m) d.
double survival_factor(const StageParams& s) {
  return 1.0 - s.effectiveness.inspection * (1.0 - s.effectiveness.monitoring) * s.defect_rate;
}

// Per-stage factor of the good-volume product, 1 - (1 - e_m) d.
double good_factor(const StageParams& s) {
  return 1.0 - (1.0 - s.effectiveness.monitoring) * s.defect_rate;
}

struct Products {
  double survival = 1.0;  // Theta_C
  double good = 1.0;      // prod (1 - (1 - e_m) d)
  double weighted_variable = 0.0;  // sum_j v_j prod_{k<j} survival_k
  double fixed = 0.0;
};

Products accumulate(std::span<const StageParams> stages) {
  Products p;
  for (const auto& s : stages) {
    p.fixed += s.fixed.total();
    p.weighted_variable += s.variable.total() * p.survival;
    p.survival *= survival_factor(s);
    p.good *= good_factor(s);
  }
  return p;
}

}  // namespace

void StageParams::validate() const {
  require_fraction(defect_rate, "defect rate d");
  require_fraction(effectiveness.monitoring, "monitoring effectiveness e_m");
  require_fraction(effectiveness.inspection, "inspection effectiveness e_i");
  require_cost(variable.production, "variable production cost c");
  require_cost(variable.monitoring, "variable monitoring cost m");
  require_cost(variable.inspection, "variable inspection cost i");
  require_cost(fixed.production, "fixed production cost C");
  require_cost(fixed.monitoring, "fixed monitoring cost M");
  require_cost(fixed.inspection, "fixed inspection cost I");
}

void Reputation::validate() const {
  require_fraction(alpha, "return rate alpha");
  require_cost(beta, "premium beta");
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Zero: return "zero";
    case Strategy::Inspection: return "inspection";
    case Strategy::Monitoring: return "monitoring";
    case Strategy::General: return "general";
  }
  return "general";
}

Strategy parse_strategy(std::string_view name) {
  for (auto s : {Strategy::Zero, Strategy::Inspection, Strategy::Monitoring, Strategy::General}) {
    if (name == to_string(s)) return s;
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

StageParams apply_mask(const StageParams& stage, Strategy s) {
  StageParams out = stage;
  const bool keep_monitoring = s == Strategy::Monitoring || s == Strategy::General;
  const bool keep_inspection = s == Strategy::Inspection || s == Strategy::General;
  if (!keep_monitoring) {
    out.effectiveness.monitoring = 0.0;
    out.variable.monitoring = 0.0;
    out.fixed.monitoring = 0.0;
  }
  if (!keep_inspection) {
    out.effectiveness.inspection = 0.0;
    out.variable.inspection = 0.0;
    out.fixed.inspection = 0.0;
  }
  return out;
}

Chain::Chain(std::vector<StageParams> stages, double initial_volume, Reputation reputation)
    : stages_(std::move(stages)), initial_volume_(initial_volume), reputation_(reputation) {
  if (stages_.empty()) throw std::invalid_argument("chain needs at least one stage");
  if (!std::isfinite(initial_volume_) || initial_volume_ <= 0.0) {
    throw std::invalid_argument("initial volume X0 must be positive and finite");
  }
  for (const auto& s : stages_) s.validate();
  reputation_.validate();
}

Chain Chain::uniform(std::size_t n, const StageParams& stage, double initial_volume,
                     Reputation reputation) {
  return Chain(std::vector<StageParams>(n, stage), initial_volume, reputation);
}

Chain Chain::masked(Strategy s) const {
  std::vector<StageParams> out;
  out.reserve(stages_.size());
  for (const auto& st : stages_) out.push_back(apply_mask(st, s));
  return Chain(std::move(out), initial_volume_, reputation_);
}

double sold_volume(const Chain& chain, Strategy s) {
  double survival = 1.0;
  for (const auto& st : chain.stages()) survival *= survival_factor(apply_mask(st, s));
  return chain.initial_volume() * survival;
}

double defective_sold_volume(const Chain& chain, Strategy s) {
  double survival = 1.0;
  double good = 1.0;
  for (const auto& raw : chain.stages()) {
    const auto st = apply_mask(raw, s);
    survival *= survival_factor(st);
    good *= good_factor(st);
  }
  return chain.initial_volume() * (survival - good);
}

CostBreakdown cost_breakdown(const Chain& chain, Strategy s) {
  const Chain masked = chain.masked(s);
  const Products p = accumulate(masked.stages());
  if (p.survival < kDegenerateSurvival) {
    throw DegenerateChain("survival product Theta_C vanished; unit cost undefined");
  }
  const double x0 = chain.initial_volume();
  const double kappa = chain.kappa();

  CostBreakdown out;
  out.survival = p.survival;
  out.sold_volume = x0 * p.survival;
  out.defective_volume = x0 * (p.survival - p.good);
  out.fixed_cost = p.fixed;
  out.variable_cost = x0 * p.weighted_variable;
  out.warranty_cost = kappa * (out.variable_cost / out.sold_volume) * out.defective_volume;
  out.total_cost = out.fixed_cost + out.variable_cost + out.warranty_cost;
  out.unit_cost = p.fixed / (x0 * p.survival) +
                  (p.weighted_variable / p.survival) *
                      (1.0 + kappa * (p.survival - p.good) / p.survival);
  return out;
}

double unit_cost_inspection(const Chain& chain) {
  double fixed = 0.0;
  double weighted = 0.0;
  double survival = 1.0;
  double good = 1.0;
  for (const auto& s : chain.stages()) {
    fixed += s.fixed.production + s.fixed.inspection;
    weighted += (s.variable.production + s.variable.inspection) * survival;
    survival *= 1.0 - s.effectiveness.inspection * s.defect_rate;
    good *= 1.0 - s.defect_rate;
  }
  if (survival < kDegenerateSurvival) {
    throw DegenerateChain("inspection removes every unit; unit cost undefined");
  }
  const double kappa = chain.kappa();
  return fixed / (chain.initial_volume() * survival) +
         (weighted / survival) * (1.0 + kappa * (survival - good) / survival);
}

double unit_cost_monitoring(const Chain& chain) {
  double fixed = 0.0;
  double variable = 0.0;
  double good = 1.0;
  for (const auto& s : chain.stages()) {
    fixed += s.fixed.production + s.fixed.monitoring;
    variable += s.variable.production + s.variable.monitoring;
    good *= 1.0 - (1.0 - s.effectiveness.monitoring) * s.defect_rate;
  }
  return fixed / chain.initial_volume() + variable * (1.0 + chain.kappa() * (1.0 - good));
}

double unit_cost_zero(const Chain& chain) {
  double fixed = 0.0;
  double variable = 0.0;
  double good = 1.0;
  for (const auto& s : chain.stages()) {
    fixed += s.fixed.production;
    variable += s.variable.production;
    good *= 1.0 - s.defect_rate;
  }
  return fixed / chain.initial_volume() + variable * (1.0 + chain.kappa() * (1.0 - good));
}

StageParams ref50_stage(double defect_rate, double monitoring, double inspection) {
  StageParams s;
  s.defect_rate = defect_rate;
  s.effectiveness = {monitoring, inspection};
  s.variable = {10.0, 1.0, 1.0};
  s.fixed = {5e4, 1e4, 1e4};
  return s;
}

Chain ref50(double defect_rate, double monitoring, double inspection) {
  return Chain::uniform(kRef50Stages, ref50_stage(defect_rate, monitoring, inspection),
                        kRef50InitialVolume, Reputation{0.5, 1.0});
}

}  // namespace qmaint
