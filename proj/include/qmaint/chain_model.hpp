#pragma once

// Heterogeneous n-stage production chain: expected sold and defective
// volumes and the unit cost per sold product under each maintenance strategy.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace qmaint {

// Theta_C below this is treated as zero (all output scrapped).
inline constexpr double kDegenerateSurvival = 1e-300;

struct Effectiveness {
  double monitoring = 0.0;  // e_m
  double inspection = 0.0;  // e_i
};

// One cost coefficient per activity; used for both the per-unit (variable)
// and per-stage (fixed) cost families.
struct CostTriple {
  double production = 0.0;
  double monitoring = 0.0;
  double inspection = 0.0;

  [[nodiscard]] double total() const { return production + monitoring + inspection; }
};

struct StageParams {
  double defect_rate = 0.0;  // d_k
  Effectiveness effectiveness;
  CostTriple variable;  // c_k, m_k, i_k
  CostTriple fixed;     // C_k, M_k, I_k

  // Throws std::invalid_argument when a rate leaves [0,1] or a cost is
  // negative or non-finite.
  void validate() const;
};

struct Reputation {
  double alpha = 0.0;  // return rate of sold defectives, [0,1]
  double beta = 0.0;   // premium over variable cost, >= 0

  // Warranty burden per sold defective; every formula depends only on this.
  [[nodiscard]] double kappa() const { return alpha * (1.0 + beta); }
  void validate() const;
};

enum class Strategy { Zero, Inspection, Monitoring, General };

[[nodiscard]] std::string_view to_string(Strategy s);
// Accepts "zero", "inspection", "monitoring", "general"; throws std::invalid_argument.
[[nodiscard]] Strategy parse_strategy(std::string_view name);

inline constexpr Strategy kPureStrategies[] = {Strategy::Zero, Strategy::Inspection,
                                               Strategy::Monitoring};

// Zeroes the parameters a pure strategy does not use. Idempotent.
[[nodiscard]] StageParams apply_mask(const StageParams& stage, Strategy s);

class Chain {
 public:
  Chain(std::vector<StageParams> stages, double initial_volume, Reputation reputation);

  static Chain uniform(std::size_t n, const StageParams& stage, double initial_volume,
                       Reputation reputation);

  [[nodiscard]] std::span<const StageParams> stages() const { return stages_; }
  [[nodiscard]] std::size_t size() const { return stages_.size(); }
  [[nodiscard]] double initial_volume() const { return initial_volume_; }
  [[nodiscard]] const Reputation& reputation() const { return reputation_; }
  [[nodiscard]] double kappa() const { return reputation_.kappa(); }

  [[nodiscard]] Chain masked(Strategy s) const;

 private:
  std::vector<StageParams> stages_;
  double initial_volume_;
  Reputation reputation_;
};

struct CostBreakdown {
  double fixed_cost = 0.0;        // C_fix
  double variable_cost = 0.0;     // C_var
  double warranty_cost = 0.0;     // C_wry
  double total_cost = 0.0;        // C_tot
  double sold_volume = 0.0;       // X_n
  double defective_volume = 0.0;  // X_n bad
  double survival = 0.0;          // Theta_C = X_n / X_0
  double unit_cost = 0.0;         // c_u = C_tot / X_n
};

[[nodiscard]] double sold_volume(const Chain& chain, Strategy s);
[[nodiscard]] double defective_sold_volume(const Chain& chain, Strategy s);

// Throws DegenerateChain when Theta_C < kDegenerateSurvival.
[[nodiscard]] CostBreakdown cost_breakdown(const Chain& chain, Strategy s);

// Strategy-specific unit-cost formulas. They read only the parameters the
// strategy uses, so they agree with cost_breakdown(chain, s).unit_cost.
[[nodiscard]] double unit_cost_inspection(const Chain& chain);
[[nodiscard]] double unit_cost_monitoring(const Chain& chain);
[[nodiscard]] double unit_cost_zero(const Chain& chain);

// REF50 reference set: 50 identical stages, X0 = 1e6, C = 5e4, c = 10,
// M = I = 1e4, m = i = 1, alpha = 0.5, beta = 1 (kappa = 1).
[[nodiscard]] StageParams ref50_stage(double defect_rate = 0.02, double monitoring = 0.8,
                                      double inspection = 0.8);
[[nodiscard]] Chain ref50(double defect_rate = 0.02, double monitoring = 0.8,
                          double inspection = 0.8);
inline constexpr std::size_t kRef50Stages = 50;
inline constexpr double kRef50InitialVolume = 1e6;

}  // namespace qmaint
