#pragma once

// Canonical transformation of a heterogeneous chain into N identical virtual
// stages. Sold volume, defective volume and total cost are preserved, so the
// homogeneous unit cost equals the heterogeneous one for every N > 0.

#include <cstddef>

#include "qmaint/chain_model.hpp"

namespace qmaint {

struct HomogenizedChain {
  double stages = 1.0;  // N, a positive real
  double defect_rate = 0.0;
  Effectiveness effectiveness;
  CostTriple variable;  // per virtual stage
  CostTriple fixed;     // per virtual stage
  double initial_volume = 1.0;
  Reputation reputation;
  std::size_t source_stages = 1;  // n of the chain it came from
  Strategy strategy = Strategy::General;  // mask applied before homogenizing

  [[nodiscard]] double kappa() const { return reputation.kappa(); }

  // (1 - d)^N, (1 - (1 - e_m) d)^N and (1 - e_i (1 - e_m) d)^N, as logarithms.
  [[nodiscard]] double log_defect_product() const;
  [[nodiscard]] double log_good_product() const;
  [[nodiscard]] double log_survival_product() const;

  void validate() const;
};

// Masks the chain with `s`, then applies the homogenization formulas. 0/0
// effectiveness (no defects reach the stage) resolves to 0, and variable
// costs then spread evenly (sum v_j / N).
// Throws std::invalid_argument for N <= 0; UndefinedEffectiveness if a
// denominator vanishes while its numerator does not.
[[nodiscard]] HomogenizedChain homogenize(const Chain& chain, Strategy s, double stages);

// General homogeneous unit cost for `s == General`; the strategy-specific
// forms otherwise. `s` must be General or the mask `h` was built with.
// Throws DegenerateChain if (1 - e_i (1 - e_m) d)^N vanishes.
[[nodiscard]] double homogenized_unit_cost(const HomogenizedChain& h, Strategy s);

[[nodiscard]] double unit_cost_general(const HomogenizedChain& h);
[[nodiscard]] double unit_cost_inspection(const HomogenizedChain& h);
[[nodiscard]] double unit_cost_monitoring(const HomogenizedChain& h);
[[nodiscard]] double unit_cost_zero(const HomogenizedChain& h);

// Moves a homogenized chain to another virtual stage count without going back
// to the source chain. Conserved products and cost totals are preserved.
[[nodiscard]] HomogenizedChain rescale(const HomogenizedChain& h, double target_stages);

// Rescaling of a single defect rate between stage counts.
[[nodiscard]] double rescale_defect_rate(double d, double from_stages, double to_stages);

// Rescaling of a monitoring effectiveness that sits at defect rate `d`
// (given in the `from_stages` space). Works for values outside [0,1] as long
// as 1 - (1 - e_m) d stays positive; returns NaN otherwise.
[[nodiscard]] double rescale_monitoring_effectiveness(double e_m, double d, double from_stages,
                                                      double to_stages);

struct TaylorError {
  double gamma = 1.0;
  double stages = 1.0;
  double error = 0.0;
};

// First-order Taylor error of the power-law term for a conserved product
// gamma: gamma - 1 + N (1 - gamma^(1/N)). Requires 0 < gamma <= 1, N > 0.
[[nodiscard]] TaylorError taylor_error(double gamma, double stages);

}  // namespace qmaint
