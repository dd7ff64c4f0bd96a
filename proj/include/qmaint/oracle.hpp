#pragma once

// Independent checks of the volume and cost formulas: the forward stage
// recursion for expected volumes, and a unit-level Monte Carlo realization
// of the same stage semantics.

#include <cstdint>
#include <vector>

#include "qmaint/chain_model.hpp"

namespace qmaint {

// Volumes after one stage. For the recursion these are expectations; for
// the simulation they are means over replications.
struct StageTrace {
  double sold = 0.0;       // X_k
  double defective = 0.0;  // X_k bad
  double removed = 0.0;    // removed by inspection at stage k
  double effective_defect_rate = 0.0;  // d_mk = (1 - e_mk) d_k
};

struct Volumes {
  double sold = 0.0;
  double defective = 0.0;
  std::vector<StageTrace> trace;  // one entry per stage
};

// Expected X_k and X_k bad stage by stage, without the closed products.
[[nodiscard]] Volumes recursive_volumes(const Chain& chain, Strategy s);

struct SimSettings {
  std::uint64_t replications = 30;
  std::uint64_t seed = 0;
  bool record_trace = false;
  double unit_budget = 1e10;  // max X0 * replications

  void validate() const;
};

struct ReplicationCounts {
  std::uint64_t sold = 0;
  std::uint64_t defective = 0;
};

struct SimResult {
  double sold_mean = 0.0;
  double defective_mean = 0.0;
  double sold_stderr = 0.0;  // sample standard deviation / sqrt(R); 0 for R = 1
  double defective_stderr = 0.0;
  std::uint64_t replications = 0;
  std::uint64_t seed = 0;
  std::vector<ReplicationCounts> per_replication;
  std::vector<StageTrace> trace;  // means over replications, if recorded
};

// Each unit in flow at stage k is hit with probability d_mk; a hit unit is
// (or stays) defective and is removed with probability e_ik. Randomness is a
// counter-based hash of (seed, replication, unit, stage), so results do not
// depend on the number of threads.
// Throws std::invalid_argument unless X0 is a whole number; Overflow if
// X0 * replications exceeds the unit budget.
[[nodiscard]] SimResult simulate(const Chain& chain, Strategy s, const SimSettings& settings);

// Variable and warranty cost rebuilt from simulated stage volumes:
// C_var = sum_j v_j X_{j-1}, C_wry = kappa (C_var / X_n) X_n bad. Needs a
// recorded trace.
struct EmpiricalCosts {
  double variable_cost = 0.0;
  double warranty_cost = 0.0;
};
[[nodiscard]] EmpiricalCosts empirical_costs(const Chain& chain, Strategy s, const SimResult& r);

// Uniform double in [0,1) from the counter-based generator.
[[nodiscard]] double counter_uniform(std::uint64_t seed, std::uint64_t replication,
                                     std::uint64_t unit, std::uint64_t counter);

namespace serial {
[[nodiscard]] SimResult simulate(const Chain& chain, Strategy s, const SimSettings& settings);
}

}  // namespace qmaint
