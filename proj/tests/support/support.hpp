#pragma once

// Fixtures shared by the unit tests and the acceptance binary: random
// chains, an independent two-state flow oracle and randomized checks of the
// critical-value properties.

#include <cstdint>
#include <random>
#include <string>

#include "qmaint/chain_model.hpp"
#include "qmaint/critical.hpp"

namespace qmaint::testing {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);

// Heterogeneous chain with n stages; rates in [0, 0.3], effectiveness in
// [0,1], costs spread over a few decades.
Chain random_chain(Rng& rng, std::size_t n);

// Expected good/bad counts carried stage by stage. Independent of the
// product forms in the library.
struct Flow {
  double sold = 0.0;
  double bad_sold = 0.0;
  double unit_cost = 0.0;
};
Flow expected_flow(const Chain& chain, Strategy s);

double relative_error(double got, double want);

// Whole-chain totals of a uniform chain; per-stage values are total / n.
struct Aggregates {
  double C = 0.0, M = 0.0, I = 0.0;
  double c = 0.0, m = 0.0, i = 0.0;
  double initial_volume = 1.0;
  double kappa = 1.0;
};
Aggregates ref50_aggregates();
// Each REF50 total scaled by a factor in [0.5, 1.5].
Aggregates perturbed_aggregates(Rng& rng);
Chain uniform_chain(const Aggregates& a, std::size_t n, double d, double e_m, double e_i);

// Largest relative deviation over a batch of random chains (n in [1, 20]).
struct Deviation {
  double max = 0.0;
  int cases = 0;
  std::string worst;  // description of the worst case
};
// Source-chain unit cost vs homogenized unit cost, each pure strategy,
// N in {1, n, 2n}.
Deviation homogenization_deviation(std::uint64_t seed, int chains);
// Stage-by-stage recursion vs the product forms for X_n and X_n bad.
Deviation oracle_deviation(std::uint64_t seed, int chains);

struct PropertyResult {
  std::string name;
  int draws = 0;
  int checked = 0;     // draws inside the property's domain
  int violations = 0;
  std::string detail;  // first violation, if any

  [[nodiscard]] bool ok() const { return checked > 0 && violations == 0; }
};

// em_crit vs zero falls with kappa and c, rises with M and m (where < 1).
PropertyResult threshold_monotonicity(std::uint64_t seed, int draws);
// The monitoring-superiority interval (a, b) narrows as n grows.
PropertyResult interval_shrinks(std::uint64_t seed, int draws);
// One positive minimum over (d_min, 1); minimum moves < 2% from n=50 to 500.
PropertyResult single_minimum(std::uint64_t seed, int draws);
// With equal per-stage costs the vs-inspection curve peaks at d -> 0.
PropertyResult peak_at_zero(std::uint64_t seed, int draws);
// Curves ordered by (M - I)/X0 + m - i never cross.
PropertyResult no_crossing(std::uint64_t seed, int draws);
// For (M - I)/X0 + m - i <= 0 the value rises with kappa and e_i.
PropertyResult kappa_ei_rise(std::uint64_t seed, int draws);

}  // namespace qmaint::testing
