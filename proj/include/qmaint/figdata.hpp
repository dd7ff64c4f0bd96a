#pragma once

// Data series behind figures 2-8, one table per figure. The chain's own
// operating point (d, e_m, e_i at N = n) supplies whatever a figure does not
// sweep.
//
//   fig2  d,series,e_m,c_u          monitoring cost for e_m in {0.2..1.0}, plus zero
//   fig3  d,e_m,delta_c_u           c_u(monitoring) - c_u(zero)
//   fig4  kappa,method,d,value,status   monitoring vs zero curves, kappa in {0.2, 1, 4}
//   fig5  d,strategy,c_u            the three pure strategies
//   fig6  d,e_i,em_crit,dominant_strategy   monitoring vs inspection surface
//   fig7  space,kappa,M,d,value,status      monitoring vs inspection at e_i = 0.8
//   fig8  e_m,a,b,empty             regime boundaries against e_m

#include <string>

#include "qmaint/chain_model.hpp"
#include "qmaint/csv.hpp"
#include "qmaint/roots.hpp"

namespace qmaint {

inline constexpr int kFirstFigure = 2;
inline constexpr int kLastFigure = 8;

struct FigureData {
  std::string name;  // "fig2" ... "fig8"
  Table table;
  bool solver_failed = false;
};

// Throws std::invalid_argument for a figure outside 2..8.
[[nodiscard]] FigureData figure_data(int figure, const Chain& chain,
                                     const SolveSettings& settings);

}  // namespace qmaint
