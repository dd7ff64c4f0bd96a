#pragma once

#include <vector>

#include "qmaint/solver.hpp"

namespace qmaint::detail {

void require_d_grid(const std::vector<double>& d_grid);
void require_e_i_grid(const std::vector<double>& e_i_grid);

SurfaceCell surface_cell(const CriticalQuery& q, double d, double e_i, Method method,
                         const SolveSettings& settings);

}  // namespace qmaint::detail
