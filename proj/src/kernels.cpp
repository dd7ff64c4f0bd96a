// Grid kernels. Every cell is computed independently and written to its own
// slot, so the parallel and serial versions produce identical bits.

#include <cstddef>
#include <vector>

#include "grid_kernels.hpp"
#include "qmaint/solver.hpp"

namespace qmaint {

namespace {

CriticalCurve empty_curve(const CriticalQuery& q, const std::vector<double>& d_grid,
                          Method method, const SolveSettings& settings) {
  settings.validate();
  detail::require_d_grid(d_grid);
  CriticalCurve curve;
  curve.pair = q.pair;
  curve.method = method;
  curve.stages = q.h.stages();
  curve.points.resize(d_grid.size());
  return curve;
}

SuperioritySurface empty_surface(const CriticalQuery& q, const std::vector<double>& d_grid,
                                 const std::vector<double>& e_i_grid,
                                 const SolveSettings& settings) {
  settings.validate();
  detail::require_d_grid(d_grid);
  detail::require_e_i_grid(e_i_grid);
  SuperioritySurface s;
  s.d_grid = d_grid;
  s.e_i_grid = e_i_grid;
  s.stages = q.h.stages();
  s.cells.resize(d_grid.size() * e_i_grid.size());
  return s;
}

}  // namespace

CriticalCurve trace_critical_curve(const CriticalQuery& q, const std::vector<double>& d_grid,
                                   Method method, const SolveSettings& settings) {
  CriticalCurve curve = empty_curve(q, d_grid, method, settings);
  const auto n = static_cast<std::ptrdiff_t>(d_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto u = static_cast<std::size_t>(k);
    curve.points[u] = critical_point(q, d_grid[u], method, settings);
  }
  return curve;
}

SuperioritySurface superiority_surface(const CriticalQuery& q, const std::vector<double>& d_grid,
                                       const std::vector<double>& e_i_grid,
                                       const SolveSettings& settings, Method method) {
  SuperioritySurface s = empty_surface(q, d_grid, e_i_grid, settings);
  const auto cols = e_i_grid.size();
  const auto n = static_cast<std::ptrdiff_t>(s.cells.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto u = static_cast<std::size_t>(k);
    s.cells[u] = detail::surface_cell(q, d_grid[u / cols], e_i_grid[u % cols], method, settings);
  }
  return s;
}

namespace serial {

CriticalCurve trace_critical_curve(const CriticalQuery& q, const std::vector<double>& d_grid,
                                   Method method, const SolveSettings& settings) {
  CriticalCurve curve = empty_curve(q, d_grid, method, settings);
  for (std::size_t k = 0; k < d_grid.size(); ++k) {
    curve.points[k] = critical_point(q, d_grid[k], method, settings);
  }
  return curve;
}

SuperioritySurface superiority_surface(const CriticalQuery& q, const std::vector<double>& d_grid,
                                       const std::vector<double>& e_i_grid,
                                       const SolveSettings& settings, Method method) {
  SuperioritySurface s = empty_surface(q, d_grid, e_i_grid, settings);
  for (std::size_t k = 0; k < d_grid.size(); ++k) {
    for (std::size_t j = 0; j < e_i_grid.size(); ++j) {
      s.cells[k * e_i_grid.size() + j] =
          detail::surface_cell(q, d_grid[k], e_i_grid[j], method, settings);
    }
  }
  return s;
}

}  // namespace serial

}  // namespace qmaint
