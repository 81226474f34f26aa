#pragma once

#include <vector>

#include "qsdlab/linalg.hpp"
#include "qsdlab/time_grid.hpp"

namespace qsdlab {

/// R[g,h](t) = int_0^t exp(int_u^t g(s) ds) h(u) du, evaluated at grid nodes.
///
/// Computed by integrating Rdot = g(t) R + h(t), R(0) = 0 with RK4 (the ODE
/// obtained by differentiating the definition). `g` and `h` must be sampled
/// on the half lattice of `grid` (size grid.half_count()).
std::vector<Complex> cumulative_exp_integral(const std::vector<Complex>& g,
                                             const std::vector<Complex>& h,
                                             const TimeGrid& grid);

/// Cumulative Simpson integral of half-lattice samples, returned at nodes.
/// values has grid.half_count() entries; out[i] = int_{t0}^{t_i} f.
std::vector<Complex> cumulative_simpson(const std::vector<Complex>& values, const TimeGrid& grid);

}  // namespace qsdlab
