#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "qsdlab/errors.hpp"
#include "qsdlab/time_grid.hpp"

namespace qsdlab {

namespace detail {
inline double max_abs(const std::complex<double>& v) { return std::abs(v); }
template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& v) {
    return v.cwiseAbs().maxCoeff();
}
}  // namespace detail

/// Magnitude above which integration aborts with NumericalBlowup.
inline constexpr double kBlowupThreshold = 1e12;

/// Classical fixed-step RK4 over the nodes of `grid`.
///
/// `deriv(k, t, y)` evaluates the right-hand side; `k` indexes the grid's
/// half lattice (stages of step i hit k = 2i, 2i+1, 2i+2), so tabulated
/// stage data is looked up by index, never interpolated. Returns the
/// solution at every node, y[0] = y0.
template <class State, class Deriv>
std::vector<State> rk4_integrate(Deriv&& deriv, const State& y0, const TimeGrid& grid) {
    std::vector<State> out;
    out.reserve(grid.node_count());
    out.push_back(y0);
    State y = y0;
    const double h = grid.dt;
    for (int i = 0; i < grid.n_steps; ++i) {
        const int k = 2 * i;
        const double t = grid.node_time(i);
        State k1 = deriv(k, t, y);
        State k2 = deriv(k + 1, t + 0.5 * h, State(y + 0.5 * h * k1));
        State k3 = deriv(k + 1, t + 0.5 * h, State(y + 0.5 * h * k2));
        State k4 = deriv(k + 2, t + h, State(y + h * k3));
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double m = detail::max_abs(y);
        if (!std::isfinite(m) || m > kBlowupThreshold)
            throw NumericalBlowup(t + h, "rk4_integrate: state magnitude " + std::to_string(m));
        out.push_back(y);
    }
    return out;
}

}  // namespace qsdlab
