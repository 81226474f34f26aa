#pragma once

#include <cmath>

#include "qsdlab/errors.hpp"

namespace qsdlab {

/// Uniform time lattice for fixed-step integration.
///
/// A grid with step `dt` carries two aligned lattices:
///   nodes       t0 + i*dt,    i = 0..n_steps          (integrator output)
///   half points t0 + k*dt/2,  k = 0..2*n_steps        (stage data for RK4)
/// Data consumed inside an RK4 step must be tabulated on the half lattice;
/// `refined()` produces the grid whose nodes are this grid's half lattice,
/// which is how each layer of the solve feeds the next one exact samples.
struct TimeGrid {
    double t0 = 0.0;
    double dt = 0.0;
    int n_steps = 0;

    TimeGrid() = default;
    TimeGrid(double t0_, double dt_, int n_steps_) : t0(t0_), dt(dt_), n_steps(n_steps_) {
        if (!(dt > 0.0) || n_steps < 1) throw InvalidSpec("TimeGrid: need dt > 0 and n_steps >= 1");
    }

    /// Grid from a duration, rounding n_steps to the nearest integer.
    static TimeGrid from_duration(double t0, double t_max, double dt) {
        if (!(dt > 0.0) || !(t_max > t0)) throw InvalidSpec("TimeGrid: need dt > 0 and t_max > t0");
        int n = static_cast<int>(std::lround((t_max - t0) / dt));
        return TimeGrid(t0, dt, n < 1 ? 1 : n);
    }

    int node_count() const { return n_steps + 1; }
    int half_count() const { return 2 * n_steps + 1; }

    double node_time(int i) const { return t0 + i * dt; }
    double half_time(int k) const { return t0 + 0.5 * k * dt; }
    double t_end() const { return t0 + n_steps * dt; }

    /// Grid with half the step; its nodes coincide with this grid's half lattice.
    TimeGrid refined() const { return TimeGrid(t0, 0.5 * dt, 2 * n_steps); }

    /// Inverse of refined(). Requires an even step count.
    TimeGrid coarsened() const {
        if (n_steps % 2 != 0) throw GridMismatch("TimeGrid::coarsened: odd n_steps");
        return TimeGrid(t0, 2.0 * dt, n_steps / 2);
    }

    bool operator==(const TimeGrid& o) const {
        return t0 == o.t0 && dt == o.dt && n_steps == o.n_steps;
    }
    bool operator!=(const TimeGrid& o) const { return !(*this == o); }
};

}  // namespace qsdlab
