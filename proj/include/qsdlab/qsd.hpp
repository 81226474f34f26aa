#pragma once

#include <cstdint>
#include <vector>

#include "qsdlab/linalg.hpp"
#include "qsdlab/models.hpp"
#include "qsdlab/noise.hpp"
#include "qsdlab/time_grid.hpp"

namespace qsdlab {

/// A model solved against one noise realization, ready for integration.
///
/// Lattice layout relative to the trajectory grid (step dt):
///   noise samples     dt/8 spacing  (half lattice of noise.grid)
///   coefficients, z   dt/4 spacing  ("fine" lattice = nodes of noise.grid)
///   state marches     dt/2 step     (stages read the fine lattice)
///   recorded output   dt            (grid nodes)
/// Every consumer reads exact tabulated samples; nothing is interpolated.
struct SolvedModel {
    ModelSpec model;
    TimeGrid grid;    // trajectory grid
    NoisePath noise;  // on grid.refined().refined()
    ModelCoefficients coeffs;
    std::vector<Matrix> ldag_ops;  // L^dagger * op per O term

    int fine_count() const { return coeffs.grid.node_count(); }
    double fine_time(int j) const { return coeffs.grid.node_time(j); }
    /// z*_t at fine-lattice index j.
    Complex z_fine(int j) const { return noise.samples[2 * j]; }

    /// O(t) at fine-lattice index j.
    Matrix O_at(int j) const;
    /// H_eff = H_s + i L z*_t - i L^dagger O(t) at fine-lattice index j.
    void heff_into(int j, Matrix& out) const;
    Matrix heff_at(int j) const;
};

/// Noise path on the lattice required by solve_model for this trajectory grid.
NoisePath sample_model_noise(const ModelSpec& model, const TimeGrid& traj_grid,
                             std::uint64_t seed);

/// Solve the model's coefficient ODEs along `noise` (grid must be the
/// twice-refined trajectory grid, as produced by sample_model_noise).
SolvedModel solve_model(const ModelSpec& model, const NoisePath& noise);

enum class TrajectoryMethod { numeric, analytic };

/// Time series produced by one integration (states recorded at grid nodes).
struct TrajectoryRecord {
    TimeGrid grid;
    std::vector<Vector> right_states;       // psi(t); empty for left/propagator runs
    std::vector<Vector> left_states;        // psi~(t)
    std::vector<Matrix> propagators;        // U_z(t), U_z(0) = 1
    std::vector<double> norms;
    std::vector<std::vector<Complex>> coefficients;  // c_mu(t) per mode (analytic runs)
    TrajectoryMethod method = TrajectoryMethod::numeric;
};

/// Integrate d/dt psi = (-i H_s + L z* - L^dagger O) psi. Linear: no
/// normalization is ever applied, so norms carry ensemble weight.
TrajectoryRecord integrate_right_trajectory(const SolvedModel& sm, const Vector& psi0);

/// Integrate i d/dt psi~ = H_eff^dagger psi~.
TrajectoryRecord integrate_left_trajectory(const SolvedModel& sm, const Vector& psi_tilde0);

/// Integrate all columns simultaneously: U_z(0) = 1, each column obeys the
/// right-trajectory equation. Enables mixed-state ensembles via
/// rho(t) = M[U_z rho0 U_z^dagger].
TrajectoryRecord integrate_propagator(const SolvedModel& sm);

// Convenience overloads that solve the coefficients first.
TrajectoryRecord integrate_right_trajectory(const ModelSpec& model, const NoisePath& noise,
                                            const Vector& psi0, const TimeGrid& grid);
TrajectoryRecord integrate_left_trajectory(const ModelSpec& model, const NoisePath& noise,
                                           const Vector& psi_tilde0, const TimeGrid& grid);
TrajectoryRecord integrate_propagator(const ModelSpec& model, const NoisePath& noise,
                                      const TimeGrid& grid);

}  // namespace qsdlab
