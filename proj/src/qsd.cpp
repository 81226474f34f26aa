#include "qsdlab/qsd.hpp"

#include <cmath>

#include "qsdlab/errors.hpp"
#include "qsdlab/rk4.hpp"

namespace qsdlab {

Matrix SolvedModel::O_at(int j) const {
    Matrix O = Matrix::Zero(model.dim, model.dim);
    for (const auto& term : model.O_terms)
        O += coeffs.channel(term.channel)[j] * term.op;
    return O;
}

void SolvedModel::heff_into(int j, Matrix& out) const {
    out = model.H_s;
    out += (I_UNIT * z_fine(j)) * model.L;
    for (std::size_t c = 0; c < ldag_ops.size(); ++c)
        out -= (I_UNIT * coeffs.channel(model.O_terms[c].channel)[j]) * ldag_ops[c];
}

Matrix SolvedModel::heff_at(int j) const {
    Matrix H(model.dim, model.dim);
    heff_into(j, H);
    return H;
}

NoisePath sample_model_noise(const ModelSpec& model, const TimeGrid& traj_grid,
                             std::uint64_t seed) {
    return sample_ou_path(model.correlation, traj_grid.refined().refined(), seed);
}

SolvedModel solve_model(const ModelSpec& model, const NoisePath& noise) {
    model.validate();
    if (noise.grid.n_steps % 4 != 0)
        throw GridMismatch("solve_model: noise grid must be the twice-refined trajectory grid");
    SolvedModel sm;
    sm.model = model;
    sm.grid = noise.grid.coarsened().coarsened();
    sm.noise = noise;
    sm.coeffs = model.solve_coefficients(noise);
    const Matrix ldag = model.L.adjoint();
    sm.ldag_ops.reserve(model.O_terms.size());
    for (const auto& term : model.O_terms) sm.ldag_ops.push_back(ldag * term.op);
    return sm;
}

namespace {

enum class Side { right, left };

// March d/dt X = -i H X (right) or -i H^dagger X (left) at step dt/2 over the
// mid lattice, recording every second state (the grid nodes). Stage data sits
// on the fine lattice; mid step k uses fine indices 2k, 2k+1, 2k+2.
std::vector<Matrix> march(const SolvedModel& sm, Matrix x0, Side side) {
    const TimeGrid mid = sm.grid.refined();
    const double h = mid.dt;
    const int d = sm.model.dim;
    if (x0.rows() != d) throw GridMismatch("trajectory: initial state dimension mismatch");

    std::vector<Matrix> out;
    out.reserve(sm.grid.node_count());
    out.push_back(x0);

    const Eigen::Index cols = x0.cols();
    Matrix H(d, d);
    Matrix k1(d, cols), k2(d, cols), k3(d, cols), k4(d, cols), stage(d, cols);
    Matrix x = std::move(x0);
    auto deriv = [&](int fine, const Matrix& v, Matrix& dv) {
        sm.heff_into(fine, H);
        if (side == Side::right)
            dv.noalias() = Complex(0, -1) * (H * v);
        else
            dv.noalias() = Complex(0, -1) * (H.adjoint() * v);
    };
    for (int k = 0; k < mid.n_steps; ++k) {
        const int fine = 2 * k;
        deriv(fine, x, k1);
        stage.noalias() = x + (0.5 * h) * k1;
        deriv(fine + 1, stage, k2);
        stage.noalias() = x + (0.5 * h) * k2;
        deriv(fine + 1, stage, k3);
        stage.noalias() = x + h * k3;
        deriv(fine + 2, stage, k4);
        x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double m = x.cwiseAbs().maxCoeff();
        if (!std::isfinite(m) || m > kBlowupThreshold)
            throw NumericalBlowup(mid.node_time(k + 1), "trajectory state magnitude " + std::to_string(m));
        if (k % 2 == 1) out.push_back(x);
    }
    return out;
}

std::vector<double> norms_of(const std::vector<Matrix>& states) {
    std::vector<double> norms;
    norms.reserve(states.size());
    for (const auto& s : states) norms.push_back(s.norm());
    return norms;
}

}  // namespace

TrajectoryRecord integrate_right_trajectory(const SolvedModel& sm, const Vector& psi0) {
    if (psi0.cwiseAbs().maxCoeff() > kBlowupThreshold)
        throw NumericalBlowup(sm.grid.t0, "initial state magnitude out of range");
    TrajectoryRecord rec;
    rec.grid = sm.grid;
    rec.method = TrajectoryMethod::numeric;
    auto states = march(sm, psi0, Side::right);
    rec.norms = norms_of(states);
    rec.right_states.reserve(states.size());
    for (auto& s : states) rec.right_states.emplace_back(std::move(s));
    return rec;
}

TrajectoryRecord integrate_left_trajectory(const SolvedModel& sm, const Vector& psi_tilde0) {
    TrajectoryRecord rec;
    rec.grid = sm.grid;
    rec.method = TrajectoryMethod::numeric;
    auto states = march(sm, psi_tilde0, Side::left);
    rec.norms = norms_of(states);
    rec.left_states.reserve(states.size());
    for (auto& s : states) rec.left_states.emplace_back(std::move(s));
    return rec;
}

TrajectoryRecord integrate_propagator(const SolvedModel& sm) {
    TrajectoryRecord rec;
    rec.grid = sm.grid;
    rec.method = TrajectoryMethod::numeric;
    rec.propagators = march(sm, Matrix::Identity(sm.model.dim, sm.model.dim), Side::right);
    rec.norms = norms_of(rec.propagators);
    return rec;
}

TrajectoryRecord integrate_right_trajectory(const ModelSpec& model, const NoisePath& noise,
                                            const Vector& psi0, const TimeGrid& grid) {
    if (noise.grid != grid.refined().refined())
        throw GridMismatch("integrate_right_trajectory: noise must live on the twice-refined grid");
    return integrate_right_trajectory(solve_model(model, noise), psi0);
}

TrajectoryRecord integrate_left_trajectory(const ModelSpec& model, const NoisePath& noise,
                                           const Vector& psi_tilde0, const TimeGrid& grid) {
    if (noise.grid != grid.refined().refined())
        throw GridMismatch("integrate_left_trajectory: noise must live on the twice-refined grid");
    return integrate_left_trajectory(solve_model(model, noise), psi_tilde0);
}

TrajectoryRecord integrate_propagator(const ModelSpec& model, const NoisePath& noise,
                                      const TimeGrid& grid) {
    if (noise.grid != grid.refined().refined())
        throw GridMismatch("integrate_propagator: noise must live on the twice-refined grid");
    return integrate_propagator(solve_model(model, noise));
}

}  // namespace qsdlab
