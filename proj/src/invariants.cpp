#include "qsdlab/invariants.hpp"

#include <cmath>

#include "qsdlab/errors.hpp"
#include "qsdlab/exp_integral.hpp"
#include "qsdlab/rk4.hpp"

namespace qsdlab {

double InvariantSeries::eigenvalue_drift() const {
    if (eigen.empty()) throw Error("eigenvalue_drift: eigendata not computed");
    double drift = 0.0;
    const Vector& mu0 = eigen.front().eigenvalues;
    for (const auto& dec : eigen)
        for (Eigen::Index k = 0; k < mu0.size(); ++k)
            drift = std::max(drift,
                             std::abs(dec.eigenvalues(k) - mu0(k)) / (1.0 + std::abs(mu0(k))));
    return drift;
}

namespace {

// March dX/dt = -i [H_eff, X] over the mid lattice, recording every point.
std::vector<Matrix> march_commutator(const Matrix& I0, const SolvedModel& sm) {
    const TimeGrid mid = sm.grid.refined();
    const double h = mid.dt;
    const int d = sm.model.dim;
    if (I0.rows() != d || I0.cols() != d)
        throw GridMismatch("propagate_invariant: I0 dimension mismatch");

    std::vector<Matrix> out;
    out.reserve(mid.node_count());
    out.push_back(I0);

    Matrix H(d, d), k1(d, d), k2(d, d), k3(d, d), k4(d, d), stage(d, d);
    Matrix x = I0;
    auto deriv = [&](int fine, const Matrix& v, Matrix& dv) {
        sm.heff_into(fine, H);
        dv.noalias() = Complex(0, -1) * (H * v);
        dv.noalias() -= Complex(0, -1) * (v * H);
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
            throw NumericalBlowup(mid.node_time(k + 1), "invariant magnitude " + std::to_string(m));
        out.push_back(x);
    }
    return out;
}

TimeGrid trajectory_grid_of(const NoisePath& noise) {
    if (noise.grid.n_steps % 4 != 0)
        throw GridMismatch("invariant: noise grid must be the twice-refined trajectory grid");
    return noise.grid.coarsened().coarsened();
}

}  // namespace

InvariantSeries propagate_invariant(const Matrix& I0, const SolvedModel& sm, bool with_eigendata,
                                    double degeneracy_tol) {
    InvariantSeries inv;
    inv.grid = sm.grid;
    inv.source = InvariantSeries::Source::propagated;
    inv.matrices = march_commutator(I0, sm);
    if (with_eigendata) inv.eigen = decompose_series(inv.matrices, degeneracy_tol);
    return inv;
}

InvariantSeries qubit_invariant(const NoisePath& noise, const std::vector<Complex>& F,
                                double lambda) {
    const TimeGrid traj = trajectory_grid_of(noise);
    const TimeGrid march = traj.refined();  // marching grid; its half lattice = coefficient lattice
    if (F.size() != static_cast<std::size_t>(march.half_count()))
        throw GridMismatch("qubit_invariant: F must be tabulated on the coefficient lattice");

    auto g_rhs = [&](int j, double, const Complex& g) {
        return (Complex(0, 2) + lambda * F[j]) * g + 2.0 * lambda * noise.samples[2 * j];
    };
    std::vector<Complex> g = rk4_integrate(g_rhs, Complex(0.0), march);

    InvariantSeries inv;
    inv.grid = traj;
    inv.source = InvariantSeries::Source::qubit_closed_form;
    inv.g = std::move(g);
    const int m = march.node_count();
    inv.matrices.reserve(m);
    inv.eigen.reserve(m);
    inv.right_dot.reserve(m);
    for (int k = 0; k < m; ++k) {
        const Complex gk = inv.g[k];
        Matrix I = pauli_z();
        I(1, 0) = gk;
        inv.matrices.push_back(I);

        BiorthoDecomposition dec;
        dec.eigenvalues.resize(2);
        dec.eigenvalues << -1.0, 1.0;
        dec.right.resize(2, 2);
        dec.right << 0.0, 1.0, 1.0, 0.5 * gk;
        dec.left.resize(2, 2);
        dec.left << -0.5 * gk, 1.0, 1.0, 0.0;
        dec.residual = 0.0;
        inv.eigen.push_back(std::move(dec));

        const Complex gdot = g_rhs(2 * k, 0.0, gk);  // fine index of mid point k is 2k
        Matrix rdot = Matrix::Zero(2, 2);
        rdot(1, 1) = 0.5 * gdot;
        inv.right_dot.push_back(std::move(rdot));
    }
    return inv;
}

InvariantSeries qubit_invariant(const SolvedModel& sm) {
    if (sm.model.kind != ModelKind::rwa_qubit)
        throw InvalidSpec("qubit_invariant: model is not the RWA qubit");
    return qubit_invariant(sm.noise, sm.coeffs.F, sm.model.lambda);
}

InvariantSeries three_level_invariant(const NoisePath& noise, const ModelCoefficients& co,
                                      double omega) {
    const TimeGrid traj = trajectory_grid_of(noise);
    const TimeGrid march = traj.refined();
    const std::size_t want = static_cast<std::size_t>(march.half_count());
    if (co.F.size() != want || co.G.size() != want || co.Pn.size() != want)
        throw GridMismatch("three_level_invariant: coefficients must cover the fine lattice");

    const double rt2 = std::sqrt(2.0);
    auto abc_rhs = [&](int j, double, const Eigen::Vector3cd& y) -> Eigen::Vector3cd {
        const Complex a = y(0), b = y(1), c = y(2);
        const Complex z = noise.samples[2 * j];
        const Complex F = co.F[j], G = co.G[j], Pn = co.Pn[j];
        Eigen::Vector3cd d;
        d(0) = (2.0 * (F + G) - Complex(0, omega)) * a + rt2 * z;
        d(1) = (2.0 * F - Complex(0, 2.0 * omega)) * b + rt2 * (2.0 * a * Pn - (a - c) * z);
        d(2) = (-2.0 * G - Complex(0, omega)) * c + rt2 * (z - 2.0 * Pn);
        return d;
    };
    auto abc = rk4_integrate(abc_rhs, Eigen::Vector3cd::Zero().eval(), march);

    InvariantSeries inv;
    inv.grid = traj;
    inv.source = InvariantSeries::Source::three_level_closed_form;
    const int m = march.node_count();
    inv.a.resize(m);
    inv.b.resize(m);
    inv.c.resize(m);
    inv.matrices.reserve(m);
    inv.eigen.reserve(m);
    inv.right_dot.reserve(m);
    for (int k = 0; k < m; ++k) {
        const Complex a = abc[k](0), b = abc[k](1), c = abc[k](2);
        inv.a[k] = a;
        inv.b[k] = b;
        inv.c[k] = c;

        Matrix I = Matrix::Zero(3, 3);
        I(1, 1) = 1.0;
        I(2, 2) = 2.0;
        I(0, 1) = a;
        I(0, 2) = b;
        I(1, 2) = c;
        inv.matrices.push_back(I);

        BiorthoDecomposition dec;
        dec.eigenvalues.resize(3);
        dec.eigenvalues << 0.0, 1.0, 2.0;
        dec.right.resize(3, 3);
        dec.right << 1.0, a, 0.5 * (b + a * c),
                     0.0, 1.0, c,
                     0.0, 0.0, 1.0;
        dec.left.resize(3, 3);
        dec.left << 1.0, -a, 0.5 * (a * c - b),
                    0.0, 1.0, -c,
                    0.0, 0.0, 1.0;
        dec.residual = 0.0;
        inv.eigen.push_back(std::move(dec));

        const Eigen::Vector3cd d = abc_rhs(2 * k, 0.0, abc[k]);
        Matrix rdot = Matrix::Zero(3, 3);
        rdot(0, 1) = d(0);
        rdot(0, 2) = 0.5 * (d(1) + d(0) * c + a * d(2));
        rdot(1, 2) = d(2);
        inv.right_dot.push_back(std::move(rdot));
    }
    return inv;
}

InvariantSeries three_level_invariant(const SolvedModel& sm) {
    if (sm.model.kind != ModelKind::three_level)
        throw InvalidSpec("three_level_invariant: model is not the three-level ladder");
    return three_level_invariant(sm.noise, sm.coeffs, sm.model.omega);
}

InvariantSeries reverse_target_invariant(const SolvedModel& sm, Complex p0) {
    if (sm.model.kind != ModelKind::reverse_engineered)
        throw InvalidSpec("reverse_target_invariant: model is not the steering model");
    InvariantSeries inv = propagate_invariant(reverse_invariant_seed(p0), sm);
    inv.source = InvariantSeries::Source::reverse_ansatz;
    return inv;
}

TrajectoryRecord analytic_solution(const InvariantSeries& inv, const SolvedModel& sm,
                                   const Vector& psi0) {
    if (inv.grid != sm.grid) throw GridMismatch("analytic_solution: invariant/model grid mismatch");
    if (inv.eigen.size() != inv.matrices.size())
        throw DegenerateSpectrum("analytic_solution: eigendata missing (skipped or degenerate)");
    const int d = sm.model.dim;
    if (psi0.size() != d) throw GridMismatch("analytic_solution: psi0 dimension mismatch");

    const TimeGrid mid = sm.grid.refined();
    const int m = mid.node_count();

    // phidot columns: analytic when provided, otherwise second-order central
    // differences on the gauge-continuous right-eigenvector series.
    const bool analytic_dot = !inv.right_dot.empty();
    const double h = mid.dt;
    auto right_dot_col = [&](int k, int mu) -> Vector {
        if (analytic_dot) return inv.right_dot[k].col(mu);
        if (k == 0)
            return (-3.0 * inv.eigen[0].right.col(mu) + 4.0 * inv.eigen[1].right.col(mu) -
                    inv.eigen[2].right.col(mu)) /
                   (2.0 * h);
        if (k == m - 1)
            return (3.0 * inv.eigen[m - 1].right.col(mu) - 4.0 * inv.eigen[m - 2].right.col(mu) +
                    inv.eigen[m - 3].right.col(mu)) /
                   (2.0 * h);
        return (inv.eigen[k + 1].right.col(mu) - inv.eigen[k - 1].right.col(mu)) / (2.0 * h);
    };

    TrajectoryRecord rec;
    rec.grid = sm.grid;
    rec.method = TrajectoryMethod::analytic;
    rec.coefficients.assign(d, std::vector<Complex>(sm.grid.node_count()));

    std::vector<std::vector<Complex>> exponents(d);
    {
        Matrix H(d, d);
        std::vector<Complex> integrand(m);
        for (int mu = 0; mu < d; ++mu) {
            for (int k = 0; k < m; ++k) {
                sm.heff_into(2 * k, H);
                const auto& dec = inv.eigen[k];
                const Complex hterm = (dec.left.row(mu) * (H * dec.right.col(mu)))(0);
                const Complex dterm = (dec.left.row(mu) * right_dot_col(k, mu))(0);
                integrand[k] = I_UNIT * hterm + dterm;
            }
            exponents[mu] = cumulative_simpson(integrand, sm.grid);
        }
    }

    rec.right_states.reserve(sm.grid.node_count());
    rec.norms.reserve(sm.grid.node_count());
    Vector c0(d);
    for (int mu = 0; mu < d; ++mu) c0(mu) = (inv.eigen[0].left.row(mu) * psi0)(0);
    for (int i = 0; i < sm.grid.node_count(); ++i) {
        Vector psi = Vector::Zero(d);
        for (int mu = 0; mu < d; ++mu) {
            const Complex c = c0(mu) * std::exp(-exponents[mu][i]);
            rec.coefficients[mu][i] = c;
            psi += c * inv.eigen[2 * i].right.col(mu);
        }
        rec.norms.push_back(psi.norm());
        rec.right_states.push_back(std::move(psi));
    }
    return rec;
}

ConservationReport conservation_drift(const TrajectoryRecord& right, const TrajectoryRecord& left,
                                      const InvariantSeries& inv) {
    if (right.grid != left.grid || right.grid != inv.grid)
        throw GridMismatch("conservation_drift: grid mismatch");
    if (right.right_states.empty() || left.left_states.empty())
        throw GridMismatch("conservation_drift: need right and left trajectory records");
    ConservationReport rep;
    const int n = right.grid.node_count();
    rep.series.reserve(n);
    for (int i = 0; i < n; ++i) {
        // Tr[|psi><psi~| I] = <psi~| I |psi>
        rep.series.push_back(
            (left.left_states[i].adjoint() * (inv.at_node(i) * right.right_states[i]))(0));
    }
    const Complex s0 = rep.series.front();
    for (const Complex& s : rep.series)
        rep.drift = std::max(rep.drift, std::abs(s - s0) / std::max(1.0, std::abs(s0)));
    return rep;
}

double invariant_residual_analytic(const InvariantSeries& inv, const SolvedModel& sm) {
    const int m = static_cast<int>(inv.matrices.size());
    const int d = sm.model.dim;
    Matrix H(d, d), idot(d, d);
    double worst = 0.0;
    for (int k = 0; k < m; ++k) {
        idot.setZero();
        switch (inv.source) {
            case InvariantSeries::Source::qubit_closed_form:
                idot(1, 0) = (Complex(0, 2) + sm.model.lambda * sm.coeffs.F[2 * k]) * inv.g[k] +
                             2.0 * sm.model.lambda * sm.z_fine(2 * k);
                break;
            case InvariantSeries::Source::three_level_closed_form: {
                const double rt2 = std::sqrt(2.0);
                const Complex z = sm.z_fine(2 * k);
                const Complex F = sm.coeffs.F[2 * k], G = sm.coeffs.G[2 * k],
                              Pn = sm.coeffs.Pn[2 * k];
                const double w = sm.model.omega;
                const Complex a = inv.a[k], b = inv.b[k], c = inv.c[k];
                idot(0, 1) = (2.0 * (F + G) - Complex(0, w)) * a + rt2 * z;
                idot(0, 2) = (2.0 * F - Complex(0, 2.0 * w)) * b + rt2 * (2.0 * a * Pn - (a - c) * z);
                idot(1, 2) = (-2.0 * G - Complex(0, w)) * c + rt2 * (z - 2.0 * Pn);
                break;
            }
            default:
                throw InvalidSpec("invariant_residual_analytic: closed-form sources only");
        }
        sm.heff_into(2 * k, H);
        const Matrix res = idot + I_UNIT * (H * inv.matrices[k] - inv.matrices[k] * H);
        worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    return worst;
}

double invariant_residual_fd(const InvariantSeries& inv, const SolvedModel& sm) {
    const int m = static_cast<int>(inv.matrices.size());
    const int d = sm.model.dim;
    const double h = 0.5 * sm.grid.dt;
    Matrix H(d, d);
    double worst = 0.0;
    for (int k = 1; k + 1 < m; ++k) {
        sm.heff_into(2 * k, H);
        const Matrix idot = (inv.matrices[k + 1] - inv.matrices[k - 1]) / (2.0 * h);
        const Matrix res = idot + I_UNIT * (H * inv.matrices[k] - inv.matrices[k] * H);
        worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace qsdlab
