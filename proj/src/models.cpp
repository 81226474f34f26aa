#include "qsdlab/models.hpp"

#include <cmath>

#include "qsdlab/errors.hpp"
#include "qsdlab/rk4.hpp"

namespace qsdlab {

void ModelSpec::validate() const {
    if (dim < 1) throw InvalidSpec("ModelSpec: dim >= 1 required");
    if (H_s.rows() != dim || H_s.cols() != dim || L.rows() != dim || L.cols() != dim)
        throw InvalidSpec("ModelSpec: operator dimensions inconsistent");
    if (!is_hermitian(H_s, 1e-12)) throw InvalidSpec("ModelSpec: H_s must be Hermitian");
    if (lambda < 0.0) throw InvalidSpec("ModelSpec: lambda must be >= 0");
    correlation.validate();
    for (const auto& term : O_terms)
        if (term.op.rows() != dim || term.op.cols() != dim)
            throw InvalidSpec("ModelSpec: O term dimension mismatch");
}

namespace {

ModelCoefficients base_coefficients(const NoisePath& noise) {
    ModelCoefficients co;
    co.grid = noise.grid;
    if (noise.samples.size() != static_cast<std::size_t>(noise.grid.half_count()))
        throw GridMismatch("solve_coefficients: noise samples must cover the half lattice");
    return co;
}

// Qubit Riccati solver shared by the RWA model and the negative-control
// variant; `forcing` is the constant inhomogeneous term.
std::vector<Complex> solve_qubit_riccati(double lambda, double gamma, double forcing,
                                         const TimeGrid& grid) {
    auto rhs = [&](int, double, const Complex& F) {
        return forcing - gamma * F + Complex(0, 2) * F + lambda * F * F;
    };
    return rk4_integrate(rhs, Complex(0.0), grid);
}

ModelSpec make_rwa_qubit_impl(double lambda, const CorrelationSpec& corr, double forcing) {
    if (lambda < 0.0) throw InvalidSpec("make_rwa_qubit: lambda must be >= 0");
    corr.validate();
    ModelSpec m;
    m.name = "rwa-qubit";
    m.kind = ModelKind::rwa_qubit;
    m.dim = 2;
    m.H_s = pauli_z();
    m.L = lambda * sigma_minus();
    m.lambda = lambda;
    m.correlation = corr;
    m.noise_dependent_O = false;
    m.O_terms = {{CoeffChannel::F, sigma_minus()}};
    const double gamma = corr.gamma;
    m.solve_coefficients = [lambda, gamma, forcing](const NoisePath& noise) {
        ModelCoefficients co = base_coefficients(noise);
        co.F = solve_qubit_riccati(lambda, gamma, forcing, noise.grid);
        return co;
    };
    m.validate();
    return m;
}

}  // namespace

ModelSpec make_rwa_qubit(double lambda, const CorrelationSpec& correlation) {
    return make_rwa_qubit_impl(lambda, correlation,
                               lambda * correlation.gamma * correlation.Gamma / 2.0);
}

ModelSpec detail::make_rwa_qubit_gamma_only_forcing(double lambda,
                                                    const CorrelationSpec& correlation) {
    ModelSpec m = make_rwa_qubit_impl(lambda, correlation, lambda * correlation.gamma / 2.0);
    m.name = "rwa-qubit-gamma-only";
    return m;
}

ModelSpec make_three_level(double omega, const CorrelationSpec& correlation) {
    correlation.validate();
    ModelSpec m;
    m.name = "three-level";
    m.kind = ModelKind::three_level;
    m.dim = 3;
    m.H_s = omega * three_level_jz();
    m.L = three_level_jminus();
    m.lambda = 1.0;
    m.omega = omega;
    m.correlation = correlation;
    m.noise_dependent_O = true;  // Pn multiplies J_-^2 and is noise-driven
    const Matrix jm = three_level_jminus();
    m.O_terms = {{CoeffChannel::F, jm},
                 {CoeffChannel::G, three_level_jz() * jm},
                 {CoeffChannel::Pn, jm * jm}};
    const double gamma = correlation.gamma;
    const double Gamma = correlation.Gamma;
    m.solve_coefficients = [omega, gamma, Gamma](const NoisePath& noise) {
        ModelCoefficients co = base_coefficients(noise);
        // Coupled system (F, G, Pn, Q). F and G close among themselves; Pn is
        // forced by the noise; Q is the memory integral of Pn's noise response
        // and closes the hierarchy for the exponential kernel.
        const Complex go(gamma, omega);
        auto rhs = [&](int k, double, const Eigen::Vector4cd& y) -> Eigen::Vector4cd {
            const Complex F = y(0), G = y(1), Pn = y(2), Q = y(3);
            const Complex z = noise.samples[k];
            Eigen::Vector4cd d;
            d(0) = gamma * Gamma / 2.0 - go * F - 2.0 * F * G - Q;
            d(1) = -go * G + 2.0 * (F * F + 3.0 * F * G + G * G) + Q;
            d(2) = -Complex(gamma, 2.0 * omega) * Pn - G * z + 2.0 * (2.0 * F + G) * Pn;
            d(3) = -gamma * Gamma * G + (-2.0 * go + 2.0 * (2.0 * F + G)) * Q;
            return d;
        };
        auto series = rk4_integrate(rhs, Eigen::Vector4cd::Zero().eval(), noise.grid);
        const std::size_t count = series.size();
        co.F.resize(count);
        co.G.resize(count);
        co.Pn.resize(count);
        co.Q.resize(count);
        for (std::size_t i = 0; i < count; ++i) {
            co.F[i] = series[i](0);
            co.G[i] = series[i](1);
            co.Pn[i] = series[i](2);
            co.Q[i] = series[i](3);
        }
        return co;
    };
    m.validate();
    return m;
}

ModelSpec make_reverse_engineered(double omega, double lambda, const CorrelationSpec& correlation) {
    if (!(omega > 0.0) || !(lambda > 0.0))
        throw InvalidSpec("make_reverse_engineered: omega and lambda must be > 0");
    correlation.validate();
    ModelSpec m;
    m.name = "reverse-engineered";
    m.kind = ModelKind::reverse_engineered;
    m.dim = 2;
    m.H_s = -omega * pauli_x();
    m.L = lambda * (pauli_z() - I_UNIT * pauli_y());  // lambda * {{1,-1},{1,-1}}, nilpotent
    m.lambda = lambda;
    m.omega = omega;
    m.correlation = correlation;
    m.noise_dependent_O = false;
    m.O_terms = {{CoeffChannel::f, m.L}};
    const double gamma = correlation.gamma;
    const double Gamma = correlation.Gamma;
    m.solve_coefficients = [omega, lambda, gamma, Gamma](const NoisePath& noise) {
        ModelCoefficients co = base_coefficients(noise);
        // The Hadamard rotation (sigma_x + sigma_z)/sqrt(2) maps the model to
        // H_s -> -omega sigma_z, L -> 2 lambda sigma_+, whose Riccati for
        // Ftilde (O_rot = Ftilde sigma_+) reads
        //   Ftilde' = 2 lambda gamma Gamma / 2 ... with coupling 2 lambda.
        // Mapping back, O = f L with f = Ftilde / (2 lambda):
        //   f' = gamma*Gamma/2 + (2 i omega - gamma) f + 4 lambda^2 f^2.
        auto rhs = [&](int, double, const Complex& f) {
            return gamma * Gamma / 2.0 + (Complex(0, 2.0 * omega) - gamma) * f +
                   4.0 * lambda * lambda * f * f;
        };
        co.f = rk4_integrate(rhs, Complex(0.0), noise.grid);
        return co;
    };
    m.validate();
    return m;
}

Vector steering_target() {
    Vector v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return v;
}

Matrix reverse_invariant_seed(Complex p) {
    Matrix m(2, 2);
    m << p, -p - 1.0, p - 1.0, -p;
    return m;
}

TargetInvariantReport target_invariant_check(const ModelSpec& model,
                                             const std::vector<Matrix>& invariant_series,
                                             const Vector& psi_T) {
    if (model.dim != 2) throw InvalidSpec("target_invariant_check: dim-2 models only");
    TargetInvariantReport rep;
    rep.residuals.reserve(invariant_series.size());
    rep.eigenvalues.reserve(invariant_series.size());
    const double norm2 = psi_T.squaredNorm();
    for (const Matrix& I : invariant_series) {
        if (I.rows() != 2 || I.cols() != 2)
            throw GridMismatch("target_invariant_check: series dimension mismatch");
        const Vector image = I * psi_T;
        const Complex mu = (psi_T.adjoint() * image)(0) / norm2;
        const double res = (image - mu * psi_T).norm() / psi_T.norm();
        rep.residuals.push_back(res);
        rep.eigenvalues.push_back(mu);
        rep.max_residual = std::max(rep.max_residual, res);
    }
    return rep;
}

}  // namespace qsdlab
