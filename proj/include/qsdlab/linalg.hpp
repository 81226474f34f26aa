#pragma once

#include <Eigen/Dense>
#include <complex>

namespace qsdlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex I_UNIT{0.0, 1.0};

/// max_ij |M - M†|_ij <= tol
inline bool is_hermitian(const Matrix& M, double tol = 1e-12) {
    if (M.rows() != M.cols()) return false;
    return (M - M.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

inline Matrix dagger(const Matrix& M) { return M.adjoint(); }

// Pauli matrices, basis e0 = spin up (sigma_z = +1), e1 = spin down.
inline Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}
inline Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
/// Lowering operator |1><0| convention: sigma_minus * e0 = e1.
inline Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1;
    return m;
}
inline Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1;
    return m;
}

// Three-level ladder operators in the basis |0>, |1>, |2| with
// J_z = diag(1, 0, -1) and J_- = sqrt(2)(|0><1| + |1><2|).
inline Matrix three_level_jz() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = 1;
    m(2, 2) = -1;
    return m;
}
inline Matrix three_level_jminus() {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 1) = std::sqrt(2.0);
    m(1, 2) = std::sqrt(2.0);
    return m;
}

/// Spectral decomposition propagator exp(-i H t) for Hermitian H (test/reference use).
inline Matrix hermitian_propagator(const Matrix& H, double t) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    const auto& U = es.eigenvectors();
    Vector phases(H.rows());
    for (Eigen::Index i = 0; i < H.rows(); ++i)
        phases(i) = std::exp(Complex(0, -es.eigenvalues()(i) * t));
    return U * phases.asDiagonal() * U.adjoint();
}

}  // namespace qsdlab
