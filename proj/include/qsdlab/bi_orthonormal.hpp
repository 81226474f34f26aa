#pragma once

#include <vector>

#include "qsdlab/linalg.hpp"

namespace qsdlab {

/// Eigendecomposition of a (generally non-Hermitian) matrix into paired
/// left/right eigenvectors normalized to <left_mu | right_nu> = delta_mu,nu.
///
/// Columns of `right` are the right eigenvectors, rows of `left` the left
/// covectors, so left * right = identity and sum_mu right_mu left_mu
/// reconstructs the identity (completeness).
struct BiorthoDecomposition {
    Vector eigenvalues;  // mu_0..mu_{d-1}
    Matrix right;        // columns phi_mu
    Matrix left;         // rows phi~_mu
    double residual = 0.0;  // max deviation of the defining relations

    int dim() const { return static_cast<int>(eigenvalues.size()); }

    /// max |left*right - 1|, |sum right_mu left_mu - 1|
    double orthonormality_defect() const;
    /// max_mu ||M phi_mu - mu phi_mu||_inf and the left-sided analogue
    double eigen_defect(const Matrix& M) const;
};

/// Relative degeneracy tolerance (scaled by the spectral diameter).
inline constexpr double kDegeneracyTolDefault = 1e-8;

/// Bi-orthonormal eigendecomposition of a square matrix.
///
/// Eigenvalues are sorted ascending by (re, im); each right vector is scaled
/// so its largest-magnitude component equals 1 and the left covector absorbs
/// the remaining normalization. Throws NotDiagonalizable for defective
/// matrices and DegenerateSpectrum when two eigenvalues are closer than
/// `degeneracy_tol` times the spectral diameter.
BiorthoDecomposition eig_biorthonormal(const Matrix& M,
                                       double degeneracy_tol = kDegeneracyTolDefault);

/// Decompose a time series of matrices with a continuous gauge.
///
/// At the first entry the gauge is fixed as in eig_biorthonormal and one
/// pivot component per mode is recorded. At later entries eigenpairs are
/// matched to the previous step by maximal |<phi~_prev | phi_new>| and each
/// right vector is rescaled so its t=0 pivot component stays equal to 1;
/// the left covectors carry all remaining normalization.
std::vector<BiorthoDecomposition> decompose_series(const std::vector<Matrix>& matrices,
                                                   double degeneracy_tol = kDegeneracyTolDefault);

}  // namespace qsdlab
