#include "qsdlab/bi_orthonormal.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <numeric>

#include "qsdlab/errors.hpp"

namespace qsdlab {

double BiorthoDecomposition::orthonormality_defect() const {
    const int d = dim();
    const Matrix probe = left * right;
    double defect = (probe - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
    Matrix completeness = Matrix::Zero(d, d);
    for (int mu = 0; mu < d; ++mu) completeness += right.col(mu) * left.row(mu);
    defect = std::max(defect, (completeness - Matrix::Identity(d, d)).cwiseAbs().maxCoeff());
    return defect;
}

double BiorthoDecomposition::eigen_defect(const Matrix& M) const {
    double defect = 0.0;
    for (int mu = 0; mu < dim(); ++mu) {
        defect = std::max(defect,
                          (M * right.col(mu) - eigenvalues(mu) * right.col(mu)).cwiseAbs().maxCoeff());
        defect = std::max(defect,
                          (left.row(mu) * M - eigenvalues(mu) * left.row(mu)).cwiseAbs().maxCoeff());
    }
    return defect;
}

namespace {

// Raw solver output, eigenvalues sorted ascending by (re, im).
struct RawEig {
    Vector values;
    Matrix vectors;
};

RawEig solve_sorted(const Matrix& M) {
    if (M.rows() != M.cols() || M.rows() < 1)
        throw InvalidSpec("eig_biorthonormal: matrix must be square, dim >= 1");
    Eigen::ComplexEigenSolver<Matrix> es(M, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success) throw NotDiagonalizable("eig_biorthonormal: solver failed");
    const int d = static_cast<int>(M.rows());
    std::vector<int> order(d);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const Complex va = es.eigenvalues()(a), vb = es.eigenvalues()(b);
        if (va.real() != vb.real()) return va.real() < vb.real();
        return va.imag() < vb.imag();
    });
    RawEig raw;
    raw.values.resize(d);
    raw.vectors.resize(d, d);
    for (int i = 0; i < d; ++i) {
        raw.values(i) = es.eigenvalues()(order[i]);
        raw.vectors.col(i) = es.eigenvectors().col(order[i]);
    }
    return raw;
}

// Defective matrices have (numerically) rank-deficient eigenvector sets.
void check_diagonalizable(const Matrix& vectors) {
    Eigen::JacobiSVD<Matrix> svd(vectors);
    const double smax = svd.singularValues()(0);
    const double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smax > 0.0) || smin / smax < 1e-10)
        throw NotDiagonalizable("eig_biorthonormal: eigenvector set is rank-deficient");
}

void check_degeneracy(const Vector& values, double degeneracy_tol) {
    const int d = static_cast<int>(values.size());
    if (d < 2) return;
    double diameter = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) diameter = std::max(diameter, std::abs(values(i) - values(j)));
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (std::abs(values(i) - values(j)) < degeneracy_tol * diameter || diameter == 0.0)
                throw DegenerateSpectrum("eig_biorthonormal: eigenvalue spacing below tolerance");
}

int pivot_index(const Vector& column) {
    int pivot = 0;
    column.cwiseAbs().maxCoeff(&pivot);
    return pivot;
}

// Scale column mu so component `pivot` equals exactly 1.
void apply_pivot_gauge(Matrix& vectors, int mu, int pivot) {
    const Complex p = vectors(pivot, mu);
    if (std::abs(p) < 1e-12 * vectors.col(mu).cwiseAbs().maxCoeff())
        throw Error("bi-orthonormal gauge: pivot component vanished along the series");
    vectors.col(mu) /= p;
}

BiorthoDecomposition finish(const Vector& values, Matrix vectors, const Matrix& M) {
    BiorthoDecomposition out;
    out.eigenvalues = values;
    out.right = std::move(vectors);
    out.left = out.right.inverse();
    out.residual = std::max(out.eigen_defect(M), out.orthonormality_defect());
    return out;
}

}  // namespace

BiorthoDecomposition eig_biorthonormal(const Matrix& M, double degeneracy_tol) {
    RawEig raw = solve_sorted(M);
    check_diagonalizable(raw.vectors);
    check_degeneracy(raw.values, degeneracy_tol);
    for (int mu = 0; mu < raw.values.size(); ++mu)
        apply_pivot_gauge(raw.vectors, mu, pivot_index(raw.vectors.col(mu)));
    return finish(raw.values, raw.vectors, M);
}

std::vector<BiorthoDecomposition> decompose_series(const std::vector<Matrix>& matrices,
                                                   double degeneracy_tol) {
    std::vector<BiorthoDecomposition> out;
    out.reserve(matrices.size());
    if (matrices.empty()) return out;

    const int d = static_cast<int>(matrices.front().rows());
    std::vector<int> pivots(d);

    for (std::size_t n = 0; n < matrices.size(); ++n) {
        RawEig raw = solve_sorted(matrices[n]);
        check_diagonalizable(raw.vectors);
        check_degeneracy(raw.values, degeneracy_tol);

        Vector values(d);
        Matrix vectors(d, d);
        if (n == 0) {
            values = raw.values;
            vectors = raw.vectors;
            for (int mu = 0; mu < d; ++mu) {
                pivots[mu] = pivot_index(vectors.col(mu));
                apply_pivot_gauge(vectors, mu, pivots[mu]);
            }
        } else {
            // Match each previous mode to the raw column with maximal overlap.
            const BiorthoDecomposition& prev = out.back();
            std::vector<bool> used(d, false);
            for (int mu = 0; mu < d; ++mu) {
                int best = -1;
                double best_overlap = -1.0;
                for (int nu = 0; nu < d; ++nu) {
                    if (used[nu]) continue;
                    const double overlap = std::abs((prev.left.row(mu) * raw.vectors.col(nu))(0, 0));
                    if (overlap > best_overlap) {
                        best_overlap = overlap;
                        best = nu;
                    }
                }
                used[best] = true;
                values(mu) = raw.values(best);
                vectors.col(mu) = raw.vectors.col(best);
                apply_pivot_gauge(vectors, mu, pivots[mu]);
            }
        }
        out.push_back(finish(values, vectors, matrices[n]));
    }
    return out;
}

}  // namespace qsdlab
