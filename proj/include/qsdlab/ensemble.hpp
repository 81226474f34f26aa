#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qsdlab/linalg.hpp"
#include "qsdlab/qsd.hpp"

namespace qsdlab {

enum class EnsembleMethod { numeric, analytic };

struct EnsembleOptions {
    int n_paths = 0;
    std::uint64_t master_seed = 0;
    EnsembleMethod method = EnsembleMethod::numeric;
    std::optional<Vector> target;  // fidelity target state (normalized)
    int n_batches = 32;            // batch-means batches, bounded by n_paths
    int threads = -1;              // -1: QSDLAB_THREADS env (0/unset = hardware)
};

/// Monte-Carlo averaged reduced density matrix rho(t) = M[|psi><psi|]
/// (or M[U rho0 U^dagger] for mixed initial states), with diagnostics.
///
/// purity/fidelity are evaluated on the trace-normalized average;
/// `stderr_series` is the batch-means standard error of the fidelity when a
/// target is set, of the trace otherwise.
struct EnsembleResult {
    TimeGrid grid;
    std::vector<Matrix> rho;  // raw average; trace -> 1 as n grows
    int n_paths = 0;
    std::uint64_t master_seed = 0;
    EnsembleMethod method = EnsembleMethod::numeric;
    std::vector<Complex> trace;
    std::vector<double> purity_series;
    std::vector<double> fidelity_series;  // empty without a target
    std::vector<double> stderr_series;
    double hermiticity_defect = 0.0;  // max_t |rho - rho^dagger|
    double min_eigenvalue = 0.0;      // min_t min eig of the Hermitian part
};

/// Average trajectories over n_paths noise realizations. Per-path seeds are
/// split_seed(master_seed, index); contributions are combined by pairwise
/// summation in an index-determined order, so the result is bitwise
/// reproducible for any worker count.
EnsembleResult run_ensemble(const ModelSpec& model, const Matrix& rho0, const TimeGrid& grid,
                            const EnsembleOptions& options);

/// <psi_T| rho |psi_T> / Tr rho  (squared-overlap fidelity for pure targets).
double fidelity(const Matrix& rho, const Vector& psi_T);

/// Tr(rho_hat^2) of the trace-normalized matrix.
double purity(const Matrix& rho);

/// Monte-Carlo convergence diagnostic between nested runs at n and 2n paths.
struct ConvergenceReport {
    int n_small = 0;
    double deviation = 0.0;  // max_t ||rho_n - rho_2n||_F
};
ConvergenceReport convergence_report(const EnsembleResult& at_n, const EnsembleResult& at_2n);

}  // namespace qsdlab
