#include "qsdlab/ensemble.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "qsdlab/errors.hpp"
#include "qsdlab/invariants.hpp"
#include "qsdlab/noise.hpp"

namespace qsdlab {

double fidelity(const Matrix& rho, const Vector& psi_T) {
    if (std::abs(psi_T.norm() - 1.0) > 1e-9)
        throw InvalidSpec("fidelity: target state must be normalized");
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw InvalidDensity("fidelity: trace must be positive");
    return (psi_T.adjoint() * rho * psi_T)(0).real() / tr;
}

double purity(const Matrix& rho) {
    const double tr = rho.trace().real();
    if (!(tr > 0.0)) throw InvalidDensity("purity: trace must be positive");
    return (rho * rho).trace().real() / (tr * tr);
}

namespace {

void validate_density(const Matrix& rho0) {
    if (rho0.rows() != rho0.cols()) throw InvalidDensity("rho0 must be square");
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-9)
        throw InvalidDensity("rho0 must be Hermitian");
    if (std::abs(rho0.trace() - Complex(1.0)) > 1e-9) throw InvalidDensity("rho0 must have unit trace");
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho0);
    if (es.eigenvalues().minCoeff() < -1e-9)
        throw InvalidDensity("rho0 must be positive semidefinite");
}

// Pure-state detection: rank-1 within 1e-12 returns the state vector.
std::optional<Vector> pure_state_of(const Matrix& rho0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho0);
    const auto& ev = es.eigenvalues();
    for (Eigen::Index i = 0; i + 1 < ev.size(); ++i)
        if (std::abs(ev(i)) > 1e-12) return std::nullopt;
    return Vector(es.eigenvectors().col(ev.size() - 1));
}

int resolve_threads(int requested, int n_batches) {
    int t = requested;
    if (t < 0) {
        t = 0;
        if (const char* env = std::getenv("QSDLAB_THREADS")) t = std::atoi(env);
    }
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
    if (t < 1) t = 1;
    return std::min(t, n_batches);
}

// Per-batch (and per-node) accumulators: density sum, fidelity numerator,
// and trace, plus squared norms are recoverable from the trace itself.
struct Accum {
    std::vector<Matrix> rho;
    std::vector<double> fid_num;
    std::vector<double> trace;

    void init(int nodes, int dim) {
        rho.assign(nodes, Matrix::Zero(dim, dim));
        fid_num.assign(nodes, 0.0);
        trace.assign(nodes, 0.0);
    }
    void add(const Accum& other) {
        for (std::size_t i = 0; i < rho.size(); ++i) {
            rho[i] += other.rho[i];
            fid_num[i] += other.fid_num[i];
            trace[i] += other.trace[i];
        }
    }
};

// Analytic per-path propagator: columns are analytic solutions for the
// standard basis vectors in the invariant's bi-orthonormal expansion.
std::vector<Matrix> analytic_propagator(const SolvedModel& sm) {
    InvariantSeries inv;
    switch (sm.model.kind) {
        case ModelKind::rwa_qubit: inv = qubit_invariant(sm); break;
        case ModelKind::three_level: inv = three_level_invariant(sm); break;
        case ModelKind::reverse_engineered: inv = reverse_target_invariant(sm); break;
        default:
            throw InvalidSpec("run_ensemble: analytic method needs a cataloged model");
    }
    const int d = sm.model.dim;
    const int nodes = sm.grid.node_count();
    std::vector<Matrix> U(nodes, Matrix(d, d));
    for (int col = 0; col < d; ++col) {
        Vector e = Vector::Zero(d);
        e(col) = 1.0;
        TrajectoryRecord rec = analytic_solution(inv, sm, e);
        for (int i = 0; i < nodes; ++i) U[i].col(col) = rec.right_states[i];
    }
    return U;
}

struct PathJob {
    const ModelSpec* model;
    const TimeGrid* grid;
    const EnsembleOptions* options;
    const Matrix* rho0;
    const Vector* psi0;  // set for pure initial states
    int nodes;

    void contribution(int index, Accum& out) const {
        const std::uint64_t seed = split_seed(options->master_seed, index);
        const NoisePath noise = sample_model_noise(*model, *grid, seed);
        const SolvedModel sm = solve_model(*model, noise);
        const bool pure = psi0 != nullptr;
        const Vector* target = options->target ? &*options->target : nullptr;

        if (options->method == EnsembleMethod::numeric && pure) {
            TrajectoryRecord rec = integrate_right_trajectory(sm, *psi0);
            for (int i = 0; i < nodes; ++i) {
                const Vector& psi = rec.right_states[i];
                out.rho[i].noalias() += psi * psi.adjoint();
                out.trace[i] += psi.squaredNorm();
                if (target) out.fid_num[i] += std::norm(target->dot(psi));
            }
            return;
        }
        std::vector<Matrix> U;
        if (options->method == EnsembleMethod::numeric)
            U = integrate_propagator(sm).propagators;
        else
            U = analytic_propagator(sm);
        for (int i = 0; i < nodes; ++i) {
            Matrix rho_i;
            if (pure) {
                const Vector psi = U[i] * (*psi0);
                rho_i.noalias() = psi * psi.adjoint();
            } else {
                rho_i.noalias() = U[i] * (*rho0) * U[i].adjoint();
            }
            out.rho[i] += rho_i;
            out.trace[i] += rho_i.trace().real();
            if (target) out.fid_num[i] += (target->adjoint() * rho_i * (*target))(0).real();
        }
    }
};

// Pairwise summation over [lo, hi) with a split at the largest power of two
// below the range size; the tree depends only on path indices.
void pairwise_sum(const PathJob& job, int lo, int hi, Accum& out) {
    if (hi - lo == 1) {
        job.contribution(lo, out);
        return;
    }
    int p = 1;
    while (2 * p < hi - lo) p *= 2;
    pairwise_sum(job, lo, lo + p, out);
    Accum right;
    right.init(job.nodes, job.model->dim);
    pairwise_sum(job, lo + p, hi, right);
    out.add(right);
}

}  // namespace

EnsembleResult run_ensemble(const ModelSpec& model, const Matrix& rho0, const TimeGrid& grid,
                            const EnsembleOptions& options) {
    model.validate();
    validate_density(rho0);
    if (rho0.rows() != model.dim) throw InvalidDensity("rho0 dimension mismatch");
    if (options.n_paths < 2) throw InvalidSpec("run_ensemble: need n_paths >= 2");
    if (options.target && options.target->size() != model.dim)
        throw InvalidSpec("run_ensemble: target dimension mismatch");

    const int n = options.n_paths;
    const int n_batches = std::max(1, std::min(options.n_batches, n));
    const int nodes = grid.node_count();
    const std::optional<Vector> psi0 = pure_state_of(rho0);

    PathJob job{&model, &grid, &options, &rho0, psi0 ? &*psi0 : nullptr, nodes};

    // Batches are contiguous index ranges; workers claim whole batches, so the
    // summation tree (pairwise within batches, pairwise across batches) never
    // depends on the worker count.
    std::vector<Accum> batch(n_batches);
    std::vector<std::pair<int, int>> ranges(n_batches);
    for (int b = 0; b < n_batches; ++b)
        ranges[b] = {static_cast<int>(static_cast<long long>(b) * n / n_batches),
                     static_cast<int>(static_cast<long long>(b + 1) * n / n_batches)};

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (int b = next.fetch_add(1); b < n_batches; b = next.fetch_add(1)) {
                batch[b].init(nodes, model.dim);
                if (ranges[b].second > ranges[b].first)
                    pairwise_sum(job, ranges[b].first, ranges[b].second, batch[b]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    const int n_threads = resolve_threads(options.threads, n_batches);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Fixed-order pairwise combination across batches.
    std::vector<Accum*> level;
    for (auto& b : batch) level.push_back(&b);
    while (level.size() > 1) {
        std::vector<Accum*> up;
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
            level[i]->add(*level[i + 1]);
            up.push_back(level[i]);
        }
        if (level.size() % 2 == 1) up.push_back(level.back());
        level = std::move(up);
    }
    const Accum& total = *level.front();

    EnsembleResult res;
    res.grid = grid;
    res.n_paths = n;
    res.master_seed = options.master_seed;
    res.method = options.method;
    res.rho.reserve(nodes);
    res.trace.reserve(nodes);
    res.purity_series.reserve(nodes);
    if (options.target) res.fidelity_series.reserve(nodes);
    res.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nodes; ++i) {
        Matrix rho = total.rho[i] / static_cast<double>(n);
        res.trace.push_back(rho.trace());
        res.purity_series.push_back(purity(rho));
        if (options.target) res.fidelity_series.push_back(fidelity(rho, *options.target));
        res.hermiticity_defect =
            std::max(res.hermiticity_defect, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0,
                                                 Eigen::EigenvaluesOnly);
        res.min_eigenvalue = std::min(res.min_eigenvalue, es.eigenvalues().minCoeff());
        res.rho.push_back(std::move(rho));
    }

    // Batch-means standard error of the fidelity (or of the trace).
    res.stderr_series.assign(nodes, 0.0);
    if (n_batches >= 2) {
        for (int i = 0; i < nodes; ++i) {
            double mean = 0.0;
            std::vector<double> values(n_batches);
            for (int b = 0; b < n_batches; ++b) {
                const double count = ranges[b].second - ranges[b].first;
                values[b] = options.target ? batch[b].fid_num[i] / batch[b].trace[i]
                                           : batch[b].trace[i] / count;
                mean += values[b];
            }
            mean /= n_batches;
            double ss = 0.0;
            for (double v : values) ss += (v - mean) * (v - mean);
            res.stderr_series[i] = std::sqrt(ss / (n_batches - 1.0) / n_batches);
        }
    }
    return res;
}

ConvergenceReport convergence_report(const EnsembleResult& at_n, const EnsembleResult& at_2n) {
    if (at_n.grid != at_2n.grid) throw GridMismatch("convergence_report: grid mismatch");
    if (at_n.master_seed != at_2n.master_seed || at_2n.n_paths != 2 * at_n.n_paths)
        throw InvalidSpec("convergence_report: runs must be nested (same master seed, n and 2n)");
    ConvergenceReport rep;
    rep.n_small = at_n.n_paths;
    for (std::size_t i = 0; i < at_n.rho.size(); ++i)
        rep.deviation = std::max(rep.deviation, (at_n.rho[i] - at_2n.rho[i]).norm());
    return rep;
}

}  // namespace qsdlab
