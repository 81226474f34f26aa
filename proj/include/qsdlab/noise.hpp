#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "qsdlab/linalg.hpp"
#include "qsdlab/time_grid.hpp"

namespace qsdlab {

/// Ornstein-Uhlenbeck bath correlation alpha(t,s) = (gamma*Gamma/2) exp(-gamma|t-s|).
struct CorrelationSpec {
    double gamma = 1.0;  // inverse memory time
    double Gamma = 1.0;  // noise strength

    double alpha(double tau) const { return 0.5 * gamma * Gamma * std::exp(-gamma * std::abs(tau)); }
    double alpha0() const { return 0.5 * gamma * Gamma; }
    void validate() const;
};

/// Discrete bath: alpha(tau) ~= sum_k |g_k|^2 exp(-i omega_k tau).
struct BathMode {
    Complex coupling;  // g_k
    double frequency;  // omega_k
};

struct ModeSumSpec {
    std::vector<BathMode> modes;

    /// Equal-weight quantile discretization of the OU (Lorentzian) spectral
    /// density on omega in [-window_factor*gamma, window_factor*gamma],
    /// with total weight normalized to alpha(0).
    static ModeSumSpec lorentzian(const CorrelationSpec& corr, int n_modes = 512,
                                  double window_factor = 20.0);

    Complex alpha(double tau) const;
    /// max_tau |mode-sum alpha - target alpha| over [0, t_span]
    double residual_against(const CorrelationSpec& corr, double t_span, int probes = 200) const;
};

using NoiseSpec = std::variant<CorrelationSpec, ModeSumSpec>;

/// One realization of the driving process z*_t, sampled on the half lattice
/// of `grid` (2*n_steps + 1 points), so every RK4 stage over `grid` sees an
/// exact process sample.
struct NoisePath {
    TimeGrid grid;
    std::vector<Complex> samples;  // z*_t, size grid.half_count()
    std::uint64_t seed = 0;
    NoiseSpec spec;

    Complex at(int k) const { return samples[k]; }
};

/// Deterministic per-path seed derived from a master seed: splitmix64
/// finalizer applied to master ^ (golden-ratio increment * (index + 1)).
std::uint64_t split_seed(std::uint64_t master, std::uint64_t index);

/// Exact-discretization AR(1) sampling of the stationary OU process:
///   z*_0 ~ CN(0, gamma*Gamma/2),
///   z*_{k+1} = e^{-gamma*D} z*_k + xi_k,  E|xi|^2 = (gamma*Gamma/2)(1 - e^{-2 gamma D}),
/// with D the half-lattice spacing. Identical (seed, grid, spec) reproduce
/// identical paths within one build.
NoisePath sample_ou_path(const CorrelationSpec& spec, const TimeGrid& grid, std::uint64_t seed);

/// Draws independent standard circular-complex z_k per mode and evaluates
/// z*_t = -i sum_k g_k^* z_k^* e^{i omega_k t} on the half lattice.
NoisePath sample_mode_sum_path(const ModeSumSpec& spec, const TimeGrid& grid, std::uint64_t seed);

/// Sample moments of a noise ensemble with jackknife standard errors.
/// Covariance/pseudo-covariance are indexed by half-lattice point pairs and
/// stated for the process z (samples hold z*): cov(k,l) = E[z_k z*_l],
/// pseudo(k,l) = E[z_k z_l].
struct NoiseStatReport {
    TimeGrid grid;
    int n_paths = 0;
    std::vector<Complex> mean;      // E[z*_t] per half-lattice point
    std::vector<double> mean_se;
    Eigen::MatrixXcd covariance;
    Eigen::MatrixXd covariance_se;
    Eigen::MatrixXcd pseudo;
    Eigen::MatrixXd pseudo_se;
};

NoiseStatReport noise_statistics(const std::vector<NoisePath>& paths);

}  // namespace qsdlab
