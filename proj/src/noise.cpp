#include "qsdlab/noise.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "qsdlab/errors.hpp"

namespace qsdlab {

void CorrelationSpec::validate() const {
    if (!(gamma > 0.0) || !(Gamma > 0.0))
        throw InvalidSpec("CorrelationSpec: gamma and Gamma must be > 0");
}

ModeSumSpec ModeSumSpec::lorentzian(const CorrelationSpec& corr, int n_modes, double window_factor) {
    corr.validate();
    if (n_modes < 1) throw InvalidSpec("ModeSumSpec::lorentzian: need n_modes >= 1");
    ModeSumSpec spec;
    spec.modes.reserve(n_modes);
    // Frequencies at quantiles of the truncated Lorentzian, equal weights
    // summing to alpha(0) so the covariance is exact at tau = 0.
    const double half_angle = std::atan(window_factor);
    const double weight = corr.alpha0() / n_modes;
    for (int k = 0; k < n_modes; ++k) {
        const double u = (k + 0.5) / n_modes;                     // quantile in (0,1)
        const double omega = corr.gamma * std::tan(half_angle * (2.0 * u - 1.0));
        spec.modes.push_back({Complex(std::sqrt(weight), 0.0), omega});
    }
    return spec;
}

Complex ModeSumSpec::alpha(double tau) const {
    Complex sum = 0.0;
    for (const auto& m : modes) sum += std::norm(m.coupling) * std::exp(Complex(0.0, -m.frequency * tau));
    return sum;
}

double ModeSumSpec::residual_against(const CorrelationSpec& corr, double t_span, int probes) const {
    double worst = 0.0;
    for (int i = 0; i <= probes; ++i) {
        const double tau = t_span * i / probes;
        worst = std::max(worst, std::abs(alpha(tau) - corr.alpha(tau)));
    }
    return worst;
}

std::uint64_t split_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t x = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

namespace {

// Circular complex Gaussian with E|z|^2 = variance; re drawn before im.
class ComplexGaussian {
public:
    explicit ComplexGaussian(std::uint64_t seed) : engine_(seed) {}
    Complex draw(double variance) {
        const double s = std::sqrt(0.5 * variance);
        const double re = s * normal_(engine_);
        const double im = s * normal_(engine_);
        return {re, im};
    }

private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace

NoisePath sample_ou_path(const CorrelationSpec& spec, const TimeGrid& grid, std::uint64_t seed) {
    spec.validate();
    NoisePath path;
    path.grid = grid;
    path.seed = seed;
    path.spec = spec;
    const int count = grid.half_count();
    path.samples.resize(count);

    ComplexGaussian rng(seed);
    const double var = spec.alpha0();
    const double step = 0.5 * grid.dt;
    const double decay = std::exp(-spec.gamma * step);
    const double innovation_var = var * (1.0 - decay * decay);

    path.samples[0] = rng.draw(var);
    for (int k = 1; k < count; ++k)
        path.samples[k] = decay * path.samples[k - 1] + rng.draw(innovation_var);
    return path;
}

NoisePath sample_mode_sum_path(const ModeSumSpec& spec, const TimeGrid& grid, std::uint64_t seed) {
    if (spec.modes.empty()) throw InvalidSpec("sample_mode_sum_path: empty mode list");
    NoisePath path;
    path.grid = grid;
    path.seed = seed;
    path.spec = spec;
    const int count = grid.half_count();
    path.samples.assign(count, Complex(0.0));

    ComplexGaussian rng(seed);
    for (const auto& mode : spec.modes) {
        const Complex zk_star = rng.draw(1.0);  // z_k^* of a standard circular Gaussian
        const Complex amp = -I_UNIT * std::conj(mode.coupling) * zk_star;
        // exp(i omega t) advanced by a fixed rotation per half step
        const Complex rot = std::exp(Complex(0.0, mode.frequency * 0.5 * grid.dt));
        Complex phase = std::exp(Complex(0.0, mode.frequency * grid.t0));
        for (int k = 0; k < count; ++k) {
            path.samples[k] += amp * phase;
            phase *= rot;
        }
    }
    return path;
}

namespace {

double scatter_se(const std::vector<Complex>& loo, Complex center, int n) {
    double ss = 0.0;
    for (const Complex& v : loo) ss += std::norm(v - center);
    return std::sqrt(ss * (n - 1) / static_cast<double>(n));
}

}  // namespace

NoiseStatReport noise_statistics(const std::vector<NoisePath>& paths) {
    const int n = static_cast<int>(paths.size());
    if (n < 2) throw InvalidSpec("noise_statistics: need at least 2 paths");
    const TimeGrid grid = paths.front().grid;
    for (const auto& p : paths)
        if (p.grid != grid || p.samples.size() != static_cast<std::size_t>(grid.half_count()))
            throw GridMismatch("noise_statistics: paths on heterogeneous grids");

    const int m = grid.half_count();
    NoiseStatReport rep;
    rep.grid = grid;
    rep.n_paths = n;
    rep.mean.assign(m, Complex(0.0));
    rep.mean_se.assign(m, 0.0);
    rep.covariance.setZero(m, m);
    rep.covariance_se.setZero(m, m);
    rep.pseudo.setZero(m, m);
    rep.pseudo_se.setZero(m, m);

    // Samples hold w = z*; report moments of z = conj(w).
    std::vector<Complex> sum_w(m, Complex(0.0));
    for (const auto& p : paths)
        for (int k = 0; k < m; ++k) sum_w[k] += p.samples[k];

    for (int k = 0; k < m; ++k) {
        const Complex mean_w = sum_w[k] / static_cast<double>(n);
        rep.mean[k] = mean_w;
        double ss = 0.0;
        for (const auto& p : paths) ss += std::norm(p.samples[k] - mean_w);
        rep.mean_se[k] = std::sqrt(ss / (static_cast<double>(n - 1) * n));
    }

    // cov(k,l) = E[z_k z*_l] = E[conj(w_k) w_l]; pseudo(k,l) = E[z_k z_l] = conj(E[w_k w_l]).
    // Unbiased sample moments; jackknife SE via exact leave-one-out updates.
    std::vector<Complex> loo(n);
    for (int k = 0; k < m; ++k) {
        for (int l = k; l < m; ++l) {
            Complex s_cov = 0.0, s_pse = 0.0;
            for (const auto& p : paths) {
                s_cov += std::conj(p.samples[k]) * p.samples[l];
                s_pse += p.samples[k] * p.samples[l];
            }
            const Complex s1k = sum_w[k], s1l = sum_w[l];
            auto moments = [&](Complex s2, bool conj_k) {
                const Complex mk = conj_k ? std::conj(s1k / double(n)) : s1k / double(n);
                const Complex full = (s2 - double(n) * mk * (s1l / double(n))) / double(n - 1);
                if (n < 3)  // jackknife needs three paths
                    return std::pair<Complex, double>(full, std::numeric_limits<double>::infinity());
                Complex loo_mean = 0.0;
                for (int i = 0; i < n; ++i) {
                    const Complex wk = paths[i].samples[k], wl = paths[i].samples[l];
                    const Complex a = conj_k ? std::conj(wk) : wk;
                    const Complex s2i = s2 - a * wl;
                    const Complex s1ki = conj_k ? std::conj(s1k - wk) : (s1k - wk);
                    const Complex s1li = s1l - wl;
                    loo[i] = (s2i - s1ki * s1li / double(n - 1)) / double(n - 2);
                    loo_mean += loo[i];
                }
                loo_mean /= double(n);
                return std::pair<Complex, double>(full, scatter_se(loo, loo_mean, n));
            };
            auto [cov, cov_se] = moments(s_cov, true);
            auto [pse_w, pse_se] = moments(s_pse, false);
            rep.covariance(k, l) = cov;
            rep.covariance(l, k) = std::conj(cov);
            rep.covariance_se(k, l) = rep.covariance_se(l, k) = cov_se;
            rep.pseudo(k, l) = rep.pseudo(l, k) = std::conj(pse_w);
            rep.pseudo_se(k, l) = rep.pseudo_se(l, k) = pse_se;
        }
    }
    return rep;
}

}  // namespace qsdlab
