#include "qsdlab/exp_integral.hpp"

#include "qsdlab/errors.hpp"
#include "qsdlab/rk4.hpp"

namespace qsdlab {

std::vector<Complex> cumulative_exp_integral(const std::vector<Complex>& g,
                                             const std::vector<Complex>& h,
                                             const TimeGrid& grid) {
    const std::size_t want = static_cast<std::size_t>(grid.half_count());
    if (g.size() != want || h.size() != want)
        throw GridMismatch("cumulative_exp_integral: series must cover the half lattice");
    auto rhs = [&](int k, double, const Complex& r) { return g[k] * r + h[k]; };
    return rk4_integrate(rhs, Complex(0.0), grid);
}

std::vector<Complex> cumulative_simpson(const std::vector<Complex>& values, const TimeGrid& grid) {
    const std::size_t want = static_cast<std::size_t>(grid.half_count());
    if (values.size() != want)
        throw GridMismatch("cumulative_simpson: series must cover the half lattice");
    std::vector<Complex> out(grid.node_count());
    out[0] = 0.0;
    const double w = grid.dt / 6.0;
    for (int i = 0; i < grid.n_steps; ++i)
        out[i + 1] = out[i] + w * (values[2 * i] + 4.0 * values[2 * i + 1] + values[2 * i + 2]);
    return out;
}

}  // namespace qsdlab
