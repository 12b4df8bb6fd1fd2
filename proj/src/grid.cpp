#include "bhhg/grid.hpp"

#include "bhhg/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace bhhg {

bool is_power_of_two(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }

SpatialGrid make_grid(double x_min, double x_max, std::size_t n_points) {
    if (!(x_min < x_max))
        throw ConfigError("make_grid: x_min must be < x_max (got [" +
                          std::to_string(x_min) + ", " + std::to_string(x_max) + "])");
    if (n_points < 2 || !is_power_of_two(n_points))
        throw ConfigError("make_grid: n_points must be a power of two >= 2 (got " +
                          std::to_string(n_points) + ")");

    SpatialGrid g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.n_points = n_points;
    g.dx = (x_max - x_min) / static_cast<double>(n_points);

    g.x.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j)
        g.x[j] = x_min + static_cast<double>(j) * g.dx;

    // FFT-ordered momenta: k_m = 2*pi*m/(n*dx) for m < n/2, negative branch after.
    g.k.resize(n_points);
    const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n_points) * g.dx);
    for (std::size_t m = 0; m < n_points; ++m) {
        const auto sm = static_cast<std::ptrdiff_t>(m);
        const auto half = static_cast<std::ptrdiff_t>(n_points / 2);
        g.k[m] = dk * static_cast<double>(sm < half ? sm : sm - static_cast<std::ptrdiff_t>(n_points));
    }
    return g;
}

} // namespace bhhg
