#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace bhhg {

/// Uniform 1D spatial grid with the conjugate momentum grid in standard FFT
/// ordering. Immutable after construction; share via shared_ptr.
struct SpatialGrid {
    double x_min = 0.0;
    double x_max = 0.0;
    std::size_t n_points = 0;
    double dx = 0.0;
    std::vector<double> x; ///< nodes x_j = x_min + j dx, j = 0..n-1
    std::vector<double> k; ///< momenta, FFT order: 0, dk, ..., -2dk, -dk

    double dk() const { return k.size() > 1 ? k[1] : 0.0; }

    bool contains(double pos) const { return pos >= x_min && pos <= x_max - dx; }

    /// Fractional node index of a position (may lie outside [0, n-1]).
    double frac_index(double pos) const { return (pos - x_min) / dx; }
};

using GridPtr = std::shared_ptr<const SpatialGrid>;

/// Builds a grid on [x_min, x_max) with n_points nodes.
/// Throws ConfigError unless x_min < x_max and n_points is a power of two >= 2.
SpatialGrid make_grid(double x_min, double x_max, std::size_t n_points);

inline GridPtr make_shared_grid(double x_min, double x_max, std::size_t n_points) {
    return std::make_shared<const SpatialGrid>(make_grid(x_min, x_max, n_points));
}

bool is_power_of_two(std::size_t n);

} // namespace bhhg
