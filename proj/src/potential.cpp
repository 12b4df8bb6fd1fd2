#include "bhhg/potential.hpp"

#include "bhhg/errors.hpp"

#include <cmath>
#include <numbers>

namespace bhhg {

namespace {

// cos^7 taper mask and its derivative on a0 <= |x| <= L.
double mask(const PotentialSpec& s, double ax) {
    const double u = 0.5 * std::numbers::pi * (ax - s.a0) / (s.L - s.a0);
    const double c = std::cos(u);
    return c * c * c * c * c * c * c;
}

double mask_derivative(const PotentialSpec& s, double ax) {
    const double du = 0.5 * std::numbers::pi / (s.L - s.a0);
    const double u = du * (ax - s.a0);
    const double c = std::cos(u);
    const double c2 = c * c;
    return -7.0 * c2 * c2 * c2 * std::sin(u) * du;
}

} // namespace

void PotentialSpec::validate() const {
    if (variant == PotentialKind::softcore_truncated && !(0.0 < a0 && a0 < L))
        throw ConfigError("PotentialSpec: truncated variant requires 0 < a0 < L");
}

double potential_value(const PotentialSpec& spec, double x) {
    const double core = -1.0 / std::sqrt(x * x + 1.0);
    if (spec.variant == PotentialKind::softcore_long)
        return core;
    const double ax = std::abs(x);
    if (ax < spec.a0)
        return core;
    if (ax > spec.L)
        return 0.0;
    return core * mask(spec, ax);
}

double potential_gradient(const PotentialSpec& spec, double x) {
    const double s = std::sqrt(x * x + 1.0);
    const double dcore = x / (s * s * s); // d/dx of -1/sqrt(x^2+1)
    if (spec.variant == PotentialKind::softcore_long)
        return dcore;
    const double ax = std::abs(x);
    if (ax < spec.a0)
        return dcore;
    if (ax > spec.L)
        return 0.0;
    // V = core * f(|x|): product rule, with d|x|/dx = sign(x).
    const double sign = x < 0.0 ? -1.0 : 1.0;
    const double core = -1.0 / s;
    return dcore * mask(spec, ax) + core * mask_derivative(spec, ax) * sign;
}

std::vector<double> sample_potential(const PotentialSpec& spec, const SpatialGrid& grid) {
    std::vector<double> v(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j)
        v[j] = potential_value(spec, grid.x[j]);
    return v;
}

std::vector<double> sample_gradient(const PotentialSpec& spec, const SpatialGrid& grid) {
    std::vector<double> v(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j)
        v[j] = potential_gradient(spec, grid.x[j]);
    return v;
}

} // namespace bhhg
