#pragma once

#include "bhhg/grid.hpp"

#include <vector>

namespace bhhg {

enum class PotentialKind { softcore_long, softcore_truncated };

/// Soft-core binding potential -f(x)/sqrt(x^2+1). The truncated variant
/// tapers the tail with a cos^7 mask between a0 and L and is zero beyond L.
struct PotentialSpec {
    PotentialKind variant = PotentialKind::softcore_long;
    double a0 = 5.0; ///< inner truncation radius (truncated variant)
    double L = 50.0; ///< outer truncation radius (truncated variant)

    /// Throws ConfigError unless 0 < a0 < L for the truncated variant.
    void validate() const;
};

double potential_value(const PotentialSpec& spec, double x);

/// dV/dx, analytic across the taper; continuous everywhere.
double potential_gradient(const PotentialSpec& spec, double x);

std::vector<double> sample_potential(const PotentialSpec& spec, const SpatialGrid& grid);
std::vector<double> sample_gradient(const PotentialSpec& spec, const SpatialGrid& grid);

} // namespace bhhg
