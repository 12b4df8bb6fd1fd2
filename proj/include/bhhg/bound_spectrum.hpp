#pragma once

#include "bhhg/grid.hpp"
#include "bhhg/potential.hpp"

#include <cstddef>
#include <vector>

namespace bhhg {

/// Ordered bound (negative) eigenvalues of -1/2 d2/dx2 + V on a grid.
struct BoundSpectrum {
    std::vector<double> energies; ///< strictly increasing, all < 0
    PotentialKind variant = PotentialKind::softcore_long;
    std::size_t requested = 0;
    bool complete = true; ///< false when fewer bound states exist than requested
};

/// Lowest n_states eigenvalues of the three-point finite-difference
/// Hamiltonian (Dirichlet box), keeping only the negative ones.
BoundSpectrum bound_spectrum(const SpatialGrid& grid, const PotentialSpec& spec,
                             std::size_t n_states);

/// Test hook: arbitrary sampled potential.
std::vector<double> lowest_eigenvalues(const SpatialGrid& grid,
                                       const std::vector<double>& potential,
                                       std::size_t n_states);

/// Number of negative eigenvalues on this grid.
std::size_t count_bound_states(const SpatialGrid& grid, const PotentialSpec& spec);

} // namespace bhhg
