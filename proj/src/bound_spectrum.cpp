#include "bhhg/bound_spectrum.hpp"

#include "bhhg/errors.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

namespace bhhg {

namespace {

struct Tridiagonal {
    std::vector<double> diag;
    std::vector<double> off;
};

Tridiagonal fd_hamiltonian(const SpatialGrid& grid, const std::vector<double>& potential) {
    const double inv_dx2 = 1.0 / (grid.dx * grid.dx);
    Tridiagonal h;
    h.diag.resize(grid.n_points);
    for (std::size_t j = 0; j < grid.n_points; ++j)
        h.diag[j] = inv_dx2 + potential[j];
    h.off.assign(grid.n_points - 1, -0.5 * inv_dx2);
    return h;
}

std::vector<double> stebz_range_i(Tridiagonal& h, std::size_t il, std::size_t iu) {
    const auto n = static_cast<lapack_int>(h.diag.size());
    std::vector<double> w(h.diag.size());
    std::vector<lapack_int> iblock(h.diag.size()), isplit(h.diag.size());
    lapack_int m = 0, nsplit = 0;
    const lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0,
                                           static_cast<lapack_int>(il),
                                           static_cast<lapack_int>(iu), 0.0,
                                           h.diag.data(), h.off.data(), &m, &nsplit,
                                           w.data(), iblock.data(), isplit.data());
    if (info != 0)
        throw NumericsError("bound_spectrum: dstebz failed with info = " + std::to_string(info));
    w.resize(static_cast<std::size_t>(m));
    return w;
}

} // namespace

std::vector<double> lowest_eigenvalues(const SpatialGrid& grid,
                                       const std::vector<double>& potential,
                                       std::size_t n_states) {
    if (potential.size() != grid.n_points)
        throw ContractViolation("lowest_eigenvalues: potential length mismatch");
    if (n_states < 1 || n_states > grid.n_points)
        throw ContractViolation("lowest_eigenvalues: n_states out of range");
    auto h = fd_hamiltonian(grid, potential);
    return stebz_range_i(h, 1, n_states);
}

BoundSpectrum bound_spectrum(const SpatialGrid& grid, const PotentialSpec& spec,
                             std::size_t n_states) {
    spec.validate();
    auto w = lowest_eigenvalues(grid, sample_potential(spec, grid), n_states);

    BoundSpectrum out;
    out.variant = spec.variant;
    out.requested = n_states;
    for (const double e : w)
        if (e < 0.0)
            out.energies.push_back(e);
    out.complete = out.energies.size() == n_states;
    return out;
}

std::size_t count_bound_states(const SpatialGrid& grid, const PotentialSpec& spec) {
    spec.validate();
    auto h = fd_hamiltonian(grid, sample_potential(spec, grid));
    const auto n = static_cast<lapack_int>(h.diag.size());
    std::vector<double> w(h.diag.size());
    std::vector<lapack_int> iblock(h.diag.size()), isplit(h.diag.size());
    lapack_int m = 0, nsplit = 0;
    // V >= -1 bounds the spectrum from below; count everything in (-1.5, 0).
    const lapack_int info = LAPACKE_dstebz('V', 'E', n, -1.5, 0.0, 0, 0, 0.0,
                                           h.diag.data(), h.off.data(), &m, &nsplit,
                                           w.data(), iblock.data(), isplit.data());
    if (info != 0)
        throw NumericsError("count_bound_states: dstebz failed with info = " +
                            std::to_string(info));
    return static_cast<std::size_t>(m);
}

} // namespace bhhg
