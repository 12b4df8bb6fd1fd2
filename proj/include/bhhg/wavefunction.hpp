#pragma once

#include "bhhg/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace bhhg {

using Complex = std::complex<double>;

/// Complex amplitudes on a SpatialGrid at time t. Normalization convention:
/// sum |psi_j|^2 dx = 1.
struct Wavefunction {
    GridPtr grid;
    std::vector<Complex> amplitudes;
    double t = 0.0;

    Wavefunction() = default;
    Wavefunction(GridPtr g, std::vector<Complex> a, double time = 0.0)
        : grid(std::move(g)), amplitudes(std::move(a)), t(time) {}

    std::size_t size() const { return amplitudes.size(); }
};

/// sum |psi_j|^2 dx.
double norm(const Wavefunction& psi);

/// Scales amplitudes so that norm becomes 1. Throws NumericsError on a null state.
void normalize(Wavefunction& psi);

/// sum f(x_j) |psi_j|^2 dx. Throws ContractViolation on length mismatch.
double expectation(const Wavefunction& psi, std::span<const double> f);

/// <psi|phi> dx (discrete inner product).
Complex inner_product(const Wavefunction& psi, const Wavefunction& phi);

/// |psi_j|^2 for all nodes.
std::vector<double> density(const Wavefunction& psi);

/// Normalized Gaussian exp(-(x-x0)^2/(4 sigma^2)) exp(i k0 x); |psi|^2 has
/// standard deviation sigma.
Wavefunction gaussian_packet(GridPtr grid, double x0, double sigma, double k0 = 0.0);

} // namespace bhhg
