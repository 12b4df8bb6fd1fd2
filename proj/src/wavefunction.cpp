#include "bhhg/wavefunction.hpp"

#include "bhhg/errors.hpp"

#include <cmath>
#include <numbers>

namespace bhhg {

double norm(const Wavefunction& psi) {
    double s = 0.0;
    for (const auto& a : psi.amplitudes)
        s += std::norm(a);
    return s * psi.grid->dx;
}

void normalize(Wavefunction& psi) {
    const double n = norm(psi);
    if (!(n > 0.0))
        throw NumericsError("normalize: wavefunction has zero or invalid norm");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : psi.amplitudes)
        a *= scale;
}

double expectation(const Wavefunction& psi, std::span<const double> f) {
    if (f.size() != psi.amplitudes.size())
        throw ContractViolation("expectation: grid function length " +
                                std::to_string(f.size()) + " != wavefunction length " +
                                std::to_string(psi.amplitudes.size()));
    double s = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j)
        s += f[j] * std::norm(psi.amplitudes[j]);
    return s * psi.grid->dx;
}

Complex inner_product(const Wavefunction& psi, const Wavefunction& phi) {
    if (psi.amplitudes.size() != phi.amplitudes.size())
        throw ContractViolation("inner_product: length mismatch");
    Complex s{0.0, 0.0};
    for (std::size_t j = 0; j < psi.amplitudes.size(); ++j)
        s += std::conj(psi.amplitudes[j]) * phi.amplitudes[j];
    return s * psi.grid->dx;
}

std::vector<double> density(const Wavefunction& psi) {
    std::vector<double> rho(psi.amplitudes.size());
    for (std::size_t j = 0; j < rho.size(); ++j)
        rho[j] = std::norm(psi.amplitudes[j]);
    return rho;
}

Wavefunction gaussian_packet(GridPtr grid, double x0, double sigma, double k0) {
    Wavefunction psi;
    psi.amplitudes.resize(grid->n_points);
    for (std::size_t j = 0; j < grid->n_points; ++j) {
        const double d = grid->x[j] - x0;
        psi.amplitudes[j] = std::polar(std::exp(-d * d / (4.0 * sigma * sigma)),
                                       k0 * grid->x[j]);
    }
    psi.grid = std::move(grid);
    normalize(psi);
    return psi;
}

} // namespace bhhg
