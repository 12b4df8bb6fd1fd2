#pragma once

#include "bhhg/grid.hpp"

#include <complex>
#include <span>
#include <vector>

namespace bhhg {

/// Complex 1D FFT pair of fixed length backed by FFTW. forward() is the
/// unnormalized DFT with e^{-ikx} convention; inverse() carries the 1/n.
/// Instances are not thread-safe; use one per thread. Plan creation is
/// internally serialized.
class Fft {
  public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(Fft&& other) noexcept;
    Fft& operator=(Fft&&) = delete;
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const { return n_; }

    void forward(std::span<std::complex<double>> data) const;
    void inverse(std::span<std::complex<double>> data) const;

  private:
    std::size_t n_ = 0;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    std::complex<double>* buf_ = nullptr;
};

/// d(psi)/dx via ik multiplication in momentum space (Nyquist mode zeroed).
std::vector<std::complex<double>> spectral_derivative(const Fft& fft, const SpatialGrid& grid,
                                                      std::span<const std::complex<double>> psi);

/// d2(psi)/dx2 via -k^2 multiplication in momentum space.
std::vector<std::complex<double>> spectral_second_derivative(
    const Fft& fft, const SpatialGrid& grid, std::span<const std::complex<double>> psi);

} // namespace bhhg
