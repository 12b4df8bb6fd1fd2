#include "bhhg/fft.hpp"

#include "bhhg/errors.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

namespace bhhg {

namespace {
// FFTW's planner mutates global state; executing existing plans is safe.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0)
        throw ContractViolation("Fft: zero length");
    std::lock_guard lock(planner_mutex());
    buf_ = reinterpret_cast<std::complex<double>*>(fftw_alloc_complex(n));
    auto* b = reinterpret_cast<fftw_complex*>(buf_);
    plan_fwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_FORWARD, FFTW_MEASURE);
    plan_bwd_ = fftw_plan_dft_1d(static_cast<int>(n), b, b, FFTW_BACKWARD, FFTW_MEASURE);
    if (!plan_fwd_ || !plan_bwd_)
        throw NumericsError("Fft: FFTW plan creation failed");
}

Fft::~Fft() {
    if (plan_fwd_ || plan_bwd_ || buf_) {
        std::lock_guard lock(planner_mutex());
        if (plan_fwd_)
            fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
        if (plan_bwd_)
            fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
        if (buf_)
            fftw_free(buf_);
    }
}

Fft::Fft(Fft&& other) noexcept
    : n_(other.n_), plan_fwd_(other.plan_fwd_), plan_bwd_(other.plan_bwd_), buf_(other.buf_) {
    other.plan_fwd_ = other.plan_bwd_ = nullptr;
    other.buf_ = nullptr;
    other.n_ = 0;
}

void Fft::forward(std::span<std::complex<double>> data) const {
    if (data.size() != n_)
        throw ContractViolation("Fft::forward: length mismatch");
    std::memcpy(buf_, data.data(), n_ * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_fwd_));
    std::memcpy(data.data(), buf_, n_ * sizeof(std::complex<double>));
}

void Fft::inverse(std::span<std::complex<double>> data) const {
    if (data.size() != n_)
        throw ContractViolation("Fft::inverse: length mismatch");
    std::memcpy(buf_, data.data(), n_ * sizeof(std::complex<double>));
    fftw_execute(static_cast<fftw_plan>(plan_bwd_));
    const double scale = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i)
        data[i] = buf_[i] * scale;
}

std::vector<std::complex<double>> spectral_derivative(const Fft& fft, const SpatialGrid& grid,
                                                      std::span<const std::complex<double>> psi) {
    if (psi.size() != grid.n_points || fft.size() != grid.n_points)
        throw ContractViolation("spectral_derivative: length mismatch");
    std::vector<std::complex<double>> out(psi.begin(), psi.end());
    fft.forward(out);
    const std::size_t half = grid.n_points / 2;
    for (std::size_t m = 0; m < out.size(); ++m) {
        // The Nyquist mode has no well-defined sign; drop it from the derivative.
        const double km = (m == half) ? 0.0 : grid.k[m];
        out[m] *= std::complex<double>(0.0, km);
    }
    fft.inverse(out);
    return out;
}

std::vector<std::complex<double>> spectral_second_derivative(
    const Fft& fft, const SpatialGrid& grid, std::span<const std::complex<double>> psi) {
    if (psi.size() != grid.n_points || fft.size() != grid.n_points)
        throw ContractViolation("spectral_second_derivative: length mismatch");
    std::vector<std::complex<double>> out(psi.begin(), psi.end());
    fft.forward(out);
    for (std::size_t m = 0; m < out.size(); ++m)
        out[m] *= -grid.k[m] * grid.k[m];
    fft.inverse(out);
    return out;
}

} // namespace bhhg
