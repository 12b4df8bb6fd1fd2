#pragma once

#include "bhhg/classical.hpp"
#include "bhhg/pulse.hpp"
#include "bhhg/time_series.hpp"

#include <optional>
#include <vector>

namespace bhhg {

enum class SpectralWindow { none, hann };

/// One-sided power spectrum I(Omega) = |dt * DFT(h)|^2 on Omega_m =
/// 2 pi m / (n dt), m = 0..n/2.
struct PowerSpectrum {
    std::vector<double> omega;
    std::vector<double> intensity;

    std::size_t size() const { return omega.size(); }
};

/// Computes the (optionally Hann-windowed, mean-subtracted) power spectrum.
/// Throws ContractViolation for series shorter than two samples.
PowerSpectrum power_spectrum(const TimeSeries& h, SpectralWindow window = SpectralWindow::none,
                             bool subtract_mean = true);

/// |a_G(Omega, t')| on a rectangular (t', Omega) lattice.
struct TimeFrequencyMap {
    std::vector<double> t_axis;
    std::vector<double> omega_axis;
    std::vector<double> magnitude; ///< row-major [i_omega * n_t + i_t]
    double sigma = 0.0;

    double at(std::size_t i_omega, std::size_t i_t) const {
        return magnitude[i_omega * t_axis.size() + i_t];
    }
};

/// Gabor transform by direct quadrature of the Gaussian-windowed integral,
/// truncated at |t - t'| > 6 sigma. Throws ConfigError for sigma <= 0.
TimeFrequencyMap gabor_map(const TimeSeries& h, double sigma, std::vector<double> t_grid,
                           std::vector<double> omega_grid);

struct CutoffOptions {
    double plateau_low = 15.0;        ///< plateau band in harmonic orders
    double plateau_high = 30.0;
    double drop_db = 20.0;            ///< cutoff = first drop this far below plateau
    double contrast_db = 10.0;        ///< plateau detection threshold
    double median_width_harmonics = 5.0;
};

struct CutoffResult {
    std::optional<double> harmonic; ///< empty = no plateau detected
    double contrast_db = 0.0;       ///< plateau band vs post-cutoff reference band
};

/// Reads the cutoff harmonic off a spectrum: smooths log10 I with a moving
/// median over `median_width_harmonics` harmonic orders, then scans upward
/// from the plateau band for the first drop of drop_db below the plateau
/// median. A spectrum whose reference band past the predicted cutoff sits
/// within contrast_db of the plateau has no plateau.
CutoffResult cutoff_estimate(const PowerSpectrum& spectrum, double epsilon0,
                             const PulseSpec& pulse, const CutoffOptions& options = {});

struct RidgeOptions {
    double min_peak_fraction = 0.05; ///< noise floor vs regional max
    double min_prominence = 1.5;     ///< peak vs row median magnitude
    /// Minimum correlation between the two half-cycles of a row. Emission
    /// that follows the monochromatic three-step model repeats every half
    /// cycle; a row without that periodicity has no ridge to compare.
    double min_periodicity = 0.3;
};

struct RidgeOffset {
    double harmonic = 0.0;
    double t_peak = 0.0;   ///< map local-maximum time
    double offset = 0.0;   ///< t_peak - nearest classical return time
};

struct RidgeComparison {
    std::vector<RidgeOffset> offsets;
    std::vector<double> skipped_harmonics; ///< no ridge above the noise floor
};

/// For each integer harmonic in [band_low, band_high]: locates the map's
/// local maxima in the window [t_start, t_start + one cycle] and pairs each
/// with the nearest classical return time (arch t_return values replicated
/// by the half-cycle symmetry of the monochromatic ensemble).
RidgeComparison ridge_compare(const TimeFrequencyMap& map, const std::vector<ArchPoint>& arches,
                              double band_low, double band_high, double t_start,
                              const PulseSpec& pulse, const RidgeOptions& options = {});

/// Integrated map magnitude on the short-branch arch points divided by the
/// long-branch one, over [band_low, band_high] x [t_start, t_start + cycle].
double branch_magnitude_ratio(const TimeFrequencyMap& map, const std::vector<ArchPoint>& arches,
                              double band_low, double band_high, double t_start,
                              const PulseSpec& pulse);

} // namespace bhhg
