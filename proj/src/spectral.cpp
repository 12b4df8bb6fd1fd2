#include "bhhg/spectral.hpp"

#include "bhhg/errors.hpp"
#include "bhhg/fft.hpp"
#include "bhhg/parallel.hpp"
#include "bhhg/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace bhhg {

PowerSpectrum power_spectrum(const TimeSeries& h, SpectralWindow window, bool subtract_mean) {
    const std::size_t n = h.size();
    if (n < 2)
        throw ContractViolation("power_spectrum: need at least two samples");
    if (!(h.dt > 0.0))
        throw ContractViolation("power_spectrum: non-uniform or empty sampling (dt <= 0)");

    std::vector<Complex> buf(n);
    double mean = 0.0;
    if (subtract_mean) {
        for (const double v : h.values)
            mean += v;
        mean /= static_cast<double>(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double v = h.values[i] - mean;
        if (window == SpectralWindow::hann) {
            const double s = std::sin(std::numbers::pi * static_cast<double>(i) /
                                      static_cast<double>(n - 1));
            v *= s * s;
        }
        buf[i] = v;
    }

    Fft fft(n);
    fft.forward(buf);

    PowerSpectrum ps;
    const std::size_t n_out = n / 2 + 1;
    ps.omega.resize(n_out);
    ps.intensity.resize(n_out);
    const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(n) * h.dt);
    for (std::size_t m = 0; m < n_out; ++m) {
        ps.omega[m] = d_omega * static_cast<double>(m);
        ps.intensity[m] = std::norm(buf[m] * h.dt);
    }
    return ps;
}

TimeFrequencyMap gabor_map(const TimeSeries& h, double sigma, std::vector<double> t_grid,
                           std::vector<double> omega_grid) {
    if (!(sigma > 0.0))
        throw ConfigError("gabor_map: sigma must be > 0");
    if (h.size() < 2)
        throw ContractViolation("gabor_map: need at least two samples");

    const std::size_t n = h.size();
    double mean = 0.0;
    for (const double v : h.values)
        mean += v;
    mean /= static_cast<double>(n);

    TimeFrequencyMap map;
    map.sigma = sigma;
    map.t_axis = std::move(t_grid);
    map.omega_axis = std::move(omega_grid);
    map.magnitude.assign(map.t_axis.size() * map.omega_axis.size(), 0.0);

    const std::size_t n_t = map.t_axis.size();
    parallel_for(0, n_t, [&](std::size_t it) {
        const double tp = map.t_axis[it];
        // Gaussian support, truncated where the tail falls below ~1e-8
        const auto lo = static_cast<std::size_t>(
            std::max(0.0, std::ceil((tp - 6.0 * sigma - h.t0) / h.dt)));
        const auto hi = static_cast<std::size_t>(std::max(
            0.0, std::min(static_cast<double>(n - 1), std::floor((tp + 6.0 * sigma - h.t0) / h.dt))));
        for (std::size_t iw = 0; iw < map.omega_axis.size(); ++iw) {
            const double w = map.omega_axis[iw];
            std::complex<double> acc{0.0, 0.0};
            for (std::size_t i = lo; i <= hi && i < n; ++i) {
                const double t = h.time(i);
                const double d = (t - tp) / sigma;
                const double win = std::exp(-0.5 * d * d);
                acc += (h.values[i] - mean) * win *
                       std::complex<double>(std::cos(w * t), std::sin(w * t));
            }
            map.magnitude[iw * n_t + it] = std::abs(acc) * h.dt;
        }
    });
    return map;
}

namespace {

/// log10 intensity smoothed by a moving median over a fixed harmonic width.
struct SmoothedSpectrum {
    std::vector<double> harmonic; ///< Omega / omega_0
    std::vector<double> log_i;    ///< median-smoothed log10 I
};

SmoothedSpectrum smooth_log_spectrum(const PowerSpectrum& ps, double omega0, double width,
                                     double harmonic_max) {
    SmoothedSpectrum out;
    std::vector<double> raw;
    for (std::size_t m = 0; m < ps.size(); ++m) {
        const double h = ps.omega[m] / omega0;
        if (h > harmonic_max)
            break;
        out.harmonic.push_back(h);
        raw.push_back(std::log10(std::max(ps.intensity[m], 1e-300)));
    }
    out.log_i.resize(raw.size());
    std::vector<double> window;
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        while (lo < raw.size() && out.harmonic[lo] < out.harmonic[i] - 0.5 * width)
            ++lo;
        while (hi < raw.size() && out.harmonic[hi] <= out.harmonic[i] + 0.5 * width)
            ++hi;
        window.assign(raw.begin() + static_cast<std::ptrdiff_t>(lo),
                      raw.begin() + static_cast<std::ptrdiff_t>(hi));
        auto mid = window.begin() + static_cast<std::ptrdiff_t>(window.size() / 2);
        std::nth_element(window.begin(), mid, window.end());
        double med = *mid;
        if (window.size() % 2 == 0) {
            auto mid2 = std::max_element(window.begin(), mid);
            med = 0.5 * (med + *mid2);
        }
        out.log_i[i] = med;
    }
    return out;
}

double band_median(const SmoothedSpectrum& sm, double lo, double hi) {
    std::vector<double> vals;
    for (std::size_t i = 0; i < sm.harmonic.size(); ++i)
        if (sm.harmonic[i] >= lo && sm.harmonic[i] <= hi)
            vals.push_back(sm.log_i[i]);
    if (vals.empty())
        throw ContractViolation("cutoff_estimate: spectrum does not cover the requested band");
    auto mid = vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2);
    std::nth_element(vals.begin(), mid, vals.end());
    return *mid;
}

/// Median peak-to-valley contrast (dB) of the odd harmonics in the plateau
/// band. A harmonic spectrum has a strong comb; a structureless background
/// does not. Returns a large value when the resolution cannot separate
/// harmonics (the comb test is then inconclusive and skipped).
double comb_contrast_db(const PowerSpectrum& ps, double omega0, double lo, double hi) {
    std::vector<double> ratios;
    const auto band_peak = [&](double a, double b) {
        double best = 0.0;
        std::size_t count = 0;
        for (std::size_t m = 0; m < ps.size(); ++m) {
            const double h = ps.omega[m] / omega0;
            if (h < a || h > b)
                continue;
            ++count;
            best = std::max(best, ps.intensity[m]);
        }
        return count >= 3 ? best : -1.0;
    };
    const auto band_level = [&](double a, double b) {
        std::vector<double> vals;
        for (std::size_t m = 0; m < ps.size(); ++m) {
            const double h = ps.omega[m] / omega0;
            if (h >= a && h <= b)
                vals.push_back(ps.intensity[m]);
        }
        if (vals.size() < 3)
            return -1.0;
        auto mid = vals.begin() + static_cast<std::ptrdiff_t>(vals.size() / 2);
        std::nth_element(vals.begin(), mid, vals.end());
        return *mid;
    };
    for (double k = std::ceil(lo); k <= hi; k += 1.0) {
        if (std::fmod(k, 2.0) == 0.0)
            continue;
        const double peak = band_peak(k - 0.4, k + 0.4);
        const double valley = band_level(k + 0.6, k + 1.4);
        if (peak <= 0.0 || valley <= 0.0)
            continue;
        ratios.push_back(10.0 * std::log10(peak / std::max(valley, 1e-300)));
    }
    if (ratios.size() < 2)
        return std::numeric_limits<double>::max(); // unresolved: inconclusive
    auto mid = ratios.begin() + static_cast<std::ptrdiff_t>(ratios.size() / 2);
    std::nth_element(ratios.begin(), mid, ratios.end());
    return *mid;
}

} // namespace

CutoffResult cutoff_estimate(const PowerSpectrum& spectrum, double epsilon0,
                             const PulseSpec& pulse, const CutoffOptions& options) {
    const double omega0 = pulse.omega;
    const double h_pred =
        (std::abs(epsilon0) + 3.17 * ponderomotive_energy(pulse)) / omega0;
    const double h_max = 2.0 * h_pred + 8.0;
    if (spectrum.omega.empty() || spectrum.omega.back() < h_pred * omega0)
        throw ContractViolation("cutoff_estimate: spectrum does not span the predicted cutoff");

    const auto sm = smooth_log_spectrum(spectrum, omega0, options.median_width_harmonics, h_max);
    const double plateau = band_median(sm, options.plateau_low, options.plateau_high);

    // Plateau detection: a real plateau (i) has collapsed just past the
    // cutoff and (ii) carries the odd-harmonic comb; a structureless decaying
    // background fails one of the two.
    const double ref_lo = 1.25 * h_pred;
    const double ref_hi = 1.55 * h_pred;
    const double reference = band_median(sm, ref_lo, ref_hi);
    CutoffResult result;
    result.contrast_db = 10.0 * (plateau - reference);
    if (result.contrast_db < options.contrast_db)
        return result; // no plateau
    if (comb_contrast_db(spectrum, omega0, options.plateau_low, options.plateau_high) <
        options.contrast_db)
        return result; // no harmonic comb -> no plateau

    const double threshold = plateau - options.drop_db / 10.0;
    for (std::size_t i = 0; i < sm.harmonic.size(); ++i) {
        if (sm.harmonic[i] < options.plateau_low)
            continue;
        if (sm.log_i[i] < threshold) {
            result.harmonic = sm.harmonic[i];
            break;
        }
    }
    return result;
}

namespace {

std::size_t nearest_index(const std::vector<double>& axis, double value) {
    const auto it = std::lower_bound(axis.begin(), axis.end(), value);
    if (it == axis.begin())
        return 0;
    if (it == axis.end())
        return axis.size() - 1;
    const auto hi = static_cast<std::size_t>(it - axis.begin());
    return (value - axis[hi - 1] <= axis[hi] - value) ? hi - 1 : hi;
}

/// Pearson correlation between the two half-cycles of a row sampled on a
/// uniform t' grid; -1 when either half is flat.
double half_cycle_correlation(const std::vector<double>& row, double dt, double cycle) {
    const auto half = static_cast<std::size_t>(std::llround(0.5 * cycle / dt));
    if (half == 0 || 2 * half > row.size())
        return -1.0;
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        m1 += row[i];
        m2 += row[i + half];
    }
    m1 /= static_cast<double>(half);
    m2 /= static_cast<double>(half);
    double s11 = 0.0, s22 = 0.0, s12 = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
        const double a = row[i] - m1;
        const double b = row[i + half] - m2;
        s11 += a * a;
        s22 += b * b;
        s12 += a * b;
    }
    if (s11 <= 0.0 || s22 <= 0.0)
        return -1.0;
    return s12 / std::sqrt(s11 * s22);
}

/// Classical return times for one harmonic, replicated into [t_start,
/// t_start + cycle) by the half-cycle symmetry of the monochromatic scan.
std::vector<double> classical_times(const std::vector<ArchPoint>& arches, double harmonic,
                                    double half_width, double t_start, double cycle) {
    std::vector<double> times;
    for (const auto& p : arches) {
        if (std::abs(p.harmonic_order - harmonic) > half_width)
            continue;
        const double base = std::fmod(p.t_return, 0.5 * cycle);
        for (double t = t_start + base; t < t_start + cycle + 1e-12; t += 0.5 * cycle)
            times.push_back(t);
    }
    return times;
}

} // namespace

RidgeComparison ridge_compare(const TimeFrequencyMap& map, const std::vector<ArchPoint>& arches,
                              double band_low, double band_high, double t_start,
                              const PulseSpec& pulse, const RidgeOptions& options) {
    const double cycle = pulse.cycle();
    const double t_end = t_start + cycle;

    std::size_t it_lo = map.t_axis.size(), it_hi = 0;
    for (std::size_t i = 0; i < map.t_axis.size(); ++i) {
        if (map.t_axis[i] >= t_start && map.t_axis[i] <= t_end) {
            it_lo = std::min(it_lo, i);
            it_hi = std::max(it_hi, i);
        }
    }
    if (it_lo >= it_hi)
        throw ContractViolation("ridge_compare: map does not cover the requested window");

    // Regional noise floor: fraction of the largest magnitude in the
    // (band x window) submatrix.
    double regional_max = 0.0;
    for (double h = std::ceil(band_low); h <= band_high; h += 1.0) {
        const std::size_t iw = nearest_index(map.omega_axis, h * pulse.omega);
        for (std::size_t it = it_lo; it <= it_hi; ++it)
            regional_max = std::max(regional_max, map.at(iw, it));
    }
    const double floor = options.min_peak_fraction * regional_max;

    RidgeComparison out;
    for (double h = std::ceil(band_low); h <= band_high; h += 1.0) {
        const std::size_t iw = nearest_index(map.omega_axis, h * pulse.omega);

        std::vector<double> row(it_hi - it_lo + 1);
        for (std::size_t it = it_lo; it <= it_hi; ++it)
            row[it - it_lo] = map.at(iw, it);
        std::vector<double> sorted = row;
        std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                         sorted.end());
        const double row_median = sorted[sorted.size() / 2];

        if (half_cycle_correlation(row, map.t_axis[it_lo + 1] - map.t_axis[it_lo], cycle) <
            options.min_periodicity) {
            out.skipped_harmonics.push_back(h);
            continue;
        }

        const auto classical = classical_times(arches, h, 0.5, t_start, cycle);

        bool found = false;
        for (std::size_t i = 1; i + 1 < row.size(); ++i) {
            if (row[i] <= row[i - 1] || row[i] < row[i + 1])
                continue; // not a local max
            if (row[i] < floor || row[i] < options.min_prominence * row_median)
                continue;
            if (classical.empty())
                continue;
            const double t_peak = map.t_axis[it_lo + i];
            double best = classical.front();
            for (const double tc : classical)
                if (std::abs(tc - t_peak) < std::abs(best - t_peak))
                    best = tc;
            out.offsets.push_back({h, t_peak, t_peak - best});
            found = true;
        }
        if (!found)
            out.skipped_harmonics.push_back(h);
    }
    return out;
}

double branch_magnitude_ratio(const TimeFrequencyMap& map, const std::vector<ArchPoint>& arches,
                              double band_low, double band_high, double t_start,
                              const PulseSpec& pulse) {
    const double cycle = pulse.cycle();
    double short_sum = 0.0, long_sum = 0.0;
    for (const auto& p : arches) {
        if (p.harmonic_order < band_low || p.harmonic_order > band_high)
            continue;
        if (p.branch == ReturnBranch::later)
            continue;
        const std::size_t iw = nearest_index(map.omega_axis, p.harmonic_order * pulse.omega);
        const double base = std::fmod(p.t_return, 0.5 * cycle);
        for (double t = t_start + base; t < t_start + cycle + 1e-12; t += 0.5 * cycle) {
            if (t < map.t_axis.front() || t > map.t_axis.back())
                continue;
            const double mag = map.at(iw, nearest_index(map.t_axis, t));
            if (p.branch == ReturnBranch::short_traj)
                short_sum += mag;
            else
                long_sum += mag;
        }
    }
    if (long_sum <= 0.0)
        throw NumericsError("branch_magnitude_ratio: no long-branch coverage in the window");
    return short_sum / long_sum;
}

} // namespace bhhg
