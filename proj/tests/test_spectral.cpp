#include "bhhg/errors.hpp"
#include "bhhg/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>

using namespace bhhg;

namespace {

const PulseSpec kPulse{};

TimeSeries sampled(double t0, double dt, std::size_t n, const std::function<double(double)>& f) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = f(t0 + dt * static_cast<double>(i));
    return TimeSeries(t0, dt, std::move(v));
}

} // namespace

TEST_CASE("pure tone concentrates in one bin with a hann window") {
    const std::size_t n = 1 << 14;
    const double dt = 0.05;
    const double bin = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    const double w0 = 200.5 * bin * 2.0; // exactly on bin 401
    const auto h = sampled(0.0, dt, n, [&](double t) { return std::sin(w0 * t); });

    const auto ps = power_spectrum(h, SpectralWindow::hann);
    std::size_t peak = 0;
    for (std::size_t m = 1; m < ps.size(); ++m)
        if (ps.intensity[m] > ps.intensity[peak])
            peak = m;
    CHECK(std::abs(ps.omega[peak] - w0) < bin);

    // side bins far from the peak sit >= 60 dB down
    double worst = 0.0;
    for (std::size_t m = 0; m < ps.size(); ++m)
        if (std::llabs(static_cast<long long>(m) - static_cast<long long>(peak)) > 8)
            worst = std::max(worst, ps.intensity[m]);
    CHECK(10.0 * std::log10(ps.intensity[peak] / worst) >= 60.0);
}

TEST_CASE("parseval without a window") {
    const std::size_t n = 4096;
    const double dt = 0.11;
    auto h = sampled(0.0, dt, n, [](double t) {
        return std::sin(0.7 * t) + 0.4 * std::cos(2.9 * t + 0.3);
    });

    const auto ps = power_spectrum(h, SpectralWindow::none, /*subtract_mean=*/true);

    // reconstruct the two-sided sum: bins 1..n/2-1 appear twice for real input
    double two_sided = ps.intensity[0] + ps.intensity[n / 2];
    for (std::size_t m = 1; m < n / 2; ++m)
        two_sided += 2.0 * ps.intensity[m];

    double mean = 0.0;
    for (const double v : h.values)
        mean += v;
    mean /= static_cast<double>(n);
    double sum_sq = 0.0;
    for (const double v : h.values)
        sum_sq += (v - mean) * (v - mean);

    const double d_omega = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    const double lhs = two_sided * d_omega / (2.0 * std::numbers::pi);
    const double rhs = dt * sum_sq;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("power_spectrum input validation") {
    TimeSeries tiny(0.0, 0.1, {1.0});
    CHECK_THROWS_AS(power_spectrum(tiny), ContractViolation);
    TimeSeries bad(0.0, 0.0, {1.0, 2.0});
    CHECK_THROWS_AS(power_spectrum(bad), ContractViolation);
}

TEST_CASE("huge-sigma gabor column reproduces the spectrum shape") {
    const std::size_t n = 2048;
    const double dt = 0.2;
    const auto h = sampled(0.0, dt, n, [](double t) {
        return std::sin(0.9 * t) + 0.6 * std::sin(1.7 * t + 0.4);
    });
    const auto ps = power_spectrum(h, SpectralWindow::none);

    std::vector<double> omegas;
    for (std::size_t m = 1; m < 200; m += 2)
        omegas.push_back(ps.omega[m]);
    const auto map = gabor_map(h, 1e6, {0.5 * dt * n}, omegas);

    // correlation between |a_G| column and sqrt(I) on the same frequencies
    double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
    const auto count = static_cast<double>(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double x = map.at(i, 0);
        const double y = std::sqrt(ps.intensity[1 + 2 * i]);
        sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
    }
    const double r = (count * sxy - sx * sy) /
                     std::sqrt((count * sxx - sx * sx) * (count * syy - sy * sy));
    CHECK(r > 0.999);
}

TEST_CASE("gabor ridge follows a linear chirp") {
    const double dt = 0.05;
    const std::size_t n = 20000;
    const double w1 = 0.5, beta = 1e-3;
    const auto h = sampled(0.0, dt, n, [&](double t) {
        return std::sin(w1 * t + 0.5 * beta * t * t);
    });

    std::vector<double> omegas;
    const double d_omega = 0.01;
    for (double w = 0.3; w <= 1.8; w += d_omega)
        omegas.push_back(w);
    const std::vector<double> ts{200.0, 400.0, 600.0, 800.0};
    const auto map = gabor_map(h, 30.0, ts, omegas);

    for (std::size_t it = 0; it < ts.size(); ++it) {
        std::size_t best = 0;
        for (std::size_t iw = 1; iw < omegas.size(); ++iw)
            if (map.at(iw, it) > map.at(best, it))
                best = iw;
        const double expected = w1 + beta * ts[it]; // instantaneous frequency
        CHECK(std::abs(omegas[best] - expected) <= d_omega + 1e-12);
    }
}

TEST_CASE("gabor rejects a non-positive window width") {
    const auto h = sampled(0.0, 0.1, 64, [](double t) { return std::sin(t); });
    CHECK_THROWS_AS(gabor_map(h, 0.0, {1.0}, {1.0}), ConfigError);
    CHECK_THROWS_AS(gabor_map(h, -2.0, {1.0}, {1.0}), ConfigError);
}

namespace {

/// Synthetic spectrum: odd-harmonic comb on a plateau, a cliff past the
/// cutoff harmonic, and a flat floor.
PowerSpectrum synthetic_plateau(double omega0, double cutoff_harmonic, bool comb = true) {
    PowerSpectrum ps;
    const double d_omega = omega0 / 14.5;
    for (double w = 0.0; w <= 80.0 * omega0; w += d_omega) {
        const double h = w / omega0;
        double log_i;
        if (h < 10.0)
            log_i = 2.0 - 0.4 * h;
        else if (h < cutoff_harmonic)
            log_i = -4.0;
        else
            log_i = std::max(-4.0 - 1.2 * (h - cutoff_harmonic), -12.0);
        if (comb && h > 10.0 && h < cutoff_harmonic) {
            const double frac = std::abs(h / 2.0 - std::floor(h / 2.0) - 0.5); // 0 at odd
            if (frac < 0.05)
                log_i += 3.0;
        }
        ps.omega.push_back(w);
        ps.intensity.push_back(std::pow(10.0, log_i));
    }
    return ps;
}

} // namespace

TEST_CASE("cutoff estimate finds the cliff of a synthetic plateau") {
    const auto ps = synthetic_plateau(kPulse.omega, 36.0);
    const auto cut = cutoff_estimate(ps, -0.66995, kPulse);
    REQUIRE(cut.harmonic.has_value());
    // plateau median -4, cliff 1.2 decades/harmonic: -20 dB at 36 + 2/1.2
    CHECK(*cut.harmonic == doctest::Approx(37.7).epsilon(2.5 / 37.7));
    CHECK(cut.contrast_db > 10.0);
}

TEST_CASE("smooth comb-free background is flagged no-plateau") {
    PowerSpectrum ps;
    const double d_omega = kPulse.omega / 14.5;
    for (double w = 0.0; w <= 80.0 * kPulse.omega; w += d_omega) {
        const double h = w / kPulse.omega;
        ps.omega.push_back(w);
        ps.intensity.push_back(std::pow(10.0, 2.0 - 0.12 * h)); // smooth decay
    }
    const auto cut = cutoff_estimate(ps, -0.66995, kPulse);
    CHECK_FALSE(cut.harmonic.has_value());
}

TEST_CASE("cutoff estimate demands coverage past the predicted cutoff") {
    PowerSpectrum ps;
    for (double w = 0.0; w <= 20.0 * kPulse.omega; w += kPulse.omega / 14.5) {
        ps.omega.push_back(w);
        ps.intensity.push_back(1.0);
    }
    CHECK_THROWS_AS(cutoff_estimate(ps, -0.66995, kPulse), ContractViolation);
}

namespace {

/// Map with Gaussian ridges at the classical return times, repeating every
/// half cycle, plus an arch table matching them exactly.
struct SyntheticRidges {
    TimeFrequencyMap map;
    std::vector<ArchPoint> arches;
};

SyntheticRidges make_ridges(double t_start) {
    SyntheticRidges out;
    const double cycle = kPulse.cycle();
    const double dt = cycle / 40.0;
    for (double t = t_start; t <= t_start + 2.0 * cycle; t += dt)
        out.map.t_axis.push_back(t);
    for (double h = 10.0; h <= 40.0; h += 0.5)
        out.map.omega_axis.push_back(h * kPulse.omega);
    out.map.sigma = 1.0 / (3.0 * kPulse.omega);
    out.map.magnitude.assign(out.map.t_axis.size() * out.map.omega_axis.size(), 0.0);

    for (double h = 12.0; h <= 35.0; h += 1.0) {
        // one short and one long return per half cycle, harmonic-dependent
        const double ts = (0.55 + 0.004 * h) * cycle;
        const double tl = (1.20 - 0.004 * h) * cycle;
        ArchPoint s;
        s.t_return = std::fmod(ts, cycle);
        s.harmonic_order = h;
        s.branch = ReturnBranch::short_traj;
        ArchPoint l = s;
        l.t_return = std::fmod(tl, cycle);
        l.branch = ReturnBranch::long_traj;
        out.arches.push_back(s);
        out.arches.push_back(l);
    }

    for (std::size_t iw = 0; iw < out.map.omega_axis.size(); ++iw) {
        const double h = out.map.omega_axis[iw] / kPulse.omega;
        for (const auto& p : out.arches) {
            if (std::abs(p.harmonic_order - h) > 0.9)
                continue;
            const double weight = p.branch == ReturnBranch::short_traj ? 3.0 : 1.0;
            const double base = std::fmod(p.t_return, 0.5 * cycle);
            for (std::size_t it = 0; it < out.map.t_axis.size(); ++it) {
                const double t = out.map.t_axis[it];
                const double phase = std::fmod(t - t_start, 0.5 * cycle);
                const double d = std::min(std::abs(phase - base),
                                          0.5 * cycle - std::abs(phase - base));
                out.map.magnitude[iw * out.map.t_axis.size() + it] +=
                    weight * std::exp(-d * d / (2.0 * 3.0 * 3.0)) *
                    std::exp(-0.5 * std::pow((p.harmonic_order - h) / 0.5, 2));
            }
        }
    }
    return out;
}

} // namespace

TEST_CASE("ridge compare is exact on delta ridges at the classical times") {
    const double t_start = 5.0 * kPulse.cycle();
    const auto synth = make_ridges(t_start);

    const auto cmp = ridge_compare(synth.map, synth.arches, 15.0, 30.0, t_start, kPulse);
    CHECK(cmp.skipped_harmonics.empty());
    REQUIRE_FALSE(cmp.offsets.empty());
    for (const auto& off : cmp.offsets)
        CHECK(std::abs(off.offset) <= kPulse.cycle() / 40.0 + 1e-9); // one t' grid step
}

TEST_CASE("aperiodic rows are skipped") {
    const double t_start = 5.0 * kPulse.cycle();
    auto synth = make_ridges(t_start);
    // destroy the half-cycle periodicity: wipe the second half of the window
    const std::size_t n_t = synth.map.t_axis.size();
    for (std::size_t iw = 0; iw < synth.map.omega_axis.size(); ++iw)
        for (std::size_t it = 0; it < n_t; ++it)
            if (std::fmod(synth.map.t_axis[it] - t_start, kPulse.cycle()) >
                0.5 * kPulse.cycle())
                synth.map.magnitude[iw * n_t + it] = 0.01;
    const auto cmp = ridge_compare(synth.map, synth.arches, 15.0, 30.0, t_start, kPulse);
    CHECK(cmp.offsets.empty());
    CHECK(cmp.skipped_harmonics.size() == 16);
}

TEST_CASE("branch ratio reflects the injected short/long weights") {
    const double t_start = 5.0 * kPulse.cycle();
    const auto synth = make_ridges(t_start);
    const double r = branch_magnitude_ratio(synth.map, synth.arches, 15.0, 30.0, t_start, kPulse);
    // short ridges carry 3x the long weight; wings of the neighbors dilute it
    CHECK(r > 1.3);
    CHECK(r < 4.5);
}
