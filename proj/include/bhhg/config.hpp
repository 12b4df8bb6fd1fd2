#pragma once

#include "bhhg/potential.hpp"
#include "bhhg/propagator.hpp"
#include "bhhg/pulse.hpp"

#include <cstdint>
#include <filesystem>
#include <string>

namespace bhhg {

/// Full experiment configuration. Defaults reproduce the reference run:
/// E0 = 0.075, omega = 0.057, long-range soft core, box [-800, 800] with
/// 16384 nodes, dt = cycle/4096, 14.5 cycles.
struct RunConfig {
    // grid
    double grid_x_min = -800.0;
    double grid_x_max = 800.0;
    std::size_t grid_n_points = 16384;

    PotentialSpec potential{};
    PulseSpec pulse{};

    // schedule (0 means "derive from the pulse")
    double dt = 0.0;    ///< default cycle/4096
    double t_end = 0.0; ///< default tau_f
    std::size_t snapshot_stride = 8;
    std::size_t record_stride = 1;
    double absorber_width = 0.0; ///< 0 disables the absorbing mask
    double absorber_exponent = 0.125;
    bool accel_include_field = false;

    // bohmian ensemble
    double x0_min = -3.0;
    double x0_max = 3.0;
    std::size_t x0_count = 61;
    double rho_floor = 1e-12;
    std::size_t substeps = 8;
    double peripheral_x0 = 1.8;

    // classical scan
    std::size_t scan_points = 2000;
    double excursion_cap = 1.6;
    double x_exit = 5.0;
    bool turning_point_release = false;

    // spectral analysis
    double sigma = 0.0; ///< default 1/(3 omega)
    double harmonic_max = 80.0;
    double harmonic_step = 0.1;
    std::size_t tprime_per_cycle = 40;

    // run
    std::uint64_t seed = 1;
    std::size_t threads = 0; ///< 0 = hardware default / BHHG_THREADS

    double resolved_dt() const { return dt > 0.0 ? dt : pulse.cycle() / 4096.0; }
    double resolved_t_end() const { return t_end > 0.0 ? t_end : pulse.tau_f(); }
    double resolved_sigma() const { return sigma > 0.0 ? sigma : 1.0 / (3.0 * pulse.omega); }

    PropagationSchedule schedule() const;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;
};

/// Parses "section.key = value" lines ('#' comments, blank lines allowed).
/// Unknown keys and malformed lines are ConfigErrors carrying the line
/// number; the result is validated.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::filesystem::path& path);

} // namespace bhhg
