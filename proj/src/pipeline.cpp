#include "bhhg/pipeline.hpp"

#include "bhhg/bohmian.hpp"
#include "bhhg/bound_spectrum.hpp"
#include "bhhg/classical.hpp"
#include "bhhg/csv.hpp"
#include "bhhg/errors.hpp"
#include "bhhg/parallel.hpp"
#include "bhhg/propagator.hpp"
#include "bhhg/snapshot_io.hpp"
#include "bhhg/spectral.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace bhhg {

namespace fs = std::filesystem;

Pipeline pipeline_from_string(const std::string& name) {
    static const std::map<std::string, Pipeline> names = {
        {"eigen", Pipeline::eigen},         {"propagate", Pipeline::propagate},
        {"bohmian", Pipeline::bohmian},     {"classical", Pipeline::classical},
        {"spectrum", Pipeline::spectrum},   {"gabor", Pipeline::gabor},
        {"fig1", Pipeline::fig1},           {"fig3", Pipeline::fig3},
    };
    const auto it = names.find(name);
    if (it == names.end())
        throw ConfigError("unknown pipeline '" + name +
                          "' (expected eigen|propagate|bohmian|classical|spectrum|gabor|fig1|fig3)");
    return it->second;
}

std::string to_string(Pipeline pipeline) {
    switch (pipeline) {
    case Pipeline::eigen: return "eigen";
    case Pipeline::propagate: return "propagate";
    case Pipeline::bohmian: return "bohmian";
    case Pipeline::classical: return "classical";
    case Pipeline::spectrum: return "spectrum";
    case Pipeline::gabor: return "gabor";
    case Pipeline::fig1: return "fig1";
    case Pipeline::fig3: return "fig3";
    }
    return "?";
}

namespace {

std::string variant_tag(const PotentialSpec& spec) {
    return spec.variant == PotentialKind::softcore_long ? "softcore" : "truncated";
}

/// Output directory plus the list of files the running pipeline has written,
/// for the manifest and for cleanup on failure.
class StageContext {
  public:
    explicit StageContext(fs::path out_dir) : out_(std::move(out_dir)) {
        fs::create_directories(out_);
    }

    const fs::path& dir() const { return out_; }

    fs::path claim(const std::string& name) {
        written_.push_back(name);
        return out_ / name;
    }
    bool exists(const std::string& name) const { return fs::exists(out_ / name); }

    const std::vector<std::string>& written() const { return written_; }

    void remove_written() {
        for (const auto& name : written_) {
            std::error_code ec;
            fs::remove(out_ / name, ec);
        }
    }

  private:
    fs::path out_;
    std::vector<std::string> written_;
};

std::vector<double> ensemble_starts(const RunConfig& c) {
    std::set<double> starts;
    for (std::size_t i = 0; i < c.x0_count; ++i) {
        const double w = c.x0_count == 1
                             ? 0.0
                             : static_cast<double>(i) / static_cast<double>(c.x0_count - 1);
        starts.insert(c.x0_min + w * (c.x0_max - c.x0_min));
    }
    starts.insert(0.0);
    starts.insert(c.peripheral_x0);
    return {starts.begin(), starts.end()};
}

std::string x0_label(double x0) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%+.3f", x0);
    return buf;
}

std::string snapshots_name(const RunConfig& c) {
    return "snapshots_" + variant_tag(c.potential) + ".bhh1";
}

std::string trajectory_name(const RunConfig& c, double x0) {
    return "bohmian_" + variant_tag(c.potential) + "_x0_" + x0_label(x0) + ".csv";
}

TimeSeries read_series_csv(const fs::path& path, std::size_t value_column = 1) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read " + path.string());
    std::string line;
    std::getline(in, line); // header
    std::vector<double> t, v;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(row, cell, ','))
            cells.push_back(std::strtod(cell.c_str(), nullptr));
        if (cells.size() <= value_column)
            throw ConfigError("malformed series row in " + path.string());
        t.push_back(cells[0]);
        v.push_back(cells[value_column]);
    }
    if (t.size() < 2)
        throw ConfigError("series too short in " + path.string());
    return TimeSeries(t.front(), t[1] - t[0], std::move(v));
}

// ---- stages -------------------------------------------------------------

void stage_eigen(StageContext& ctx, const RunConfig& c) {
    const SpatialGrid grid = make_grid(c.grid_x_min, c.grid_x_max, c.grid_n_points);
    for (const auto variant : {PotentialKind::softcore_long, PotentialKind::softcore_truncated}) {
        PotentialSpec spec = c.potential;
        spec.variant = variant;
        const auto bs = bound_spectrum(grid, spec, 17);
        write_bound_spectrum_csv(ctx.claim("eigenvalues_" + variant_tag(spec) + ".csv"), bs);
    }
}

void stage_propagate(StageContext& ctx, const RunConfig& c) {
    const GridPtr grid = make_shared_grid(c.grid_x_min, c.grid_x_max, c.grid_n_points);
    const auto gs = ground_state(grid, c.potential);

    const Propagator prop(grid, c.potential, c.pulse);
    SnapshotWriter writer(ctx.claim(snapshots_name(c)));
    const auto result =
        prop.propagate(gs.psi, c.schedule(), [&](const Wavefunction& w) { writer.append(w); });

    const std::string tag = variant_tag(c.potential);
    write_series_csv(ctx.claim("accel_" + tag + ".csv"), result.accel, "a");
    write_series_csv(ctx.claim("field_" + tag + ".csv"), result.field, "E");

    std::ofstream gs_out(ctx.claim("ground_state_" + tag + ".txt"));
    gs_out << "epsilon0 = " << format_double(gs.energy) << "\n"
           << "iterations = " << gs.iterations << "\n"
           << "norm_drift = " << format_double(norm(result.final_state) - 1.0) << "\n";
}

void require_snapshots(StageContext& ctx, const RunConfig& c) {
    if (!ctx.exists(snapshots_name(c)))
        stage_propagate(ctx, c);
}

void stage_bohmian(StageContext& ctx, const RunConfig& c) {
    require_snapshots(ctx, c);
    const SnapshotFileSource snaps(ctx.dir() / snapshots_name(c));

    const auto starts = ensemble_starts(c);
    BohmianOptions opts;
    opts.rho_floor = c.rho_floor;
    opts.substeps = c.substeps;
    const auto trajectories = integrate_trajectories(snaps, starts, opts);

    const std::string tag = variant_tag(c.potential);
    std::ofstream manifest(ctx.claim("trajectories_" + tag + ".csv"));
    manifest << "file,kind,x0,exited\n";
    for (const auto& traj : trajectories) {
        const std::string name = trajectory_name(c, traj.x0);
        write_trajectory_csv(ctx.claim(name), traj);
        manifest << name << ',' << to_string(traj.kind) << ',' << format_double(traj.x0) << ','
                 << (traj.exited_grid ? 1 : 0) << "\n";
    }
}

void require_trajectory(StageContext& ctx, const RunConfig& c, double x0) {
    if (!ctx.exists(trajectory_name(c, x0)))
        stage_bohmian(ctx, c);
}

void stage_classical(StageContext& ctx, const RunConfig& c) {
    ArchScanOptions opts;
    opts.points_per_half_cycle = c.scan_points;
    opts.excursion_cap_cycles = c.excursion_cap;
    opts.x_exit = c.x_exit;
    opts.release_from_turning_point = c.turning_point_release;

    const GridPtr grid = make_shared_grid(c.grid_x_min, c.grid_x_max, c.grid_n_points);
    const double eps0 = ground_state(grid, c.potential).energy;

    write_arch_csv(ctx.claim("arches_free.csv"), arch_curves(c.pulse, std::nullopt, eps0, opts));
    write_arch_csv(ctx.claim("arches_" + variant_tag(c.potential) + ".csv"),
                   arch_curves(c.pulse, c.potential, eps0, opts));
}

void stage_spectrum(StageContext& ctx, const RunConfig& c) {
    const std::string tag = variant_tag(c.potential);
    if (!ctx.exists("accel_" + tag + ".csv"))
        stage_propagate(ctx, c);
    require_trajectory(ctx, c, 0.0);
    require_trajectory(ctx, c, c.peripheral_x0);

    const auto accel = read_series_csv(ctx.dir() / ("accel_" + tag + ".csv"));
    const auto central = read_series_csv(ctx.dir() / trajectory_name(c, 0.0));
    const auto peripheral = read_series_csv(ctx.dir() / trajectory_name(c, c.peripheral_x0));

    const GridPtr grid = make_shared_grid(c.grid_x_min, c.grid_x_max, c.grid_n_points);
    const double eps0 = ground_state(grid, c.potential).energy;

    std::ofstream cuts(ctx.claim("cutoffs_" + tag + ".csv"));
    cuts << "series,cutoff_harmonic,contrast_db\n";
    const std::pair<std::string, const TimeSeries*> jobs[] = {
        {"accel", &accel}, {"central", &central}, {"peripheral", &peripheral}};
    for (const auto& [name, series] : jobs) {
        const auto ps = power_spectrum(*series, SpectralWindow::hann);
        write_spectrum_csv(ctx.claim("spectrum_" + name + "_" + tag + ".csv"), ps, c.pulse.omega);
        const auto cut = cutoff_estimate(ps, eps0, c.pulse);
        cuts << name << ','
             << (cut.harmonic ? format_double(*cut.harmonic) : std::string("no-plateau")) << ','
             << format_double(cut.contrast_db) << "\n";
    }
}

std::vector<double> omega_grid_from(const RunConfig& c) {
    std::vector<double> grid;
    for (double h = 0.0; h <= c.harmonic_max + 1e-9; h += c.harmonic_step)
        grid.push_back(h * c.pulse.omega);
    return grid;
}

std::vector<double> tprime_grid(const RunConfig& c, double t_lo, double t_hi) {
    const double step = c.pulse.cycle() / static_cast<double>(c.tprime_per_cycle);
    std::vector<double> grid;
    for (double t = t_lo; t <= t_hi + 1e-9; t += step)
        grid.push_back(t);
    return grid;
}

void stage_gabor(StageContext& ctx, const RunConfig& c) {
    const std::string tag = variant_tag(c.potential);
    require_trajectory(ctx, c, 0.0);
    require_trajectory(ctx, c, c.peripheral_x0);

    const double sigma = c.resolved_sigma();
    const auto omega_grid = omega_grid_from(c);
    const auto t_grid = tprime_grid(c, c.pulse.tau_on(), c.pulse.tau_off());

    const std::pair<std::string, double> jobs[] = {{"central", 0.0},
                                                   {"peripheral", c.peripheral_x0}};
    for (const auto& [name, x0] : jobs) {
        const auto series = read_series_csv(ctx.dir() / trajectory_name(c, x0));
        const auto map = gabor_map(series, sigma, t_grid, omega_grid);
        write_map_csv(ctx.claim("gabor_" + name + "_" + tag + ".csv"), map, c.pulse.omega,
                      c.pulse.cycle());
    }
}

void stage_fig1(StageContext& ctx, const RunConfig& c) {
    stage_spectrum(ctx, c); // chains propagate + bohmian as needed
}

void stage_fig3(StageContext& ctx, const RunConfig& base) {
    for (const auto variant : {PotentialKind::softcore_long, PotentialKind::softcore_truncated}) {
        RunConfig c = base;
        c.potential.variant = variant;
        stage_gabor(ctx, c); // chains propagate + bohmian for this variant
        stage_classical(ctx, c);

        // Peripheral-trajectory panel windows (caption presets, in cycles):
        // still near the core vs after it has left.
        const bool truncated = variant == PotentialKind::softcore_truncated;
        const double near_lo = truncated ? 4.0 : 5.0;
        const double far_lo = truncated ? 6.0 : 9.0;
        const double cycle = c.pulse.cycle();
        const std::string tag = variant_tag(c.potential);

        const auto omega_grid = omega_grid_from(c);
        const auto peripheral =
            read_series_csv(ctx.dir() / trajectory_name(c, c.peripheral_x0));
        const std::pair<std::string, double> windows[] = {{"near", near_lo}, {"far", far_lo}};
        for (const auto& [label, lo] : windows) {
            const auto t_grid = tprime_grid(c, lo * cycle, (lo + 1.0) * cycle);
            const auto map = gabor_map(peripheral, c.resolved_sigma(), t_grid, omega_grid);
            write_map_csv(ctx.claim("gabor_peripheral_" + label + "_" + tag + ".csv"), map,
                          c.pulse.omega, cycle);
        }
    }
}

void write_manifest(StageContext& ctx, const RunConfig& c, Pipeline pipeline) {
    std::ofstream out(ctx.dir() / "manifest.txt", std::ios::trunc);
    out << "bohmian-hhg " << kVersion << "\n";
    out << "pipeline = " << to_string(pipeline) << "\n\n";
    out << "[parameters]\n";
    out << "grid.x_min = " << format_double(c.grid_x_min) << "\n";
    out << "grid.x_max = " << format_double(c.grid_x_max) << "\n";
    out << "grid.n_points = " << c.grid_n_points << "\n";
    out << "potential.variant = " << variant_tag(c.potential) << "\n";
    out << "potential.a0 = " << format_double(c.potential.a0) << "\n";
    out << "potential.L = " << format_double(c.potential.L) << "\n";
    out << "pulse.E0 = " << format_double(c.pulse.E0) << "\n";
    out << "pulse.omega = " << format_double(c.pulse.omega) << "\n";
    out << "pulse.n_ramp = " << format_double(c.pulse.n_ramp) << "\n";
    out << "pulse.n_flat = " << format_double(c.pulse.n_flat) << "\n";
    out << "schedule.dt = " << format_double(c.resolved_dt()) << "\n";
    out << "schedule.t_end = " << format_double(c.resolved_t_end()) << "\n";
    out << "schedule.snapshot_stride = " << c.snapshot_stride << "\n";
    out << "schedule.record_stride = " << c.record_stride << "\n";
    out << "schedule.absorber_width = " << format_double(c.absorber_width) << "\n";
    out << "schedule.absorber_exponent = " << format_double(c.absorber_exponent) << "\n";
    out << "bohmian.x0_min = " << format_double(c.x0_min) << "\n";
    out << "bohmian.x0_max = " << format_double(c.x0_max) << "\n";
    out << "bohmian.x0_count = " << c.x0_count << "\n";
    out << "bohmian.rho_floor = " << format_double(c.rho_floor) << "\n";
    out << "bohmian.substeps = " << c.substeps << "\n";
    out << "bohmian.peripheral_x0 = " << format_double(c.peripheral_x0) << "\n";
    out << "classical.scan_points = " << c.scan_points << "\n";
    out << "classical.excursion_cap = " << format_double(c.excursion_cap) << "\n";
    out << "classical.x_exit = " << format_double(c.x_exit) << "\n";
    out << "spectral.sigma = " << format_double(c.resolved_sigma()) << "\n";
    out << "spectral.harmonic_max = " << format_double(c.harmonic_max) << "\n";
    out << "spectral.harmonic_step = " << format_double(c.harmonic_step) << "\n";
    out << "spectral.tprime_per_cycle = " << c.tprime_per_cycle << "\n";
    out << "run.seed = " << c.seed << "\n\n";
    out << "[outputs]\n";
    std::vector<std::string> sorted = ctx.written();
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (const auto& name : sorted)
        out << name << "\n";
}

} // namespace

std::vector<std::string> run_pipeline(const RunConfig& config, Pipeline pipeline,
                                      const fs::path& out_dir) {
    config.validate();
    if (config.threads > 0)
        set_thread_count(config.threads);

    StageContext ctx(out_dir);
    const std::string stage = to_string(pipeline);
    try {
        switch (pipeline) {
        case Pipeline::eigen: stage_eigen(ctx, config); break;
        case Pipeline::propagate: stage_propagate(ctx, config); break;
        case Pipeline::bohmian: stage_bohmian(ctx, config); break;
        case Pipeline::classical: stage_classical(ctx, config); break;
        case Pipeline::spectrum: stage_spectrum(ctx, config); break;
        case Pipeline::gabor: stage_gabor(ctx, config); break;
        case Pipeline::fig1: stage_fig1(ctx, config); break;
        case Pipeline::fig3: stage_fig3(ctx, config); break;
        }
    } catch (const ConfigError& e) {
        ctx.remove_written();
        throw ConfigError("pipeline " + stage + ": " + e.what());
    } catch (const ContractViolation& e) {
        ctx.remove_written();
        throw ContractViolation("pipeline " + stage + ": " + e.what());
    } catch (const ConvergenceError& e) {
        ctx.remove_written();
        throw ConvergenceError("pipeline " + stage + ": " + e.what());
    } catch (const Error& e) {
        ctx.remove_written();
        throw NumericsError("pipeline " + stage + ": " + e.what());
    }

    write_manifest(ctx, config, pipeline);
    std::vector<std::string> outputs = ctx.written();
    outputs.push_back("manifest.txt");
    std::sort(outputs.begin(), outputs.end());
    outputs.erase(std::unique(outputs.begin(), outputs.end()), outputs.end());
    return outputs;
}

} // namespace bhhg
