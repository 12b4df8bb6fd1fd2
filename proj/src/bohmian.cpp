#include "bhhg/bohmian.hpp"

#include "bhhg/errors.hpp"
#include "bhhg/fft.hpp"
#include "bhhg/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace bhhg {

namespace {

/// Replaces entries flagged bad by linear interpolation between the nearest
/// good neighbors (constant extension at the ends).
void patch_bad_nodes(std::vector<double>& values, const std::vector<bool>& bad) {
    const std::size_t n = values.size();
    std::size_t i = 0;
    while (i < n) {
        if (!bad[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < n && bad[j])
            ++j;
        const bool has_left = i > 0;
        const bool has_right = j < n;
        for (std::size_t m = i; m < j; ++m) {
            if (has_left && has_right) {
                const double w = static_cast<double>(m - (i - 1)) / static_cast<double>(j - (i - 1));
                values[m] = (1.0 - w) * values[i - 1] + w * values[j];
            } else if (has_left) {
                values[m] = values[i - 1];
            } else if (has_right) {
                values[m] = values[j];
            } else {
                values[m] = 0.0;
            }
        }
        i = j;
    }
}

// A localized state legitimately sits below the floor on most of a large
// box, so degeneracy is judged by probability mass: the state is unusable
// when the nodes at or above the floor carry less than half of it.
std::vector<bool> flag_low_density(const std::vector<double>& rho, double rho_floor,
                                   const char* who) {
    std::vector<bool> bad(rho.size());
    double mass_total = 0.0, mass_alive = 0.0;
    for (std::size_t j = 0; j < rho.size(); ++j) {
        bad[j] = rho[j] < rho_floor;
        mass_total += rho[j];
        if (!bad[j])
            mass_alive += rho[j];
    }
    if (!(mass_total > 0.0) || mass_alive < 0.5 * mass_total)
        throw NumericsError(std::string(who) +
                            ": degenerate state, density below the floor carries most of the norm");
    return bad;
}

double catmull_rom(const std::vector<double>& f, double frac_index) {
    const auto n = static_cast<std::ptrdiff_t>(f.size());
    const double fl = std::floor(frac_index);
    const auto j = static_cast<std::ptrdiff_t>(fl);
    const double u = frac_index - fl;
    auto at = [&](std::ptrdiff_t i) { return f[static_cast<std::size_t>(std::clamp(i, std::ptrdiff_t{0}, n - 1))]; };
    const double p0 = at(j - 1), p1 = at(j), p2 = at(j + 1), p3 = at(j + 2);
    return 0.5 * (2.0 * p1 + (-p0 + p2) * u + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u * u +
                  (-p0 + 3.0 * p1 - 3.0 * p2 + p3) * u * u * u);
}

} // namespace

VelocityField velocity_field(const Wavefunction& psi, double rho_floor) {
    thread_local std::unique_ptr<Fft> fft;
    if (!fft || fft->size() != psi.grid->n_points)
        fft = std::make_unique<Fft>(psi.grid->n_points);

    const auto dpsi = spectral_derivative(*fft, *psi.grid, psi.amplitudes);

    VelocityField field;
    field.grid = psi.grid;
    field.t = psi.t;
    field.rho_floor = rho_floor;
    field.rho = density(psi);
    field.v.resize(psi.size());

    const auto bad = flag_low_density(field.rho, rho_floor, "velocity_field");
    for (std::size_t j = 0; j < psi.size(); ++j) {
        const double J = std::imag(std::conj(psi.amplitudes[j]) * dpsi[j]);
        field.v[j] = bad[j] ? 0.0 : J / field.rho[j];
    }
    patch_bad_nodes(field.v, bad);
    return field;
}

double sample_velocity(const VelocityField& field, double x) {
    return catmull_rom(field.v, field.grid->frac_index(x));
}

std::vector<double> quantum_potential(const Wavefunction& psi, double rho_floor) {
    thread_local std::unique_ptr<Fft> fft;
    if (!fft || fft->size() != psi.grid->n_points)
        fft = std::make_unique<Fft>(psi.grid->n_points);

    const auto rho = density(psi);
    std::vector<Complex> sqrt_rho(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j)
        sqrt_rho[j] = std::sqrt(rho[j]);
    const auto lap = spectral_second_derivative(*fft, *psi.grid, sqrt_rho);

    const auto bad = flag_low_density(rho, rho_floor, "quantum_potential");
    std::vector<double> q(rho.size());
    for (std::size_t j = 0; j < rho.size(); ++j)
        q[j] = bad[j] ? 0.0 : -0.5 * lap[j].real() / std::sqrt(rho[j]);
    patch_bad_nodes(q, bad);
    return q;
}

std::vector<Trajectory> integrate_trajectories(const SnapshotSource& snapshots,
                                               std::span<const double> x0_list,
                                               const BohmianOptions& options) {
    const std::size_t n_snap = snapshots.size();
    if (n_snap < 2)
        throw ContractViolation("integrate_trajectories: need at least two snapshots");
    if (options.substeps == 0)
        throw ContractViolation("integrate_trajectories: substeps must be >= 1");

    const SpatialGrid& grid = snapshots.grid();
    const double t0 = snapshots.time(0);
    const double dt_s = snapshots.time(1) - t0;
    if (!(dt_s > 0.0))
        throw ContractViolation("integrate_trajectories: snapshots not increasing in time");

    const std::size_t n_traj = x0_list.size();
    std::vector<Trajectory> out(n_traj);
    std::vector<double> x(n_traj);
    std::vector<char> active(n_traj, 1); // not vector<bool>: written in parallel

    Wavefunction psi_prev = snapshots.load(0);
    VelocityField v_prev = velocity_field(psi_prev, options.rho_floor);

    for (std::size_t i = 0; i < n_traj; ++i) {
        const double start = x0_list[i];
        if (!grid.contains(start))
            throw ContractViolation("integrate_trajectories: x0 outside the grid");
        x[i] = start;
        out[i].kind = TrajectoryKind::bohmian;
        out[i].x0 = start;
        out[i].positions = TimeSeries(t0, dt_s, {start});
        out[i].velocities = TimeSeries(t0, dt_s, {sample_velocity(v_prev, start)});
        out[i].v0 = out[i].velocities.values[0];
    }

    const double h = dt_s / static_cast<double>(options.substeps);

    for (std::size_t s = 0; s + 1 < n_snap; ++s) {
        const Wavefunction psi_next = snapshots.load(s + 1);
        const VelocityField v_next = velocity_field(psi_next, options.rho_floor);

        // v(x, theta) = (1-theta) v_prev(x) + theta v_next(x); theta in [0,1]
        auto v_at = [&](double pos, double theta) {
            const double idx = grid.frac_index(pos);
            return (1.0 - theta) * catmull_rom(v_prev.v, idx) + theta * catmull_rom(v_next.v, idx);
        };

        parallel_for(0, n_traj, [&](std::size_t i) {
            if (!active[i])
                return;
            double xi = x[i];
            bool exited = false;
            for (std::size_t ss = 0; ss < options.substeps && !exited; ++ss) {
                const double th0 = static_cast<double>(ss) / static_cast<double>(options.substeps);
                const double th1 = static_cast<double>(ss + 1) / static_cast<double>(options.substeps);
                const double thm = 0.5 * (th0 + th1);
                const double k1 = v_at(xi, th0);
                const double k2 = v_at(xi + 0.5 * h * k1, thm);
                const double k3 = v_at(xi + 0.5 * h * k2, thm);
                const double k4 = v_at(xi + h * k3, th1);
                xi += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                if (!grid.contains(xi) || !std::isfinite(xi))
                    exited = true;
            }
            if (exited) {
                active[i] = 0;
                out[i].exited_grid = true;
                return;
            }
            x[i] = xi;
            out[i].positions.values.push_back(xi);
            out[i].velocities.values.push_back(sample_velocity(v_next, xi));
        });

        v_prev = v_next;
    }

    return out;
}

} // namespace bhhg
