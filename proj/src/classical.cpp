#include "bhhg/classical.hpp"

#include "bhhg/errors.hpp"
#include "bhhg/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace bhhg {

std::string to_string(ReturnBranch branch) {
    switch (branch) {
    case ReturnBranch::short_traj:
        return "short";
    case ReturnBranch::long_traj:
        return "long";
    case ReturnBranch::later:
        return "later";
    }
    return "unknown";
}

PhaseSpacePoint free_trajectory(double t0, const PulseSpec& pulse, double t) {
    if (t < t0)
        throw ContractViolation("free_trajectory: t must be >= t0");
    const double w = pulse.omega;
    const double c0 = std::cos(w * t0);
    PhaseSpacePoint p;
    p.v = pulse.E0 / w * (c0 - std::cos(w * t));
    p.x = pulse.E0 / (w * w) * (w * (t - t0) * c0 - std::sin(w * t) + std::sin(w * t0));
    return p;
}

namespace {

Trajectory integrate_newton(const ReleaseSpec& release, const PulseSpec& pulse,
                            const PotentialSpec* spec, double dt, double t_end,
                            TrajectoryKind kind) {
    if (!(dt > 0.0))
        throw ContractViolation("potential_trajectory: dt must be > 0");
    if (t_end <= release.t0)
        throw ContractViolation("potential_trajectory: t_end must exceed t0");

    const auto n_steps = static_cast<std::size_t>(std::llround((t_end - release.t0) / dt));
    auto force = [&](double t, double x) {
        double f = pulse.E0 * std::sin(pulse.omega * t); // monochromatic, g = 1
        if (spec)
            f -= potential_gradient(*spec, x);
        return f;
    };

    Trajectory traj;
    traj.kind = kind;
    traj.x0 = release.x0;
    traj.v0 = release.v0;
    traj.t_release = release.t0;
    traj.positions = TimeSeries(release.t0, dt, {});
    traj.velocities = TimeSeries(release.t0, dt, {});
    traj.positions.values.reserve(n_steps + 1);
    traj.velocities.values.reserve(n_steps + 1);

    double x = release.x0, v = release.v0, t = release.t0;
    traj.positions.values.push_back(x);
    traj.velocities.values.push_back(v);
    for (std::size_t s = 0; s < n_steps; ++s) {
        const double k1x = v, k1v = force(t, x);
        const double k2x = v + 0.5 * dt * k1v, k2v = force(t + 0.5 * dt, x + 0.5 * dt * k1x);
        const double k3x = v + 0.5 * dt * k2v, k3v = force(t + 0.5 * dt, x + 0.5 * dt * k2x);
        const double k4x = v + dt * k3v, k4v = force(t + dt, x + dt * k3x);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        t = release.t0 + static_cast<double>(s + 1) * dt;
        if (!std::isfinite(x) || !std::isfinite(v))
            throw NumericsError("potential_trajectory: integration diverged");
        traj.positions.values.push_back(x);
        traj.velocities.values.push_back(v);
    }
    return traj;
}

} // namespace

Trajectory potential_trajectory(const ReleaseSpec& release, const PulseSpec& pulse,
                                const PotentialSpec& spec, double dt, double t_end) {
    spec.validate();
    return integrate_newton(release, pulse, &spec, dt, t_end,
                            TrajectoryKind::classical_potential);
}

Trajectory free_trajectory_rk4(const ReleaseSpec& release, const PulseSpec& pulse, double dt,
                               double t_end) {
    return integrate_newton(release, pulse, nullptr, dt, t_end, TrajectoryKind::classical_free);
}

std::vector<ReturnEvent> return_events(const Trajectory& traj, double epsilon0,
                                       const ReturnDetectionOptions& options) {
    const auto& x = traj.positions.values;
    const auto& v = traj.velocities.values;
    std::vector<ReturnEvent> events;
    if (x.size() < 2)
        return events;

    bool left_core = false;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!left_core) {
            if (std::abs(x[i]) > options.x_exit)
                left_core = true;
            continue;
        }
        if (x[i] == 0.0 || x[i] * x[i + 1] < 0.0) {
            const double ti = traj.positions.time(i);
            const double tj = traj.positions.time(i + 1);
            const double frac = x[i] == 0.0 ? 0.0 : x[i] / (x[i] - x[i + 1]);
            ReturnEvent ev;
            ev.t_return = ti + frac * (tj - ti);
            const double vr = v[i] + frac * (v[i + 1] - v[i]);
            ev.kinetic_energy = 0.5 * vr * vr;
            ev.harmonic_energy = ev.kinetic_energy + std::abs(epsilon0);
            events.push_back(ev);
        }
    }
    return events;
}

namespace {

/// Outer turning point of the tilted potential: |x| with dV/dx = E(t0) on the
/// downhill side. Throws ConfigError when the field is too weak or over the
/// barrier so that no such point exists.
double solve_turning_point(const PotentialSpec& spec, const PulseSpec& pulse, double t0) {
    const double e_now = pulse.E0 * std::sin(pulse.omega * t0);
    const double mag = std::abs(e_now);
    // dV/dx peaks at x = 1/sqrt(2) for the soft core; search outward from there.
    const double x_peak = 1.0 / std::sqrt(2.0);
    double lo = x_peak, hi = std::max(4.0 * spec.L, 1.0e3);
    if (mag <= 0.0 || potential_gradient(spec, lo) < mag || potential_gradient(spec, hi) > mag)
        throw ConfigError("arch_curves: no turning point for this release time");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (potential_gradient(spec, mid) > mag ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    return e_now > 0.0 ? root : -root;
}

/// Tags the first event short/long against the field crossing after
/// t0 + tau0/2; every later event is `later`.
void tag_branches(std::vector<ReturnEvent>& events, double t0, double cycle) {
    if (events.empty())
        return;
    const double half = 0.5 * cycle;
    const double t_cross = half * std::ceil((t0 + half) / half);
    events.front().branch =
        events.front().t_return < t_cross ? ReturnBranch::short_traj : ReturnBranch::long_traj;
    for (std::size_t i = 1; i < events.size(); ++i)
        events[i].branch = ReturnBranch::later;
}

} // namespace

std::vector<ArchPoint> arch_curves(const PulseSpec& pulse,
                                   const std::optional<PotentialSpec>& spec, double epsilon0,
                                   const ArchScanOptions& options) {
    if (options.points_per_half_cycle == 0)
        return {};
    const double cycle = pulse.cycle();
    const double dt = cycle * options.rk4_dt_fraction;
    const double span = options.excursion_cap_cycles * cycle;
    const std::size_t n_scan = options.points_per_half_cycle;

    // Release velocities: field-only at rest; with potential, escape speed
    // v0 = +-sqrt(-2 V(0)), both sign families.
    std::vector<double> v0_list{0.0};
    if (spec) {
        spec->validate();
        const double v_esc = std::sqrt(-2.0 * potential_value(*spec, 0.0));
        v0_list = {v_esc, -v_esc};
    }

    std::vector<std::vector<ArchPoint>> rows(n_scan);
    parallel_for(0, n_scan, [&](std::size_t i) {
        // one half cycle of releases starting at the field peak
        const double t0 = cycle * (0.25 + 0.5 * static_cast<double>(i) / static_cast<double>(n_scan));
        for (const double v0 : v0_list) {
            ReleaseSpec release;
            release.t0 = t0;
            release.v0 = v0;
            release.with_potential = spec.has_value();
            if (options.release_from_turning_point && spec) {
                // Release at rest from the turning point F(x0, t0) = 0 instead.
                release.v0 = 0.0;
                release.x0 = solve_turning_point(*spec, pulse, t0);
            }

            Trajectory traj;
            if (spec)
                traj = potential_trajectory(release, pulse, *spec, dt, t0 + span);
            else
                traj = free_trajectory_rk4(release, pulse, dt, t0 + span);

            auto events = return_events(traj, epsilon0, {options.x_exit});
            tag_branches(events, t0, cycle);
            for (const auto& ev : events) {
                ArchPoint p;
                p.t0 = t0;
                p.t_return = std::fmod(ev.t_return, cycle);
                p.harmonic_order = ev.harmonic_energy / pulse.omega;
                p.branch = ev.branch;
                p.v0_sign = v0 > 0.0 ? 1 : (v0 < 0.0 ? -1 : 0);
                p.with_potential = spec.has_value();
                rows[i].push_back(p);
            }
        }
    });

    std::vector<ArchPoint> table;
    for (auto& r : rows)
        table.insert(table.end(), r.begin(), r.end());
    return table;
}

} // namespace bhhg
