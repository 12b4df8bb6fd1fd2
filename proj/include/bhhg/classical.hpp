#pragma once

#include "bhhg/potential.hpp"
#include "bhhg/pulse.hpp"
#include "bhhg/trajectory.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bhhg {

/// Initial conditions of one classical electron released into the field.
struct ReleaseSpec {
    double t0 = 0.0; ///< release time (a.u.)
    double x0 = 0.0;
    double v0 = 0.0;
    bool with_potential = false;
};

enum class ReturnBranch { short_traj, long_traj, later };

std::string to_string(ReturnBranch branch);

/// One core revisit: time, kinetic energy, and the harmonic energy
/// Ek + |eps0| it would radiate on recombination.
struct ReturnEvent {
    double t_return = 0.0;
    double kinetic_energy = 0.0;
    double harmonic_energy = 0.0;
    ReturnBranch branch = ReturnBranch::short_traj;
};

struct PhaseSpacePoint {
    double x = 0.0;
    double v = 0.0;
};

/// Closed-form electron motion in the monochromatic field E0 sin(wt)
/// (envelope frozen at 1), released at rest from the origin at t0.
/// Throws ContractViolation when t < t0.
PhaseSpacePoint free_trajectory(double t0, const PulseSpec& pulse, double t);

/// RK4 integration of v' = E0 sin(wt) - dV/dx, x' = v in the monochromatic
/// field, sampled every dt from t0 to t_end.
/// Throws NumericsError when the state stops being finite.
Trajectory potential_trajectory(const ReleaseSpec& release, const PulseSpec& pulse,
                                const PotentialSpec& spec, double dt, double t_end);

/// Same integrator with the binding force removed (integrator oracle).
Trajectory free_trajectory_rk4(const ReleaseSpec& release, const PulseSpec& pulse, double dt,
                               double t_end);

struct ReturnDetectionOptions {
    double x_exit = 5.0; ///< |x| the electron must exceed before returns count
};

/// Zero crossings of x(t) after the electron first left |x| > x_exit,
/// refined by linear interpolation; empty when it never returns.
std::vector<ReturnEvent> return_events(const Trajectory& traj, double epsilon0,
                                       const ReturnDetectionOptions& options = {});

/// One row of the classical return-time table.
struct ArchPoint {
    double t0 = 0.0;
    double t_return = 0.0; ///< folded into [0, cycle)
    double harmonic_order = 0.0;
    ReturnBranch branch = ReturnBranch::short_traj;
    int v0_sign = 0; ///< 0 for the field-only ensemble
    bool with_potential = false;
};

struct ArchScanOptions {
    std::size_t points_per_half_cycle = 2000;
    double excursion_cap_cycles = 1.6;
    double x_exit = 5.0;
    double rk4_dt_fraction = 1.0 / 4096.0; ///< dt as a fraction of the cycle
    /// Alternative release: at rest from the turning point F(x0, t0) = 0
    /// instead of from the origin with escape velocity.
    bool release_from_turning_point = false;
};

/// Scans release times over half a cycle after the field peak. Field-only
/// releases start at rest from the origin; with a potential the ensemble
/// starts at the origin with v0 = +-sqrt(-2 V(0)) (both sign families).
std::vector<ArchPoint> arch_curves(const PulseSpec& pulse,
                                   const std::optional<PotentialSpec>& spec, double epsilon0,
                                   const ArchScanOptions& options = {});

} // namespace bhhg
