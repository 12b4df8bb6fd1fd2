#pragma once

#include <numbers>

namespace bhhg {

/// Flat-top laser pulse E(t) = E0 g(t) sin(w t) with a linear ramp of n_ramp
/// cycles, a flat top of n_flat cycles and a symmetric ramp-down.
struct PulseSpec {
    double E0 = 0.075;    ///< peak field strength (a.u.)
    double omega = 0.057; ///< angular frequency (a.u.)
    double n_ramp = 2.25; ///< ramp length in cycles
    double n_flat = 10.0; ///< flat-top length in cycles

    double cycle() const { return 2.0 * std::numbers::pi / omega; }
    double tau_on() const { return n_ramp * cycle(); }
    double tau_off() const { return (n_ramp + n_flat) * cycle(); }
    double tau_f() const { return tau_off() + n_ramp * cycle(); }

    /// Throws ConfigError unless E0 > 0, omega > 0, n_ramp >= 0, n_flat >= 0.
    void validate() const;
};

/// Trapezoid envelope g(t) in [0, 1]; zero outside [0, tau_f].
/// A zero-length ramp degenerates to a step envelope.
double envelope(const PulseSpec& pulse, double t);

/// E0 g(t) sin(w t); zero outside [0, tau_f].
double field_value(const PulseSpec& pulse, double t);

/// Up = E0^2/(4 w^2).
double ponderomotive_energy(const PulseSpec& pulse);

/// gamma = w sqrt(2|eps0|)/E0. Throws ContractViolation when eps0 >= 0.
double keldysh_gamma(const PulseSpec& pulse, double epsilon0);

} // namespace bhhg
