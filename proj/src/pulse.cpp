#include "bhhg/pulse.hpp"

#include "bhhg/errors.hpp"

#include <cmath>

namespace bhhg {

void PulseSpec::validate() const {
    if (!(E0 > 0.0))
        throw ConfigError("PulseSpec: E0 must be > 0");
    if (!(omega > 0.0))
        throw ConfigError("PulseSpec: omega must be > 0");
    if (n_ramp < 0.0 || n_flat < 0.0)
        throw ConfigError("PulseSpec: cycle counts must be >= 0");
}

double envelope(const PulseSpec& pulse, double t) {
    const double on = pulse.tau_on();
    const double off = pulse.tau_off();
    if (t < 0.0 || t > pulse.tau_f())
        return 0.0;
    if (t < on)
        return on > 0.0 ? t / on : 1.0;
    if (t < off)
        return 1.0;
    return on > 0.0 ? 1.0 - (t - off) / on : 0.0;
}

double field_value(const PulseSpec& pulse, double t) {
    if (t < 0.0 || t > pulse.tau_f())
        return 0.0;
    return pulse.E0 * envelope(pulse, t) * std::sin(pulse.omega * t);
}

double ponderomotive_energy(const PulseSpec& pulse) {
    return pulse.E0 * pulse.E0 / (4.0 * pulse.omega * pulse.omega);
}

double keldysh_gamma(const PulseSpec& pulse, double epsilon0) {
    if (epsilon0 >= 0.0)
        throw ContractViolation("keldysh_gamma: epsilon0 must be negative (bound state)");
    return pulse.omega * std::sqrt(-2.0 * epsilon0) / pulse.E0;
}

} // namespace bhhg
