#include "bhhg/errors.hpp"
#include "bhhg/pulse.hpp"

#include <doctest.h>

#include <cmath>

using namespace bhhg;

namespace {
const PulseSpec kPaper{}; // E0 = 0.075, omega = 0.057, 2.25 + 10 + 2.25 cycles
} // namespace

TEST_CASE("envelope timing") {
    const double tau0 = kPaper.cycle();
    CHECK(kPaper.tau_on() == doctest::Approx(2.25 * tau0));
    CHECK(kPaper.tau_off() == doctest::Approx(12.25 * tau0));
    CHECK(kPaper.tau_f() == doctest::Approx(14.5 * tau0));

    CHECK(envelope(kPaper, 0.0) == 0.0);
    CHECK(envelope(kPaper, kPaper.tau_on()) == doctest::Approx(1.0));
    CHECK(envelope(kPaper, 0.5 * (kPaper.tau_on() + kPaper.tau_off())) == 1.0);
    CHECK(envelope(kPaper, kPaper.tau_f()) == doctest::Approx(0.0));
    CHECK(envelope(kPaper, 0.5 * kPaper.tau_on()) == doctest::Approx(0.5));
}

TEST_CASE("field vanishes at the ends and outside") {
    CHECK(field_value(kPaper, 0.0) == 0.0);
    CHECK(field_value(kPaper, kPaper.tau_f()) == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(field_value(kPaper, -1.0) == 0.0);
    CHECK(field_value(kPaper, kPaper.tau_f() + 1.0) == 0.0);
}

TEST_CASE("flat top reaches the peak field with n_ramp = 2.25") {
    // 2.25 cycles is a field extremum: sin(2 pi 2.25) = 1, g = 1 there.
    CHECK(std::abs(field_value(kPaper, kPaper.tau_on())) == doctest::Approx(kPaper.E0));

    double max_abs = 0.0;
    const double dt = kPaper.tau_f() / 200000.0;
    for (double t = 0.0; t <= kPaper.tau_f(); t += dt)
        max_abs = std::max(max_abs, std::abs(field_value(kPaper, t)));
    CHECK(max_abs <= kPaper.E0 * (1.0 + 1e-12));
    CHECK(max_abs == doctest::Approx(kPaper.E0).epsilon(1e-6));
}

TEST_CASE("field is continuous across the envelope break points") {
    const double eps = 1e-8;
    for (const double edge : {kPaper.tau_on(), kPaper.tau_off(), kPaper.tau_f()}) {
        const double below = field_value(kPaper, edge - eps);
        const double above = field_value(kPaper, edge + eps);
        CHECK(std::abs(below - above) < 1e-6);
    }
}

TEST_CASE("ponderomotive energy") {
    CHECK(ponderomotive_energy(kPaper) == doctest::Approx(0.4328254848).epsilon(1e-9));
    PulseSpec weak = kPaper;
    weak.E0 = 1e-30; // E0 = 0 itself is rejected by validate
    CHECK(ponderomotive_energy(weak) == doctest::Approx(0.0));
    PulseSpec unit = kPaper;
    unit.E0 = 2.0 * unit.omega;
    CHECK(ponderomotive_energy(unit) == doctest::Approx(1.0));
}

TEST_CASE("keldysh gamma at the reference point") {
    CHECK(keldysh_gamma(kPaper, -0.66995) == doctest::Approx(0.880).epsilon(0.005 / 0.880));
    CHECK(keldysh_gamma(kPaper, -0.66995) == doctest::Approx(0.8797305).epsilon(1e-6));
}

TEST_CASE("keldysh gamma limits and identities") {
    PulseSpec p = kPaper;
    p.omega = 1e-9;
    CHECK(keldysh_gamma(p, -0.5) < 1e-7);
    PulseSpec q = kPaper;
    q.E0 = q.omega * std::sqrt(2.0 * 0.66995);
    CHECK(keldysh_gamma(q, -0.66995) == doctest::Approx(1.0));
    CHECK_THROWS_AS(keldysh_gamma(kPaper, 0.1), ContractViolation);
    CHECK_THROWS_AS(keldysh_gamma(kPaper, 0.0), ContractViolation);
}

TEST_CASE("pulse validation") {
    PulseSpec bad = kPaper;
    bad.E0 = -1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = kPaper;
    bad.omega = 0.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = kPaper;
    bad.n_ramp = -0.5;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("cutoff harmonic consistency with the quoted 35w scale") {
    const double h_cut = (0.66995 + 3.17 * ponderomotive_energy(kPaper)) / kPaper.omega;
    CHECK(h_cut == doctest::Approx(35.82).epsilon(2e-3));
}
