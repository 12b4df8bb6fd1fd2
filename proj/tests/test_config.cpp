#include "bhhg/config.hpp"
#include "bhhg/errors.hpp"

#include <doctest.h>

using namespace bhhg;

TEST_CASE("empty config yields the reference-run defaults") {
    const auto c = parse_config_text("");
    CHECK(c.pulse.E0 == 0.075);
    CHECK(c.pulse.omega == 0.057);
    CHECK(c.pulse.n_ramp == 2.25);
    CHECK(c.pulse.n_flat == 10.0);
    CHECK(c.potential.variant == PotentialKind::softcore_long);
    CHECK(c.potential.a0 == 5.0);
    CHECK(c.potential.L == 50.0);
    CHECK(c.grid_x_min == -800.0);
    CHECK(c.grid_x_max == 800.0);
    CHECK(c.grid_n_points == 16384);
    CHECK(c.resolved_dt() == doctest::Approx(c.pulse.cycle() / 4096.0));
    CHECK(c.resolved_t_end() == doctest::Approx(c.pulse.tau_f()));
    CHECK(c.resolved_sigma() == doctest::Approx(1.0 / (3.0 * 0.057)));
    CHECK(c.x0_count == 61);
    CHECK(c.rho_floor == 1e-12);
}

TEST_CASE("values parse with comments and whitespace") {
    const auto c = parse_config_text("# comment line\n"
                                     "pulse.E0 = 0.1\n"
                                     "\n"
                                     "potential.variant = truncated  # trailing comment\n"
                                     "grid.n_points = 8192\n"
                                     "bohmian.substeps = 4\n");
    CHECK(c.pulse.E0 == 0.1);
    CHECK(c.potential.variant == PotentialKind::softcore_truncated);
    CHECK(c.grid_n_points == 8192);
    CHECK(c.substeps == 4);
    // truncated defaults keep the reference radii
    CHECK(c.potential.a0 == 5.0);
    CHECK(c.potential.L == 50.0);
}

TEST_CASE("validation errors name the violated invariant") {
    CHECK_THROWS_WITH_AS(parse_config_text("pulse.E0 = -1\n"),
                         doctest::Contains("E0"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("grid.n_points = 1000\n"), ConfigError);
    CHECK_THROWS_AS(parse_config_text("potential.variant = truncated\npotential.a0 = 60\n"),
                    ConfigError);
}

TEST_CASE("parse errors carry the line number") {
    CHECK_THROWS_WITH_AS(parse_config_text("pulse.E0 = 0.05\nnonsense line\n"),
                         doctest::Contains("line 2"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("unknown.key = 3\n"),
                         doctest::Contains("unknown key"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config_text("pulse.E0 = abc\n"),
                         doctest::Contains("bad number"), ConfigError);
}

TEST_CASE("absorber schedule round trip") {
    const auto c = parse_config_text("schedule.absorber_width = 100\n");
    const auto s = c.schedule();
    REQUIRE(s.absorber.has_value());
    CHECK(s.absorber->width == 100.0);
    CHECK(s.absorber->exponent == 0.125);

    const auto plain = parse_config_text("");
    CHECK_FALSE(plain.schedule().absorber.has_value());
}
