#include "bhhg/propagator.hpp"

#include "bhhg/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bhhg {

void PropagationSchedule::validate(const SpatialGrid& grid) const {
    if (!(dt > 0.0))
        throw ConfigError("PropagationSchedule: dt must be > 0");
    if (!(t_end > 0.0))
        throw ConfigError("PropagationSchedule: t_end must be > 0");
    if (snapshot_stride == 0 || record_stride == 0)
        throw ConfigError("PropagationSchedule: strides must be >= 1");
    if (absorber && !(absorber->width > 0.0 && absorber->width < 0.5 * (grid.x_max - grid.x_min)))
        throw ConfigError("PropagationSchedule: absorber width must lie in (0, box/2)");
}

Propagator::Propagator(GridPtr grid, const PotentialSpec& potential, PulseSpec pulse)
    : Propagator(grid,
                 sample_potential(potential, *grid),
                 sample_gradient(potential, *grid), pulse) {
    potential.validate();
}

Propagator::Propagator(GridPtr grid, std::vector<double> potential_samples,
                       std::vector<double> gradient_samples, PulseSpec pulse)
    : grid_(std::move(grid)), pulse_(pulse), potential_(std::move(potential_samples)),
      gradient_(std::move(gradient_samples)), fft_(grid_->n_points),
      kick_(grid_->n_points) {
    if (potential_.size() != grid_->n_points || gradient_.size() != grid_->n_points)
        throw ContractViolation("Propagator: potential sample length mismatch");
    pulse_.validate();
}

void Propagator::step(Wavefunction& psi, double dt,
                      const std::optional<AbsorberSpec>& absorber) const {
    if (psi.amplitudes.size() != grid_->n_points)
        throw ContractViolation("Propagator::step: wavefunction length mismatch");

    const double e_mid = field_value(pulse_, psi.t + 0.5 * dt);
    const std::size_t n = grid_->n_points;

    // exp(-i (V - x E) dt/2), one evaluation reused for both half kicks
    for (std::size_t j = 0; j < n; ++j)
        kick_[j] = std::polar(1.0, -0.5 * dt * (potential_[j] - grid_->x[j] * e_mid));

    auto& a = psi.amplitudes;
    for (std::size_t j = 0; j < n; ++j)
        a[j] *= kick_[j];

    fft_.forward(a);
    for (std::size_t j = 0; j < n; ++j)
        a[j] *= std::polar(1.0, -0.5 * dt * grid_->k[j] * grid_->k[j]);
    fft_.inverse(a);

    for (std::size_t j = 0; j < n; ++j)
        a[j] *= kick_[j];

    if (absorber)
        apply_absorber(psi, *absorber);

    psi.t += dt;
    if (!std::isfinite(a[0].real()) || !std::isfinite(std::norm(a[n / 2])))
        throw NumericsError("Propagator::step: propagation diverged (non-finite state)");
}

void Propagator::apply_absorber(Wavefunction& psi, const AbsorberSpec& absorber) const {
    const double w = absorber.width;
    const double left = grid_->x_min + w;
    const double right = grid_->x_max - w;
    for (std::size_t j = 0; j < grid_->n_points; ++j) {
        const double x = grid_->x[j];
        double depth = 0.0;
        if (x < left)
            depth = (left - x) / w;
        else if (x > right)
            depth = (x - right) / w;
        if (depth > 0.0) {
            depth = std::min(depth, 1.0);
            psi.amplitudes[j] *=
                std::pow(std::cos(0.5 * std::numbers::pi * depth), absorber.exponent);
        }
    }
}

double Propagator::dipole_acceleration(const Wavefunction& psi, bool include_field) const {
    double a = -expectation(psi, gradient_);
    if (include_field)
        a += field_value(pulse_, psi.t);
    return a;
}

PropagationResult Propagator::propagate(const Wavefunction& psi0,
                                        const PropagationSchedule& schedule,
                                        const SnapshotSink& sink) const {
    schedule.validate(*grid_);
    if (psi0.amplitudes.size() != grid_->n_points)
        throw ContractViolation("Propagator::propagate: wavefunction length mismatch");

    const auto n_steps = static_cast<std::size_t>(std::llround(schedule.t_end / schedule.dt));
    if (n_steps == 0)
        throw ConfigError("PropagationSchedule: t_end shorter than one step");

    Wavefunction psi = psi0;
    psi.t = 0.0;

    PropagationResult result;
    result.accel.t0 = 0.0;
    result.accel.dt = schedule.dt * static_cast<double>(schedule.record_stride);
    result.field = result.accel;
    result.accel.values.reserve(n_steps / schedule.record_stride + 1);
    result.field.values.reserve(n_steps / schedule.record_stride + 1);

    auto record = [&](const Wavefunction& w) {
        result.accel.values.push_back(dipole_acceleration(w, schedule.accel_include_field));
        result.field.values.push_back(field_value(pulse_, w.t));
    };
    auto snap = [&](const Wavefunction& w) {
        if (sink)
            sink(w);
        ++result.n_snapshots;
    };

    record(psi);
    snap(psi);
    for (std::size_t s = 1; s <= n_steps; ++s) {
        step(psi, schedule.dt, schedule.absorber);
        if (s % schedule.record_stride == 0)
            record(psi);
        if (s % schedule.snapshot_stride == 0)
            snap(psi);
    }

    result.final_state = std::move(psi);
    return result;
}

double energy_expectation(const Fft& fft, const Wavefunction& psi,
                          std::span<const double> potential) {
    if (potential.size() != psi.amplitudes.size())
        throw ContractViolation("energy_expectation: potential length mismatch");
    const SpatialGrid& g = *psi.grid;
    std::vector<Complex> hat(psi.amplitudes.begin(), psi.amplitudes.end());
    fft.forward(hat);
    double kinetic = 0.0;
    for (std::size_t m = 0; m < hat.size(); ++m)
        kinetic += 0.5 * g.k[m] * g.k[m] * std::norm(hat[m]);
    kinetic *= g.dx / static_cast<double>(g.n_points); // Parseval: sum|psi|^2 = sum|hat|^2 / n
    double pot = 0.0;
    for (std::size_t j = 0; j < potential.size(); ++j)
        pot += potential[j] * std::norm(psi.amplitudes[j]);
    pot *= g.dx;
    return kinetic + pot;
}

GroundStateResult ground_state(GridPtr grid, const PotentialSpec& potential) {
    potential.validate();
    auto samples = sample_potential(potential, *grid);
    return ground_state(std::move(grid), std::move(samples));
}

GroundStateResult ground_state(GridPtr grid, std::vector<double> potential_samples) {
    if (potential_samples.size() != grid->n_points)
        throw ContractViolation("ground_state: potential sample length mismatch");

    constexpr double kTol = 1e-10;
    constexpr std::size_t kMaxIter = 50000;
    const std::size_t n = grid->n_points;

    Fft fft(n);
    Wavefunction psi = gaussian_packet(grid, 0.0, 1.0);
    psi.t = 0.0;

    double energy = energy_expectation(fft, psi, potential_samples);
    std::size_t total_iter = 0;

    for (const double dtau : {0.2, 0.05, 0.01}) {
        std::vector<double> exp_v(n), exp_t(n);
        for (std::size_t j = 0; j < n; ++j)
            exp_v[j] = std::exp(-0.5 * dtau * potential_samples[j]);
        for (std::size_t m = 0; m < n; ++m)
            exp_t[m] = std::exp(-0.5 * dtau * grid->k[m] * grid->k[m]);

        for (std::size_t it = 0;; ++it) {
            if (it >= kMaxIter)
                throw ConvergenceError("ground_state: imaginary-time relaxation did not "
                                       "converge (dtau = " + std::to_string(dtau) + ")");
            ++total_iter;
            auto& a = psi.amplitudes;
            for (std::size_t j = 0; j < n; ++j)
                a[j] *= exp_v[j];
            fft.forward(a);
            for (std::size_t m = 0; m < n; ++m)
                a[m] *= exp_t[m];
            fft.inverse(a);
            for (std::size_t j = 0; j < n; ++j)
                a[j] *= exp_v[j];
            normalize(psi);

            const double e = energy_expectation(fft, psi, potential_samples);
            const double delta = std::abs(e - energy);
            energy = e;
            if (delta < kTol)
                break;
        }
    }

    return {std::move(psi), energy, total_iter};
}

} // namespace bhhg
