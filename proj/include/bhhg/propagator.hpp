#pragma once

#include "bhhg/fft.hpp"
#include "bhhg/potential.hpp"
#include "bhhg/pulse.hpp"
#include "bhhg/time_series.hpp"
#include "bhhg/wavefunction.hpp"

#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace bhhg {

/// Absorbing mask applied after each step: cos^exponent roll-off over `width`
/// at both box edges.
struct AbsorberSpec {
    double width = 100.0;
    double exponent = 0.125;
};

struct PropagationSchedule {
    double dt = 0.0;                  ///< time step (a.u.)
    double t_end = 0.0;               ///< final time (a.u.)
    std::size_t snapshot_stride = 8;  ///< steps between stored snapshots
    std::size_t record_stride = 1;    ///< steps between a(t) samples
    std::optional<AbsorberSpec> absorber;
    bool accel_include_field = false; ///< add +E(t) to a(t) (diagnostic)

    /// Throws ConfigError on dt <= 0, zero strides, or an absorber wider
    /// than half the box.
    void validate(const SpatialGrid& grid) const;
};

struct PropagationResult {
    TimeSeries accel; ///< a(t) = -<dV/dx> at the record stride
    TimeSeries field; ///< E(t) at the record stride
    Wavefunction final_state;
    std::size_t n_snapshots = 0;
};

/// Receives snapshots (t = 0 and every snapshot_stride steps) during propagate.
using SnapshotSink = std::function<void(const Wavefunction&)>;

/// Split-operator spectral propagator for H = -1/2 d2/dx2 + V(x) - x E(t)
/// on a fixed grid. Owns the FFT plans and the sampled potential; one
/// instance serves one grid + potential + pulse combination.
class Propagator {
  public:
    Propagator(GridPtr grid, const PotentialSpec& potential, PulseSpec pulse);

    /// Test hook: arbitrary sampled potential instead of a PotentialSpec.
    Propagator(GridPtr grid, std::vector<double> potential_samples,
               std::vector<double> gradient_samples, PulseSpec pulse);

    const SpatialGrid& grid() const { return *grid_; }

    /// One Strang step psi(t) -> psi(t+dt): half potential kick with the
    /// field frozen at t+dt/2, full kinetic step, half potential kick.
    /// Throws NumericsError when the state stops being finite.
    void step(Wavefunction& psi, double dt,
              const std::optional<AbsorberSpec>& absorber = std::nullopt) const;

    /// -<dV/dx> (optionally +E(t)).
    double dipole_acceleration(const Wavefunction& psi, bool include_field = false) const;

    /// Runs the schedule from psi0 (t forced to 0). Snapshots go to `sink`
    /// when provided.
    PropagationResult propagate(const Wavefunction& psi0, const PropagationSchedule& schedule,
                                const SnapshotSink& sink = {}) const;

  private:
    GridPtr grid_;
    PulseSpec pulse_;
    std::vector<double> potential_;
    std::vector<double> gradient_;
    Fft fft_;
    mutable std::vector<Complex> kick_; // scratch for the combined half-kick phase

    void apply_absorber(Wavefunction& psi, const AbsorberSpec& absorber) const;
};

struct GroundStateResult {
    Wavefunction psi;
    double energy = 0.0;
    std::size_t iterations = 0;
};

/// Imaginary-time split-operator relaxation from a unit-width Gaussian seed.
/// The time step is annealed (0.2, 0.05, 0.01), each stage iterated until
/// |delta eps| < 1e-10; energy is the spectral <H> with E = 0.
/// Throws ConvergenceError when a stage exceeds its iteration budget.
GroundStateResult ground_state(GridPtr grid, const PotentialSpec& potential);
GroundStateResult ground_state(GridPtr grid, std::vector<double> potential_samples);

/// Spectral <T> + <V> of a (normalized) state for a sampled potential.
double energy_expectation(const Fft& fft, const Wavefunction& psi,
                          std::span<const double> potential);

} // namespace bhhg
