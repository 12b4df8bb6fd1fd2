#pragma once

#include "bhhg/snapshot_io.hpp"
#include "bhhg/trajectory.hpp"
#include "bhhg/wavefunction.hpp"

#include <span>
#include <vector>

namespace bhhg {

/// Guidance velocity v = J/rho on grid nodes at one time stamp. Nodes with
/// rho below rho_floor carry the value interpolated from the nearest
/// well-populated nodes.
struct VelocityField {
    GridPtr grid;
    double t = 0.0;
    std::vector<double> v;
    std::vector<double> rho;
    double rho_floor = 1e-12;
};

/// J = Im(psi* dpsi/dx) with the spectral derivative, v = J/rho.
/// Throws NumericsError when more than half the nodes fall below rho_floor.
VelocityField velocity_field(const Wavefunction& psi, double rho_floor = 1e-12);

/// Cubic (Catmull-Rom) sample of the velocity field at position x; indices
/// clamp at the box edges.
double sample_velocity(const VelocityField& field, double x);

/// Q = -1/2 (d2 sqrt(rho)/dx2) / sqrt(rho), spectral second derivative,
/// same floor regularization as velocity_field. Diagnostic only.
std::vector<double> quantum_potential(const Wavefunction& psi, double rho_floor = 1e-12);

struct BohmianOptions {
    double rho_floor = 1e-12;
    /// RK4 substeps per snapshot interval. The guidance field between two
    /// snapshots is linear in t; substeps resolve the stiff node-avoiding
    /// motion that a single macro step overshoots. Eight keeps the ensemble
    /// non-crossing to well under a node spacing over a full run.
    std::size_t substeps = 8;
};

/// Integrates dx/dt = v(x, t) for each start with classical RK4 across the
/// snapshot sequence (cubic interpolation in x, linear in t). Trajectories
/// are sampled at the snapshot cadence; one that leaves the grid is
/// truncated and flagged, not an error.
std::vector<Trajectory> integrate_trajectories(const SnapshotSource& snapshots,
                                               std::span<const double> x0_list,
                                               const BohmianOptions& options = {});

} // namespace bhhg
