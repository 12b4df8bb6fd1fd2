#pragma once

#include "bhhg/time_series.hpp"

#include <string>

namespace bhhg {

enum class TrajectoryKind { bohmian, classical_free, classical_potential };

std::string to_string(TrajectoryKind kind);

/// Time series of (t, x, v) for one Bohmian or classical electron.
/// positions and velocities share t0, dt and length.
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::bohmian;
    double x0 = 0.0;
    double v0 = 0.0;
    double t_release = 0.0; ///< classical kinds only
    TimeSeries positions;
    TimeSeries velocities;
    bool exited_grid = false; ///< true when truncated at the grid edge

    std::size_t size() const { return positions.size(); }
};

} // namespace bhhg
