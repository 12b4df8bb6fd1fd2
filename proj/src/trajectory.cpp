#include "bhhg/trajectory.hpp"

namespace bhhg {

std::string to_string(TrajectoryKind kind) {
    switch (kind) {
    case TrajectoryKind::bohmian:
        return "bohmian";
    case TrajectoryKind::classical_free:
        return "classical-free";
    case TrajectoryKind::classical_potential:
        return "classical-potential";
    }
    return "unknown";
}

} // namespace bhhg
