#pragma once

#include "bhhg/bound_spectrum.hpp"
#include "bhhg/classical.hpp"
#include "bhhg/spectral.hpp"
#include "bhhg/time_series.hpp"
#include "bhhg/trajectory.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bhhg {

/// Shortest round-trip decimal form of a double (locale-independent,
/// byte-stable across runs).
std::string format_double(double value);

/// "t,a" / "t,E" style two-column series.
void write_series_csv(const std::filesystem::path& path, const TimeSeries& series,
                      const std::string& value_header);

/// "t,x,v" trajectory rows.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

/// "harmonic_order,intensity"; harmonic order = Omega / omega0.
void write_spectrum_csv(const std::filesystem::path& path, const PowerSpectrum& spectrum,
                        double omega0);

/// Matrix with first row = harmonic orders, first column = t'/cycle.
void write_map_csv(const std::filesystem::path& path, const TimeFrequencyMap& map,
                   double omega0, double cycle);

/// "t0,t_return,harmonic_order,branch,v0_sign,with_potential".
void write_arch_csv(const std::filesystem::path& path, const std::vector<ArchPoint>& table);

/// "n,energy".
void write_bound_spectrum_csv(const std::filesystem::path& path, const BoundSpectrum& spectrum);

} // namespace bhhg
