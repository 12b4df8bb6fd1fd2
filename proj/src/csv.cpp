#include "bhhg/csv.hpp"

#include "bhhg/errors.hpp"

#include <charconv>
#include <fstream>

namespace bhhg {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw ConfigError("cannot open output file " + path.string());
    return out;
}

} // namespace

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series,
                      const std::string& value_header) {
    auto out = open_out(path);
    out << "t," << value_header << "\n";
    for (std::size_t i = 0; i < series.size(); ++i)
        out << format_double(series.time(i)) << ',' << format_double(series.values[i]) << "\n";
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,x,v\n";
    for (std::size_t i = 0; i < traj.size(); ++i)
        out << format_double(traj.positions.time(i)) << ','
            << format_double(traj.positions.values[i]) << ','
            << format_double(traj.velocities.values[i]) << "\n";
}

void write_spectrum_csv(const std::filesystem::path& path, const PowerSpectrum& spectrum,
                        double omega0) {
    auto out = open_out(path);
    out << "harmonic_order,intensity\n";
    for (std::size_t i = 0; i < spectrum.size(); ++i)
        out << format_double(spectrum.omega[i] / omega0) << ','
            << format_double(spectrum.intensity[i]) << "\n";
}

void write_map_csv(const std::filesystem::path& path, const TimeFrequencyMap& map,
                   double omega0, double cycle) {
    auto out = open_out(path);
    for (const double w : map.omega_axis)
        out << ',' << format_double(w / omega0);
    out << "\n";
    for (std::size_t it = 0; it < map.t_axis.size(); ++it) {
        out << format_double(map.t_axis[it] / cycle);
        for (std::size_t iw = 0; iw < map.omega_axis.size(); ++iw)
            out << ',' << format_double(map.at(iw, it));
        out << "\n";
    }
}

void write_arch_csv(const std::filesystem::path& path, const std::vector<ArchPoint>& table) {
    auto out = open_out(path);
    out << "t0,t_return,harmonic_order,branch,v0_sign,with_potential\n";
    for (const auto& p : table)
        out << format_double(p.t0) << ',' << format_double(p.t_return) << ','
            << format_double(p.harmonic_order) << ',' << to_string(p.branch) << ','
            << p.v0_sign << ',' << (p.with_potential ? 1 : 0) << "\n";
}

void write_bound_spectrum_csv(const std::filesystem::path& path, const BoundSpectrum& spectrum) {
    auto out = open_out(path);
    out << "n,energy\n";
    for (std::size_t i = 0; i < spectrum.energies.size(); ++i)
        out << i << ',' << format_double(spectrum.energies[i]) << "\n";
}

} // namespace bhhg
