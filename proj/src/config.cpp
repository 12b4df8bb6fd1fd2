#include "bhhg/config.hpp"

#include "bhhg/errors.hpp"
#include "bhhg/grid.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bhhg {

PropagationSchedule RunConfig::schedule() const {
    PropagationSchedule s;
    s.dt = resolved_dt();
    s.t_end = resolved_t_end();
    s.snapshot_stride = snapshot_stride;
    s.record_stride = record_stride;
    if (absorber_width > 0.0)
        s.absorber = AbsorberSpec{absorber_width, absorber_exponent};
    s.accel_include_field = accel_include_field;
    return s;
}

void RunConfig::validate() const {
    if (!(grid_x_min < grid_x_max))
        throw ConfigError("config: grid.x_min must be < grid.x_max");
    if (!is_power_of_two(grid_n_points) || grid_n_points < 2)
        throw ConfigError("config: grid.n_points must be a power of two >= 2");
    potential.validate();
    pulse.validate();
    const SpatialGrid grid = make_grid(grid_x_min, grid_x_max, grid_n_points);
    schedule().validate(grid);
    if (!(x0_min < x0_max))
        throw ConfigError("config: bohmian.x0_min must be < bohmian.x0_max");
    if (x0_count < 1)
        throw ConfigError("config: bohmian.x0_count must be >= 1");
    if (!(rho_floor > 0.0))
        throw ConfigError("config: bohmian.rho_floor must be > 0");
    if (substeps < 1)
        throw ConfigError("config: bohmian.substeps must be >= 1");
    if (scan_points < 2)
        throw ConfigError("config: classical.scan_points must be >= 2");
    if (!(excursion_cap > 0.0))
        throw ConfigError("config: classical.excursion_cap must be > 0");
    if (!(x_exit > 0.0))
        throw ConfigError("config: classical.x_exit must be > 0");
    if (!(harmonic_max > 1.0) || !(harmonic_step > 0.0))
        throw ConfigError("config: spectral harmonic grid is empty");
    if (tprime_per_cycle < 2)
        throw ConfigError("config: spectral.tprime_per_cycle must be >= 2");
}

namespace {

double parse_double(const std::string& v, int line) {
    double out = 0.0;
    const char* begin = v.data();
    const char* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end)
        throw ConfigError("config line " + std::to_string(line) + ": bad number '" + v + "'");
    return out;
}

std::size_t parse_count(const std::string& v, int line) {
    const double d = parse_double(v, line);
    if (d < 0.0 || d != static_cast<double>(static_cast<std::size_t>(d)))
        throw ConfigError("config line " + std::to_string(line) + ": expected a whole number, got '" + v + "'");
    return static_cast<std::size_t>(d);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "true" || v == "1" || v == "on" || v == "yes")
        return true;
    if (v == "false" || v == "0" || v == "off" || v == "no")
        return false;
    throw ConfigError("config line " + std::to_string(line) + ": bad boolean '" + v + "'");
}

std::string trim(std::string s) {
    const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
    s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), is_space));
    s.erase(std::find_if_not(s.rbegin(), s.rend(), is_space).base(), s.end());
    return s;
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& key_table() {
    static const std::map<std::string, Setter> table = {
        {"grid.x_min", [](RunConfig& c, const std::string& v, int l) { c.grid_x_min = parse_double(v, l); }},
        {"grid.x_max", [](RunConfig& c, const std::string& v, int l) { c.grid_x_max = parse_double(v, l); }},
        {"grid.n_points", [](RunConfig& c, const std::string& v, int l) { c.grid_n_points = parse_count(v, l); }},
        {"potential.variant",
         [](RunConfig& c, const std::string& v, int l) {
             if (v == "softcore" || v == "softcore-long" || v == "long")
                 c.potential.variant = PotentialKind::softcore_long;
             else if (v == "truncated" || v == "softcore-truncated")
                 c.potential.variant = PotentialKind::softcore_truncated;
             else
                 throw ConfigError("config line " + std::to_string(l) +
                                   ": potential.variant must be softcore or truncated");
         }},
        {"potential.a0", [](RunConfig& c, const std::string& v, int l) { c.potential.a0 = parse_double(v, l); }},
        {"potential.L", [](RunConfig& c, const std::string& v, int l) { c.potential.L = parse_double(v, l); }},
        {"pulse.E0", [](RunConfig& c, const std::string& v, int l) { c.pulse.E0 = parse_double(v, l); }},
        {"pulse.omega", [](RunConfig& c, const std::string& v, int l) { c.pulse.omega = parse_double(v, l); }},
        {"pulse.n_ramp", [](RunConfig& c, const std::string& v, int l) { c.pulse.n_ramp = parse_double(v, l); }},
        {"pulse.n_flat", [](RunConfig& c, const std::string& v, int l) { c.pulse.n_flat = parse_double(v, l); }},
        {"schedule.dt", [](RunConfig& c, const std::string& v, int l) { c.dt = parse_double(v, l); }},
        {"schedule.t_end", [](RunConfig& c, const std::string& v, int l) { c.t_end = parse_double(v, l); }},
        {"schedule.snapshot_stride",
         [](RunConfig& c, const std::string& v, int l) { c.snapshot_stride = parse_count(v, l); }},
        {"schedule.record_stride",
         [](RunConfig& c, const std::string& v, int l) { c.record_stride = parse_count(v, l); }},
        {"schedule.absorber_width",
         [](RunConfig& c, const std::string& v, int l) { c.absorber_width = parse_double(v, l); }},
        {"schedule.absorber_exponent",
         [](RunConfig& c, const std::string& v, int l) { c.absorber_exponent = parse_double(v, l); }},
        {"schedule.accel_include_field",
         [](RunConfig& c, const std::string& v, int l) { c.accel_include_field = parse_bool(v, l); }},
        {"bohmian.x0_min", [](RunConfig& c, const std::string& v, int l) { c.x0_min = parse_double(v, l); }},
        {"bohmian.x0_max", [](RunConfig& c, const std::string& v, int l) { c.x0_max = parse_double(v, l); }},
        {"bohmian.x0_count", [](RunConfig& c, const std::string& v, int l) { c.x0_count = parse_count(v, l); }},
        {"bohmian.rho_floor", [](RunConfig& c, const std::string& v, int l) { c.rho_floor = parse_double(v, l); }},
        {"bohmian.substeps", [](RunConfig& c, const std::string& v, int l) { c.substeps = parse_count(v, l); }},
        {"bohmian.peripheral_x0",
         [](RunConfig& c, const std::string& v, int l) { c.peripheral_x0 = parse_double(v, l); }},
        {"classical.scan_points",
         [](RunConfig& c, const std::string& v, int l) { c.scan_points = parse_count(v, l); }},
        {"classical.excursion_cap",
         [](RunConfig& c, const std::string& v, int l) { c.excursion_cap = parse_double(v, l); }},
        {"classical.x_exit", [](RunConfig& c, const std::string& v, int l) { c.x_exit = parse_double(v, l); }},
        {"classical.turning_point_release",
         [](RunConfig& c, const std::string& v, int l) { c.turning_point_release = parse_bool(v, l); }},
        {"spectral.sigma", [](RunConfig& c, const std::string& v, int l) { c.sigma = parse_double(v, l); }},
        {"spectral.harmonic_max",
         [](RunConfig& c, const std::string& v, int l) { c.harmonic_max = parse_double(v, l); }},
        {"spectral.harmonic_step",
         [](RunConfig& c, const std::string& v, int l) { c.harmonic_step = parse_double(v, l); }},
        {"spectral.tprime_per_cycle",
         [](RunConfig& c, const std::string& v, int l) { c.tprime_per_cycle = parse_count(v, l); }},
        {"run.seed", [](RunConfig& c, const std::string& v, int l) { c.seed = parse_count(v, l); }},
        {"run.threads", [](RunConfig& c, const std::string& v, int l) { c.threads = parse_count(v, l); }},
    };
    return table;
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos)
            raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected 'section.key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = key_table().find(key);
        if (it == key_table().end())
            throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" +
                              key + "'");
        it->second(config, value, line_no);
    }
    config.validate();
    return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace bhhg
