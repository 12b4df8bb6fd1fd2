#include "bhhg/config.hpp"
#include "bhhg/errors.hpp"
#include "bhhg/parallel.hpp"
#include "bhhg/pipeline.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"bohmian-hhg: strong-field model atom, Bohmian trajectories, "
                 "classical ensembles and time-frequency analysis"};
    app.set_version_flag("--version", std::string("bohmian-hhg ") + bhhg::kVersion);

    std::string pipeline_name;
    std::string config_path;
    std::string out_dir = "out";
    std::string potential_override;
    std::size_t threads = 0;

    app.add_option("pipeline", pipeline_name,
                   "eigen|propagate|bohmian|classical|spectrum|gabor|fig1|fig3")
        ->required();
    app.add_option("--config", config_path, "config file of section.key = value lines");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--potential", potential_override, "softcore|truncated (overrides config)");
    app.add_option("--threads", threads, "worker thread count (default: hardware/BHHG_THREADS)");

    CLI11_PARSE(app, argc, argv);

    try {
        const auto pipeline = bhhg::pipeline_from_string(pipeline_name);
        bhhg::RunConfig config =
            config_path.empty() ? bhhg::RunConfig{} : bhhg::parse_config(config_path);
        if (!potential_override.empty()) {
            if (potential_override == "softcore")
                config.potential.variant = bhhg::PotentialKind::softcore_long;
            else if (potential_override == "truncated")
                config.potential.variant = bhhg::PotentialKind::softcore_truncated;
            else
                throw bhhg::ConfigError("--potential must be softcore or truncated");
        }
        if (threads > 0)
            config.threads = threads;

        const auto outputs = bhhg::run_pipeline(config, pipeline, out_dir);
        for (const auto& name : outputs)
            std::cout << name << "\n";
        return 0;
    } catch (const bhhg::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bhhg::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
