#pragma once

#include "bhhg/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace bhhg {

inline constexpr const char* kVersion = "1.0.0";

enum class Pipeline { eigen, propagate, bohmian, classical, spectrum, gabor, fig1, fig3 };

/// Throws ConfigError for an unknown name.
Pipeline pipeline_from_string(const std::string& name);
std::string to_string(Pipeline pipeline);

/// Executes the named stage with dependency chaining (a stage that needs
/// snapshots triggers `propagate` when they are absent from out_dir).
/// Writes data products plus manifest.txt into out_dir; returns the relative
/// paths of everything written. Partial outputs of a failing stage are
/// removed before the error propagates.
std::vector<std::string> run_pipeline(const RunConfig& config, Pipeline pipeline,
                                      const std::filesystem::path& out_dir);

} // namespace bhhg
