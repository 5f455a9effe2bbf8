#pragma once

#include <filesystem>

#include <json.hpp>

#include "fdnls/config.hpp"

namespace fdnls {

/// Runs one experiment, writing its artifacts and manifest.json into
/// cfg.out_dir. The manifest is written on failure too. Returns the process
/// exit status: 0 on success, 1 on a library error, 2 on anything else.
int run_experiment(const RunConfig& cfg);

/// The experiment body without the manifest wrapper; returns the results
/// section of the manifest.
nlohmann::json execute_experiment(const RunConfig& cfg, const std::filesystem::path& out);

}  // namespace fdnls
