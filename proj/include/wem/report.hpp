#pragma once

#include "wem/simulator.hpp"

#include <filesystem>
#include <string>

namespace wem {

inline constexpr const char* trials_csv_header =
    "seed,task,condition,duration_ms,path_exits,reopened,success";

/// One row per trial in run order, header first.
std::string trials_csv(const ExperimentResult& result);

std::string summary_json(const ExperimentResult& result);

/// Menu opened along the task's path with the cursor riding the target's
/// parent near its right edge, the state a figure of a deep WEM shows.
Menu snapshot_state(const TaskSpec& task, const MenuConfig& config, double eta = 0.9);

/// Writes summary.json, trials.csv, snapshot_base.svg and snapshot_test.svg.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);

} // namespace wem
