#pragma once

#include <string>

#include "config.hpp"
#include "predprey/lattice.hpp"
#include "predprey/trajectory.hpp"

namespace predprey::cli {

/// Builds the configured initial state: "uniform" fills every cell with
/// round(f0*Nc) predators and round(g0*Nc) prey; "centered-blob" populates the
/// central fifth of a 1-D lattice with both species, or (in 2-D) a central
/// prey square of side ~mcx/5 surrounded by a predator ring of width ~mcx/10.
LatticeState make_initial_state(const ExperimentConfig& cfg);

/// Runs the configured experiment and writes its artifacts (CSV trajectories,
/// report.json, manifest.json) into cfg.out_dir. Returns the paths written.
std::vector<std::string> run_experiment(const ExperimentConfig& cfg);

/// CSV with header time,cell_x[,cell_y],f,g; one row per (time, cell).
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace predprey::cli
