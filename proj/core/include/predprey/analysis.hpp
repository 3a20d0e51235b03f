#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "predprey/engines.hpp"
#include "predprey/meanfield.hpp"
#include "predprey/trajectory.hpp"

namespace predprey {

struct ErrorPair {
    double e_f = 0.0;
    double e_g = 0.0;
};

/// Homogeneous: sup over time of |traj - meanfield|. Spatial: average over
/// cells of the per-cell sup over time. The mean-field solution is linearly
/// resampled onto the trajectory grid; throws ResamplingError if it does not
/// cover it.
ErrorPair error_vs_meanfield(const Trajectory& traj, const std::vector<Field>& mf);

/// Same norms between two (typically realization-averaged) trajectories on a
/// common grid, the second one acting as the direct-method reference.
ErrorPair error_vs_direct(const Trajectory& approx, const Trajectory& reference);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares fit of log(y) vs log(x); points with y <= 0 are dropped,
/// fewer than 3 surviving points throw FitError.
LineFit fit_loglog(std::span<const double> x, std::span<const double> y);

struct ConvergenceConfig {
    EngineKind kind = EngineKind::ensemble;
    ModelParams params;
    EngineConfig engine;
    GridDims dims;
    std::vector<std::int64_t> n_values;
    int realizations = 50;
    /// Builds the initial state for a given capacity.
    std::function<LatticeState(GridDims, std::int64_t)> initial_state;
    SolverConfig mf;  // reference solver; stride/t_final are aligned internally
    int threads = 0;
};

struct ConvergenceReport {
    std::vector<double> n_values;
    std::vector<double> e_f;
    std::vector<double> e_g;
    LineFit fit_f;
    LineFit fit_g;
};

/// Errors of realization-averaged trajectories against the mean-field
/// reference across capacities, plus the fitted log-log slopes. Requires at
/// least 4 distinct capacities spanning two decades.
ConvergenceReport convergence_study(const ConvergenceConfig& cfg, std::uint64_t seed0);

/// All states with per-cell A + B <= Nc, lexicographic in (A, B), cells
/// nested left to right. E is implied.
std::vector<LatticeState> enumerate_states(GridDims dims, std::int64_t nc);

/// Exact probability vector over enumerate_states() at t_final, obtained by
/// RK4 integration of the master equation with the same mean-field-time
/// propensities the samplers use. Supported sizes: homogeneous with
/// N <= max_hom_n, or a 2-cell lattice with Nc <= max_het_nc.
std::vector<double> master_equation_exact(const LatticeState& state0, const ModelParams& p,
                                          double t_final, int max_hom_n = 6,
                                          int max_het_nc = 3);

/// Histogram of final states over `runs` independent engine runs, on the
/// enumerate_states() ordering.
std::vector<double> empirical_state_distribution(const RealizationSpec& spec, int runs,
                                                 std::uint64_t seed0, int threads = 0);

double total_variation(std::span<const double> p, std::span<const double> q);

/// One benchmarked configuration (a sweep point).
struct CostCase {
    double sweep_value = 0.0;  // N, or the swept rate
    LatticeState state0;
    ModelParams params;
};

struct CostMeasurement {
    EngineKind engine;
    double sweep_value = 0.0;
    double median_seconds = 0.0;
    double iqr_seconds = 0.0;
    std::vector<double> repetition_seconds;
    std::uint64_t events = 0;
    std::uint64_t steps = 0;
};

struct CostReport {
    std::vector<CostMeasurement> measurements;
    /// log-log exponent of median time vs sweep value, one entry per engine.
    std::vector<std::pair<EngineKind, double>> exponents;
};

/// Times every engine on every case: one warm-up run discarded, `repetitions`
/// timed runs (>= 3), median and IQR reported. Runs are strictly serial and
/// single-threaded. For a fixed seed the per-run event counts must agree
/// across repetitions; a run shorter than 100 clock ticks throws
/// MeasurementError.
CostReport benchmark_cost(const std::vector<EngineKind>& engines,
                          const std::vector<CostCase>& cases, const EngineConfig& cfg,
                          int repetitions, std::uint64_t seed);

}  // namespace predprey
