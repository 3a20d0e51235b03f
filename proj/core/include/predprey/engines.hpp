#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "predprey/lattice.hpp"
#include "predprey/params.hpp"
#include "predprey/trajectory.hpp"

namespace predprey {

/// Exact stochastic simulation (Gillespie direct method). Samples the next
/// event index and waiting time from the propensities a_j = Nc * pi_j, so the
/// trajectory clock matches the mean-field time scale.
Trajectory run_direct(const LatticeState& state0, const ModelParams& p,
                      const EngineConfig& cfg);

/// Classic Monte Carlo scheme: constant step tau/Nc, one candidate event per
/// branch per step, and the positional sample array rebuilt after every
/// update (its cost therefore grows as Nc per step).
Trajectory run_classic_mc(const LatticeState& state0, const ModelParams& p,
                          const EngineConfig& cfg);

/// Poisson tau-leaping with |delta a_j| <= epsilon leap selection and
/// reject-and-halve handling of negative excursions.
Trajectory run_tau_leaping(const LatticeState& state0, const ModelParams& p,
                           const EngineConfig& cfg);

/// Ensemble scheme, single cell: per fixed step tau, floor(mu*N) components
/// drawn without replacement and paired sequentially fire birth/competition
/// events; the remaining N - floor(mu*N) undergo independent deaths; all
/// updates commit against the step-start state.
Trajectory run_ensemble_homogeneous(const LatticeState& state0, const ModelParams& p,
                                    const EngineConfig& cfg);

/// Ensemble scheme on the lattice: per cell, floor(q1*Nc) components pair
/// within the cell, floor(q2*Nc) migrate split evenly across directions with
/// partners drawn from the neighbor cell, and the remainder undergo deaths.
Trajectory run_ensemble_heterogeneous(const LatticeState& state0, const ModelParams& p,
                                      const EngineConfig& cfg);

/// Dispatches on the grid: 1x1 runs the homogeneous variant.
Trajectory run_ensemble(const LatticeState& state0, const ModelParams& p,
                        const EngineConfig& cfg);

Trajectory run_engine(EngineKind kind, const LatticeState& state0, const ModelParams& p,
                      const EngineConfig& cfg);

/// Smallest index j with positive propensity and cumulative sum >= r1 * a0.
int direct_event_index(std::span<const double> propensities, double r1);

/// Exponential waiting time ln(1/r2) / a0.
double direct_waiting_time(double a0, double r2);

/// One engine invocation repeated over independent realizations.
struct RealizationSpec {
    EngineKind kind = EngineKind::ensemble;
    LatticeState state0;
    ModelParams params;
    EngineConfig cfg;
};

/// Runs `count` independent realizations with per-realization seeds derived
/// as seed0 ^ index. Results are ordered by index regardless of scheduling;
/// threads = 0 picks the hardware concurrency.
std::vector<Trajectory> run_realizations(const RealizationSpec& spec, int count,
                                         std::uint64_t seed0, int threads = 0);

}  // namespace predprey
