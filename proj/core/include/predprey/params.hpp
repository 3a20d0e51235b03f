#pragma once

#include <cstdint>

#include "predprey/lattice.hpp"

namespace predprey {

/// Raw model rates and event-fraction probabilities.
///
/// mu is the interaction fraction of the single-cell model; q1/q2 are the
/// interaction and migration fractions of the lattice model (q1 + q2 <= 1).
/// tau is the fixed step of the ensemble engine and enters validation:
/// every probability formed as rate * tau must lie in [0,1].
struct ModelParams {
    double b_r = 0.0;   // prey birth
    double p1_r = 0.0;  // predation with predator reproduction
    double p2_r = 0.0;  // predation with prey removal
    double d1_r = 0.0;  // predator death
    double d2_r = 0.0;  // prey death
    double m1_r = 0.0;  // predator migration
    double m2_r = 0.0;  // prey migration
    double mu = 0.0;
    double q1 = 0.0;
    double q2 = 0.0;
    double tau = 1.0;
    double epsilon = 1.0;  // lattice spacing

    /// Throws InvalidConfigError on any violated invariant.
    void validate() const;

    /// Rates, fractions and spacing only (no step-size coupling); the exact
    /// samplers accept any nonnegative rates.
    void validate_rates() const;

    /// Checks rate * step in [0,1] for every rate, for a caller-chosen step.
    void validate_probabilities(double step) const;

    /// Benchmark parameter sets used throughout the experiments.
    static ModelParams table_homogeneous();
    static ModelParams table_heterogeneous();

    bool operator==(const ModelParams&) const = default;
};

/// Rates after the event-fraction scaling, plus the derived logistic constants.
struct ScaledParams {
    double b_t = 0.0;
    double p1_t = 0.0;
    double p2_t = 0.0;
    double d1_t = 0.0;
    double d2_t = 0.0;
    double m1_t = 0.0;
    double m2_t = 0.0;
    double r = 0.0;      // prey growth rate 2*b_t - d2_t
    double q_cap = 1.0;  // carrying capacity 1 - d2_t/(2*b_t)
    double alpha = 0.0;  // predation pressure 2*(p1_t + p2_t + b_t)
};

/// Lattice scaling: b_t = b_r*q1, d1_t = (1-q1-q2)*d1_r, m1_t = q2*m1_r/eps^2, ...
ScaledParams scale_params(const ModelParams& p);

/// Single-cell scaling, substituting q1 <- mu and q2 <- 0.
ScaledParams scale_params_homogeneous(const ModelParams& p);

/// Picks the homogeneous mapping on a 1x1 grid, the lattice scaling otherwise.
ScaledParams scale_for(const ModelParams& p, GridDims dims);

struct EquilibriumPoint {
    double f_star = 0.0;
    double g_star = 0.0;
};

/// Stable coexistence equilibrium of the mean-field system. Requires p1_t > 0.
EquilibriumPoint equilibrium(const ScaledParams& sp);

/// FNV-1a over the numeric fields; identifies a parameter set in metadata.
std::uint64_t params_hash(const ModelParams& p);

}  // namespace predprey
