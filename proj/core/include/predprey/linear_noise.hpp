#pragma once

#include <array>
#include <cstdint>

#include "predprey/params.hpp"
#include "predprey/trajectory.hpp"

namespace predprey {

/// Linearization of the homogeneous mean-field system around (f*, g*):
/// drift Jacobian Psi (2x2) and demographic-noise matrix Phi (2x4). The four
/// noise components are i.i.d. with standard deviation sigma = 1/sqrt(N).
struct LinearNoiseModel {
    std::array<std::array<double, 2>, 2> psi{};
    std::array<std::array<double, 4>, 2> phi{};
    double n_size = 0.0;
    double sigma = 0.0;
    EquilibriumPoint eq;

    double spectral_radius() const;
};

/// Builds Psi analytically and Phi from the square-root noise amplitudes at
/// equilibrium. Throws InfeasibleEquilibriumError when a radicand is negative.
LinearNoiseModel build_linear_model(const ScaledParams& sp, double n_size);

/// Euler-Maruyama integration of the linear fluctuation system
/// d(x)/dt = Psi x + Phi xi. Returns deviations from equilibrium. cfg.tau is
/// the integration step (adjusted so the record stride is a whole number of
/// steps) and must satisfy dt * spectral_radius(Psi) < 1. With noise_off the
/// output is the damped linear oscillation.
Trajectory simulate_langevin_linear(const LinearNoiseModel& model, const EngineConfig& cfg,
                                    bool noise_on = true, double f0_dev = 0.05,
                                    double g0_dev = 0.0);

struct LangevinStats {
    std::uint64_t radicand_clamps = 0;
    std::uint64_t density_clamps = 0;
};

/// Euler-Maruyama integration of the nonlinear Langevin system with
/// state-dependent square-root noise. Negative radicands are clamped to zero
/// and counted; densities are clamped to [0,1] and counted.
Trajectory simulate_langevin_full(const ScaledParams& sp, double n_size,
                                  const EngineConfig& cfg, double f0, double g0,
                                  LangevinStats* stats = nullptr);

}  // namespace predprey
