#pragma once

#include <vector>

#include "predprey/linear_noise.hpp"
#include "predprey/trajectory.hpp"

namespace predprey {

/// One-sided power spectrum on a frequency grid in radians per unit time.
struct SpectrumResult {
    std::vector<double> omega;
    std::vector<double> power;
    bool analytical = false;
    int realizations = 0;
};

/// Closed-form constants of P(w) = (Theta + Lambda w^2) / ((w^2 - Omega0^2)^2
/// + Gamma^2 w^2). The xi components are independent with variance sigma^2;
/// the two terms sharing xi_2 combine into one squared coefficient.
struct SpectrumConstants {
    double theta = 0.0;
    double lambda = 0.0;
    double omega0_sq = 0.0;
    double gamma = 0.0;
};

SpectrumConstants spectrum_constants(const LinearNoiseModel& model);

/// Evaluates the analytical spectrum on the given grid.
SpectrumResult analytical_spectrum(const LinearNoiseModel& model,
                                   std::vector<double> omega_grid);

/// Averaged periodogram of the mean-removed predator density of one cell:
/// P_k = (dt/n) <|DFT_k|^2>, omega_k = 2 pi k / (n dt), k = 0..n/2. All
/// trajectories must share one uniform time grid.
SpectrumResult empirical_spectrum(const std::vector<Trajectory>& trajectories,
                                  int cell = 0);

/// Location of the maximum of `power` restricted to omega in [lo, hi].
double spectrum_peak(const SpectrumResult& spectrum, double lo, double hi);

/// ||a - b||_2 / ||b||_2 over the bins of `a` with omega in [lo, hi];
/// `b` is linearly interpolated onto a's grid.
double spectrum_relative_l2(const SpectrumResult& a, const SpectrumResult& b, double lo,
                            double hi);

}  // namespace predprey
