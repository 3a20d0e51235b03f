#pragma once

#include <utility>
#include <vector>

#include "predprey/lattice.hpp"
#include "predprey/params.hpp"

namespace predprey {

/// Real-valued density field (f = predators, g = prey) on the lattice grid.
struct Field {
    GridDims dims;
    std::vector<double> f;
    std::vector<double> g;
    double time = 0.0;

    Field() = default;
    Field(GridDims d, double f0, double g0)
        : dims(d), f(d.cells(), f0), g(d.cells(), g0) {}

    int cells() const { return dims.cells(); }

    /// Densities of an integer lattice state.
    static Field from_state(const LatticeState& s);
};

enum class Boundary { periodic, zero_flux };
enum class MfMethod { rk4, rk45 };

/// Integrator settings. Fixed-step RK4 enforces the diffusion stability bound
/// dt <= eps^2 / (4*max(m1_t, m2_t)); the embedded RK45 pair controls local
/// error against (atol, rtol) and emits output by linear interpolation.
struct SolverConfig {
    double dt = 0.01;
    double t_final = 100.0;
    double record_stride = 1.0;
    Boundary boundary = Boundary::periodic;
    MfMethod method = MfMethod::rk4;
    double rtol = 1e-8;
    double atol = 1e-10;
    double epsilon = 1.0;  // lattice spacing entering the discrete Laplacian

    void validate() const;
};

/// Reaction terms of the spatially homogeneous system:
/// df = 2*p1_t*f*g - d1_t*f,  dg = r*g*(1 - g/q_cap) - alpha*f*g.
std::pair<double, double> rhs_homogeneous(double f, double g, const ScaledParams& sp);

/// 3-point (1-D) / 5-point (2-D) stencil divided by epsilon^2. Zero-flux
/// boundaries drop the missing neighbor term (ghost value = boundary value).
std::vector<double> discrete_laplacian(const std::vector<double>& h, GridDims dims,
                                       double epsilon, Boundary boundary);

/// Reaction plus cross-diffusion: m1_t*(f*Lg + (1-g)*Lf) for predators,
/// m2_t*(g*Lf + (1-f)*Lg) for prey. On a 2-D grid the migration budget is
/// split over twice as many directions, so the effective coefficients halve.
Field rhs_heterogeneous(const Field& field, const ScaledParams& sp, double epsilon,
                        Boundary boundary);

/// Integrates the mean-field system and returns fields at the output grid
/// {0, stride, ..., t_final}. A 1x1 grid reduces to the homogeneous ODE.
std::vector<Field> integrate(const Field& f0, const ScaledParams& sp,
                             const SolverConfig& cfg);

}  // namespace predprey
