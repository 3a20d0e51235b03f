#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "predprey/errors.hpp"
#include "predprey/meanfield.hpp"
#include "predprey/params.hpp"
#include "predprey/rng.hpp"

using namespace predprey;

namespace {

const ScaledParams kHom = scale_params_homogeneous(ModelParams::table_homogeneous());
const ScaledParams kHet = scale_params(ModelParams::table_heterogeneous());

}  // namespace

TEST_CASE("reaction terms vanish at the equilibrium") {
    const EquilibriumPoint eq = equilibrium(kHom);
    const auto [df, dg] = rhs_homogeneous(eq.f_star, eq.g_star, kHom);
    CHECK(std::abs(df) < 1e-15);
    CHECK(std::abs(dg) < 1e-15);
}

TEST_CASE("predator-free prey dynamics is purely logistic") {
    const double g = 0.3;
    const auto [df, dg] = rhs_homogeneous(0.0, g, kHom);
    CHECK(df == 0.0);
    CHECK(dg == doctest::Approx(kHom.r * g * (1.0 - g / kHom.q_cap)).epsilon(1e-14));
}

TEST_CASE("tabulated reaction value at f = g = 0.1") {
    const auto [df, dg] = rhs_homogeneous(0.1, 0.1, kHom);
    CHECK(df == doctest::Approx(-0.0025).epsilon(1e-12));
}

TEST_CASE("discrete Laplacian stencils") {
    const GridDims line{3, 1};
    const std::vector<double> spike = {0.0, 1.0, 0.0};
    const auto periodic = discrete_laplacian(spike, line, 1.0, Boundary::periodic);
    CHECK(periodic[0] == doctest::Approx(1.0));
    CHECK(periodic[1] == doctest::Approx(-2.0));
    CHECK(periodic[2] == doctest::Approx(1.0));

    const std::vector<double> constant = {0.7, 0.7, 0.7};
    for (double v : discrete_laplacian(constant, line, 0.5, Boundary::periodic)) {
        CHECK(v == 0.0);
    }

    // zero-flux: second difference of a linear ramp vanishes in the interior
    const GridDims line4{4, 1};
    const std::vector<double> ramp = {1.0, 2.0, 3.0, 4.0};
    const auto zf = discrete_laplacian(ramp, line4, 1.0, Boundary::zero_flux);
    CHECK(zf[1] == doctest::Approx(0.0));
    CHECK(zf[2] == doctest::Approx(0.0));
    CHECK(zf[0] == doctest::Approx(1.0));   // only the inner neighbor remains
    CHECK(zf[3] == doctest::Approx(-1.0));
}

TEST_CASE("periodic Laplacian sums to zero (discrete divergence theorem)") {
    Rng rng(17);
    const GridDims dims{8, 3};
    std::vector<double> h(dims.cells());
    for (double& v : h) v = rng.uniform01();
    const auto lap = discrete_laplacian(h, dims, 0.7, Boundary::periodic);
    double total = 0.0;
    for (double v : lap) total += v;
    CHECK(std::abs(total) < 1e-10);
}

TEST_CASE("uniform equilibrium field is a fixed point of the lattice rhs") {
    const EquilibriumPoint eq = equilibrium(kHet);
    const Field field(GridDims{10, 1}, eq.f_star, eq.g_star);
    const Field d = rhs_heterogeneous(field, kHet, 1.0, Boundary::periodic);
    for (int c = 0; c < d.cells(); ++c) {
        CHECK(std::abs(d.f[c]) < 1e-14);
        CHECK(std::abs(d.g[c]) < 1e-14);
    }
}

TEST_CASE("prey-free field reduces to diffusion with decay") {
    Rng rng(8);
    Field field(GridDims{6, 1}, 0.0, 0.0);
    for (int c = 0; c < 6; ++c) field.f[c] = 0.1 * rng.uniform01();
    const Field d = rhs_heterogeneous(field, kHet, 1.0, Boundary::zero_flux);
    const auto lf = discrete_laplacian(field.f, field.dims, 1.0, Boundary::zero_flux);
    for (int c = 0; c < 6; ++c) {
        CHECK(d.f[c] == doctest::Approx(kHet.m1_t * lf[c] - kHet.d1_t * field.f[c])
                            .epsilon(1e-12));
        CHECK(d.g[c] == 0.0);
    }
}

TEST_CASE("single predator spike matches the hand-evaluated stencil") {
    const GridDims dims{5, 1};
    Field field(dims, 0.0, 0.2);
    field.f[2] = 0.3;
    const Field d = rhs_heterogeneous(field, kHet, 1.0, Boundary::zero_flux);
    const auto lf = discrete_laplacian(field.f, dims, 1.0, Boundary::zero_flux);
    const auto lg = discrete_laplacian(field.g, dims, 1.0, Boundary::zero_flux);
    for (int c = 0; c < 5; ++c) {
        const double reaction_f = 2.0 * kHet.p1_t * field.f[c] * 0.2 - kHet.d1_t * field.f[c];
        const double expect_f =
            reaction_f + kHet.m1_t * (field.f[c] * lg[c] + (1.0 - 0.2) * lf[c]);
        CHECK(d.f[c] == doctest::Approx(expect_f).epsilon(1e-12));
        const double reaction_g =
            kHet.r * 0.2 * (1.0 - 0.2 / kHet.q_cap) - kHet.alpha * field.f[c] * 0.2;
        const double expect_g =
            reaction_g + kHet.m2_t * (0.2 * lf[c] + (1.0 - field.f[c]) * lg[c]);
        CHECK(d.g[c] == doctest::Approx(expect_g).epsilon(1e-12));
    }
}

TEST_CASE("homogeneous integration converges to the equilibrium") {
    SolverConfig cfg;
    cfg.dt = 0.01;
    cfg.t_final = 500.0;
    cfg.record_stride = 1.0;
    const Field f0(GridDims{1, 1}, 0.25, 0.5);
    const auto fields = integrate(f0, kHom, cfg);
    REQUIRE(fields.size() == 501);
    CHECK(std::abs(fields.back().f[0] - 0.2) < 1e-3);
    // the prey component carries a larger share of the slowest decaying mode
    CHECK(std::abs(fields.back().g[0] - 0.2) < 5e-3);
    // damped oscillation: early overshoot exists, late amplitude is smaller
    double early = 0.0, late = 0.0;
    for (std::size_t i = 0; i < 100; ++i) early = std::max(early, std::abs(fields[i].f[0] - 0.2));
    for (std::size_t i = 400; i < 500; ++i) late = std::max(late, std::abs(fields[i].f[0] - 0.2));
    CHECK(late < 0.1 * early);
}

TEST_CASE("zero initial field stays zero") {
    SolverConfig cfg;
    cfg.dt = 0.05;
    cfg.t_final = 10.0;
    const Field f0(GridDims{4, 1}, 0.0, 0.0);
    for (const Field& f : integrate(f0, kHet, cfg)) {
        for (int c = 0; c < 4; ++c) {
            CHECK(f.f[c] == 0.0);
            CHECK(f.g[c] == 0.0);
        }
    }
}

TEST_CASE("RK4 halving-step convergence order is at least 3.5") {
    SolverConfig coarse;
    coarse.t_final = 10.0;
    coarse.record_stride = 10.0;
    const Field f0(GridDims{1, 1}, 0.25, 0.5);

    const auto solve = [&](double dt) {
        SolverConfig c = coarse;
        c.dt = dt;
        return integrate(f0, kHom, c).back();
    };
    const Field ref = solve(0.0125);
    const Field a = solve(0.4);
    const Field b = solve(0.2);
    const double ea = std::abs(a.f[0] - ref.f[0]) + std::abs(a.g[0] - ref.g[0]);
    const double eb = std::abs(b.f[0] - ref.f[0]) + std::abs(b.g[0] - ref.g[0]);
    const double order = std::log2(ea / eb);
    CHECK(order >= 3.5);
}

TEST_CASE("positivity is preserved for CFL-compliant steps on random data") {
    Rng rng(4242);
    SolverConfig cfg;
    cfg.dt = 1.0 / (4.0 * std::max(kHet.m1_t, kHet.m2_t));
    cfg.t_final = 100.0;
    cfg.record_stride = 5.0;
    cfg.boundary = Boundary::zero_flux;
    for (int trial = 0; trial < 5; ++trial) {
        Field f0(GridDims{12, 1}, 0.0, 0.0);
        for (int c = 0; c < 12; ++c) {
            const double f = 0.5 * rng.uniform01();
            const double g = (1.0 - f) * rng.uniform01() * 0.8;
            f0.f[c] = f;
            f0.g[c] = g;
        }
        const auto fields = integrate(f0, kHet, cfg);
        for (const Field& f : fields) {
            for (int c = 0; c < 12; ++c) {
                CHECK(f.f[c] >= -1e-9);
                CHECK(f.g[c] >= -1e-9);
            }
        }
    }
}

TEST_CASE("fixed-step integration enforces the diffusion stability bound") {
    SolverConfig cfg;
    cfg.dt = 10.0;  // far above eps^2 / (4 * 0.15)
    cfg.t_final = 10.0;
    const Field f0(GridDims{8, 1}, 0.1, 0.1);
    CHECK_THROWS_AS(integrate(f0, kHet, cfg), InvalidConfigError);
}

TEST_CASE("adaptive RK45 agrees with RK4 on the lattice") {
    Field f0(GridDims{10, 1}, 0.0, 0.0);
    f0.f[4] = 0.2;
    f0.g[4] = 0.4;
    f0.g[5] = 0.4;
    SolverConfig rk4;
    rk4.dt = 0.02;
    rk4.t_final = 50.0;
    rk4.record_stride = 10.0;
    SolverConfig rk45 = rk4;
    rk45.method = MfMethod::rk45;
    rk45.rtol = 1e-9;
    rk45.atol = 1e-11;
    const auto a = integrate(f0, kHet, rk4);
    const auto b = integrate(f0, kHet, rk45);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (int c = 0; c < 10; ++c) {
            CHECK(a[i].f[c] == doctest::Approx(b[i].f[c]).epsilon(1e-4));
            CHECK(a[i].g[c] == doctest::Approx(b[i].g[c]).epsilon(1e-4));
        }
    }
}
