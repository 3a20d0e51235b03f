#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "predprey/analysis.hpp"
#include "predprey/errors.hpp"
#include "predprey/rng.hpp"

using namespace predprey;

namespace {

Trajectory flat_trajectory(double f, double g, int samples, int cells = 1) {
    Trajectory t;
    t.dims = GridDims{cells, 1};
    t.capacity = 100;
    for (int i = 0; i < samples; ++i) {
        t.times.push_back(static_cast<double>(i));
        for (int c = 0; c < cells; ++c) {
            t.f.push_back(f);
            t.g.push_back(g);
        }
    }
    return t;
}

std::vector<Field> flat_fields(double f, double g, int samples, int cells = 1) {
    std::vector<Field> out;
    for (int i = 0; i < samples; ++i) {
        Field field(GridDims{cells, 1}, f, g);
        field.time = static_cast<double>(i);
        out.push_back(field);
    }
    return out;
}

}  // namespace

TEST_CASE("error against the mean-field solution") {
    const Trajectory t = flat_trajectory(0.3, 0.4, 10);
    const auto same = flat_fields(0.3, 0.4, 10);
    const ErrorPair zero = error_vs_meanfield(t, same);
    CHECK(zero.e_f == 0.0);
    CHECK(zero.e_g == 0.0);

    const auto offset = flat_fields(0.25, 0.4, 10);
    const ErrorPair shifted = error_vs_meanfield(t, offset);
    CHECK(shifted.e_f == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(shifted.e_g == 0.0);

    // spatial mode: average over cells of the per-cell sup
    Trajectory spatial = flat_trajectory(0.3, 0.4, 10, 2);
    for (std::size_t i = 0; i < spatial.times.size(); ++i) spatial.f[i * 2] = 0.5;
    const ErrorPair avg = error_vs_meanfield(spatial, flat_fields(0.3, 0.4, 10, 2));
    CHECK(avg.e_f == doctest::Approx(0.1).epsilon(1e-12));  // (0.2 + 0.0) / 2
}

TEST_CASE("error against the direct method reference") {
    const Trajectory a = flat_trajectory(0.3, 0.4, 10);
    CHECK(error_vs_direct(a, a).e_f == 0.0);
    Trajectory b = a;
    b.f[5] = 0.35;
    CHECK(error_vs_direct(b, a).e_f == doctest::Approx(0.05));
    Trajectory c = flat_trajectory(0.3, 0.4, 9);
    CHECK_THROWS_AS(error_vs_direct(a, c), ResamplingError);
}

TEST_CASE("log-log fit is exact on a power law and rejects degenerate input") {
    std::vector<double> n = {10, 100, 1000, 10000};
    std::vector<double> e;
    for (double v : n) e.push_back(3.0 / std::sqrt(v));
    const LineFit fit = fit_loglog(n, e);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-12));

    std::vector<double> two_x = {1.0, 2.0};
    std::vector<double> two_y = {1.0, 2.0};
    CHECK_THROWS_AS(fit_loglog(two_x, two_y), FitError);
    std::vector<double> with_zero = {1.0, 2.0, 3.0, 4.0};
    std::vector<double> zeros = {0.0, 0.0, 1.0, 1.0};
    CHECK_THROWS_AS(fit_loglog(with_zero, zeros), FitError);
}

TEST_CASE("state enumeration is lexicographic with E implied") {
    const auto states = enumerate_states(GridDims{1, 1}, 3);
    REQUIRE(states.size() == 10);  // (N+1)(N+2)/2
    CHECK(states.front().a(0) == 0);
    CHECK(states.front().b(0) == 0);
    CHECK(states[1].b(0) == 1);  // (0,1) follows (0,0)
    CHECK(states.back().a(0) == 3);
    CHECK(states.back().b(0) == 0);

    const auto het = enumerate_states(GridDims{2, 1}, 2);
    CHECK(het.size() == 36);  // 6 per cell, squared
}

TEST_CASE("master equation: delta mass at t = 0 and conservation later") {
    const ModelParams p = ModelParams::table_homogeneous();
    const LatticeState s0 = LatticeState::homogeneous(3, 1, 1);
    const auto at0 = master_equation_exact(s0, p, 0.0);
    double mass = 0.0;
    int support = 0;
    for (double v : at0) {
        mass += v;
        if (v > 0.0) ++support;
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(support == 1);

    const auto later = master_equation_exact(s0, p, 5.0);
    double total = 0.0;
    for (double v : later) {
        CHECK(v >= -1e-12);
        CHECK(v <= 1.0 + 1e-12);
        total += v;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("master equation rejects oversized state spaces") {
    const ModelParams p = ModelParams::table_homogeneous();
    CHECK_THROWS_AS(master_equation_exact(LatticeState::homogeneous(40, 5, 5), p, 1.0),
                    StateSpaceSizeError);
    CHECK_THROWS_AS(
        master_equation_exact(LatticeState(GridDims{3, 1}, 2), ModelParams::table_heterogeneous(), 1.0),
        StateSpaceSizeError);
}

TEST_CASE("direct-method histogram approaches the exact distribution") {
    const ModelParams p = ModelParams::table_homogeneous();
    const LatticeState s0 = LatticeState::homogeneous(3, 1, 1);
    const auto exact = master_equation_exact(s0, p, 5.0);

    RealizationSpec spec;
    spec.kind = EngineKind::direct;
    spec.state0 = s0;
    spec.params = p;
    spec.cfg.t_final = 5.0;
    spec.cfg.tau = 5.0;
    const auto hist = empirical_state_distribution(spec, 20000, 4242);
    CHECK(total_variation(hist, exact) < 0.05);
}

TEST_CASE("two-cell master equation matches the lattice direct method") {
    const ModelParams p = ModelParams::table_heterogeneous();
    LatticeState s0(GridDims{2, 1}, 3);
    s0.set_cell(0, 1, 2, 0);
    s0.set_cell(1, 0, 0, 3);
    const auto exact = master_equation_exact(s0, p, 4.0);

    RealizationSpec spec;
    spec.kind = EngineKind::direct;
    spec.state0 = s0;
    spec.params = p;
    spec.cfg.t_final = 4.0;
    spec.cfg.tau = 4.0;
    const auto hist = empirical_state_distribution(spec, 20000, 777);
    CHECK(total_variation(hist, exact) < 0.05);
}

TEST_CASE("total variation basics") {
    const std::vector<double> a = {0.5, 0.5, 0.0};
    const std::vector<double> b = {0.0, 0.5, 0.5};
    CHECK(total_variation(a, a) == 0.0);
    CHECK(total_variation(a, b) == doctest::Approx(0.5));
    const std::vector<double> c = {1.0};
    CHECK_THROWS_AS(total_variation(a, c), InvalidDimensionError);
}

TEST_CASE("benchmark produces positive medians and reproducible work") {
    const ModelParams p = ModelParams::table_homogeneous();
    EngineConfig cfg;
    cfg.t_final = 4.0;
    cfg.tau = 0.5;
    std::vector<CostCase> cases;
    for (std::int64_t n : {400, 800, 1600}) {
        cases.push_back({static_cast<double>(n),
                         LatticeState::homogeneous(n, n / 4, n / 2), p});
    }
    const CostReport report = benchmark_cost(
        {EngineKind::ensemble, EngineKind::classic_mc}, cases, cfg, 3, 99);
    REQUIRE(report.measurements.size() == 6);
    for (const CostMeasurement& m : report.measurements) {
        CHECK(m.median_seconds > 0.0);
        CHECK(m.repetition_seconds.size() == 3);
        CHECK(m.iqr_seconds >= 0.0);
    }
    CHECK(report.exponents.size() == 2);

    CHECK_THROWS_AS(benchmark_cost({EngineKind::ensemble}, cases, cfg, 2, 1),
                    InvalidConfigError);
}

TEST_CASE("convergence study validates its sweep") {
    ConvergenceConfig cc;
    cc.params = ModelParams::table_homogeneous();
    cc.dims = GridDims{1, 1};
    cc.n_values = {10, 20, 40, 80};  // not two decades
    cc.initial_state = [](GridDims d, std::int64_t nc) {
        return LatticeState::uniform(d, nc, nc / 4, nc / 2);
    };
    CHECK_THROWS_AS(convergence_study(cc, 1), InvalidConfigError);
}

TEST_CASE("small homogeneous convergence study recovers the 1/sqrt(N) law") {
    ConvergenceConfig cc;
    cc.kind = EngineKind::ensemble;
    cc.params = ModelParams::table_homogeneous();
    cc.engine.t_final = 120.0;
    cc.engine.tau = 1.0;
    cc.engine.record_stride = 2.0;
    cc.dims = GridDims{1, 1};
    cc.n_values = {16, 160, 1600, 16000};
    cc.realizations = 24;
    cc.initial_state = [](GridDims d, std::int64_t nc) {
        return LatticeState::uniform(d, nc, nc / 4, nc / 2);
    };
    cc.mf.dt = 0.02;
    const ConvergenceReport rep = convergence_study(cc, 987654);
    CHECK(rep.fit_f.slope < -0.3);
    CHECK(rep.fit_f.slope > -0.7);
    CHECK(rep.fit_g.slope < -0.3);
    CHECK(rep.fit_g.slope > -0.7);
    for (std::size_t i = 1; i < rep.e_f.size(); ++i) CHECK(rep.e_f[i] < rep.e_f[i - 1]);
}

TEST_CASE("competition-rate sweep: ensemble beats the direct method at N = 500") {
    EngineConfig cfg;
    cfg.t_final = 10.0;
    cfg.tau = 0.25;
    std::vector<CostCase> cases;
    for (double pv : {0.1, 0.5, 0.9}) {
        ModelParams p;
        p.mu = 0.5;
        p.b_r = 1.0;
        p.d1_r = 0.3;
        p.d2_r = 0.3;
        p.p1_r = pv;
        p.p2_r = pv;
        p.tau = 0.25;
        cases.push_back({pv, LatticeState::homogeneous(500, 125, 250), p});
    }
    const CostReport report =
        benchmark_cost({EngineKind::ensemble, EngineKind::direct}, cases, cfg, 3, 17);
    std::map<double, std::map<EngineKind, double>> medians;
    for (const CostMeasurement& m : report.measurements) {
        medians[m.sweep_value][m.engine] = m.median_seconds;
    }
    for (const auto& [p, by_engine] : medians) {
        CHECK(by_engine.at(EngineKind::ensemble) < by_engine.at(EngineKind::direct));
    }
}

TEST_CASE("the sup-norm error is a metric on the compared component") {
    Rng rng(64);
    const auto random_traj = [&rng] {
        Trajectory t;
        t.dims = GridDims{3, 1};
        for (int i = 0; i < 12; ++i) {
            t.times.push_back(static_cast<double>(i));
            for (int c = 0; c < 3; ++c) {
                const double f = 0.5 * rng.uniform01();
                t.f.push_back(f);
                t.g.push_back((1.0 - f) * rng.uniform01());
            }
        }
        return t;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const Trajectory a = random_traj();
        const Trajectory b = random_traj();
        const Trajectory c = random_traj();
        const ErrorPair ab = error_vs_direct(a, b);
        const ErrorPair ba = error_vs_direct(b, a);
        CHECK(ab.e_f == doctest::Approx(ba.e_f).epsilon(1e-15));
        CHECK(ab.e_g == doctest::Approx(ba.e_g).epsilon(1e-15));
        const ErrorPair ac = error_vs_direct(a, c);
        const ErrorPair cb = error_vs_direct(c, b);
        CHECK(ab.e_f <= ac.e_f + cb.e_f + 1e-12);
        CHECK(ab.e_g <= ac.e_g + cb.e_g + 1e-12);
        CHECK(error_vs_direct(a, a).e_f == 0.0);
    }
}
