#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "predprey/engines.hpp"
#include "predprey/errors.hpp"
#include "predprey/rng.hpp"

namespace predprey {

namespace {

constexpr double kA = 0, kB = 1, kE = 2;

// The classic scheme reconstructs the positional sample array from the
// current counts after every update; this rebuild is what makes its cost
// grow linearly in the sample size per step. The sample is the scheme's
// numeric agent array (one label per slot).
void rebuild_sample(std::vector<double>& s, const LatticeState& st, int cell) {
    s.resize(static_cast<std::size_t>(st.capacity()));
    auto it = std::fill_n(s.begin(), st.a(cell), kA);
    it = std::fill_n(it, st.b(cell), kB);
    std::fill_n(it, st.e(cell), kE);
}

// Birth/competition outcome for an unordered pair; returns true if the state
// changed.
bool fire_pair(LatticeState& state, int cell, double l1, double l2,
               const ModelParams& p, double tau, Rng& rng) {
    const bool be = (l1 == kB && l2 == kE) || (l1 == kE && l2 == kB);
    const bool ab = (l1 == kA && l2 == kB) || (l1 == kB && l2 == kA);
    if (be) {
        if (rng.bernoulli(p.b_r * tau)) {
            state.shift_cell(cell, 0, +1, -1);
            return true;
        }
    } else if (ab) {
        const double u = rng.uniform01();
        if (u < p.p1_r * tau) {
            state.shift_cell(cell, +1, -1, 0);
            return true;
        }
        if (u < (p.p1_r + p.p2_r) * tau) {
            state.shift_cell(cell, 0, -1, +1);
            return true;
        }
    }
    return false;
}

bool fire_death(LatticeState& state, int cell, double label, const ModelParams& p,
                double tau, Rng& rng) {
    if (label == kA && rng.bernoulli(p.d1_r * tau)) {
        state.shift_cell(cell, -1, 0, +1);
        return true;
    }
    if (label == kB && rng.bernoulli(p.d2_r * tau)) {
        state.shift_cell(cell, 0, -1, +1);
        return true;
    }
    return false;
}

Trajectory run_classic_homogeneous(const LatticeState& state0, const ModelParams& p,
                                   const EngineConfig& cfg) {
    const std::int64_t n = state0.capacity();
    if (n < 2) throw DegenerateSampleError("classic MC needs N >= 2");
    LatticeState state = state0;
    Rng rng(cfg.seed);

    Trajectory traj;
    traj.dims = state.dims();
    traj.capacity = n;
    traj.engine = EngineKind::classic_mc;
    traj.seed = cfg.seed;
    traj.params_hash = params_hash(p);
    detail::Recorder rec(traj, cfg.t_final, cfg.stride());

    const double dt = cfg.tau / static_cast<double>(n);
    const auto n_steps = static_cast<std::uint64_t>(std::floor(cfg.t_final / dt + 1e-9));
    std::vector<double> sample;

    for (std::uint64_t step = 0; step < n_steps; ++step) {
        const double t_next = static_cast<double>(step + 1) * dt;
        rec.advance(t_next, state);

        rebuild_sample(sample, state, 0);
        if (rng.uniform01() < p.mu) {
            const auto i = rng.bounded(static_cast<std::uint64_t>(n));
            auto j = rng.bounded(static_cast<std::uint64_t>(n - 1));
            if (j >= i) ++j;
            if (fire_pair(state, 0, sample[i], sample[j], p, cfg.tau, rng)) ++traj.events;
        }
        rebuild_sample(sample, state, 0);
        if (rng.uniform01() < 1.0 - p.mu) {
            const auto k = rng.bounded(static_cast<std::uint64_t>(n));
            if (fire_death(state, 0, sample[k], p, cfg.tau, rng)) ++traj.events;
        }
        ++traj.steps;
    }
    rec.finish(state);
    return traj;
}

Trajectory run_classic_lattice(const LatticeState& state0, const ModelParams& p,
                               const EngineConfig& cfg) {
    const std::int64_t nc = state0.capacity();
    if (nc < 2) throw DegenerateSampleError("classic MC needs Nc >= 2");
    const GridDims dims = state0.dims();
    const int cells = dims.cells();
    LatticeState state = state0;
    Rng rng(cfg.seed);

    Trajectory traj;
    traj.dims = dims;
    traj.capacity = nc;
    traj.engine = EngineKind::classic_mc;
    traj.seed = cfg.seed;
    traj.params_hash = params_hash(p);
    detail::Recorder rec(traj, cfg.t_final, cfg.stride());

    const double dt = cfg.tau / static_cast<double>(nc);
    const auto n_steps = static_cast<std::uint64_t>(std::floor(cfg.t_final / dt + 1e-9));
    const int n_dirs = dims.is_2d() ? 4 : 2;
    const int dir_dx[4] = {1, -1, 0, 0};
    const int dir_dy[4] = {0, 0, 1, -1};
    std::vector<double> sample, partner_sample;

    for (std::uint64_t step = 0; step < n_steps; ++step) {
        const double t_next = static_cast<double>(step + 1) * dt;
        rec.advance(t_next, state);

        for (int y = 0; y < dims.mcy; ++y) {
            for (int x = 0; x < dims.mcx; ++x) {
                const int cell = dims.index(x, y);

                rebuild_sample(sample, state, cell);
                if (rng.uniform01() < p.q1) {
                    const auto i = rng.bounded(static_cast<std::uint64_t>(nc));
                    auto j = rng.bounded(static_cast<std::uint64_t>(nc - 1));
                    if (j >= i) ++j;
                    if (fire_pair(state, cell, sample[i], sample[j], p, cfg.tau, rng)) {
                        ++traj.events;
                    }
                }

                rebuild_sample(sample, state, cell);
                if (rng.uniform01() < p.q2) {
                    const auto d = static_cast<int>(rng.bounded(n_dirs));
                    const int nx = x + dir_dx[d], ny = y + dir_dy[d];
                    // Sampling a side beyond the boundary pairs with a ghost
                    // cell: nothing happens.
                    if (nx >= 0 && nx < dims.mcx && ny >= 0 && ny < dims.mcy) {
                        const int nb = dims.index(nx, ny);
                        const auto mi = rng.bounded(static_cast<std::uint64_t>(nc));
                        rebuild_sample(partner_sample, state, nb);
                        const auto pi = rng.bounded(static_cast<std::uint64_t>(nc));
                        const double ml = sample[mi];
                        const double pl = partner_sample[pi];
                        if (ml == kA && pl == kE && rng.bernoulli(p.m1_r * cfg.tau)) {
                            state.shift_cell(cell, -1, 0, +1);
                            state.shift_cell(nb, +1, 0, -1);
                            ++traj.events;
                        } else if (ml == kB && pl == kE && rng.bernoulli(p.m2_r * cfg.tau)) {
                            state.shift_cell(cell, 0, -1, +1);
                            state.shift_cell(nb, 0, +1, -1);
                            ++traj.events;
                        } else if (ml == kE && pl == kA && rng.bernoulli(p.m1_r * cfg.tau)) {
                            state.shift_cell(nb, -1, 0, +1);
                            state.shift_cell(cell, +1, 0, -1);
                            ++traj.events;
                        } else if (ml == kE && pl == kB && rng.bernoulli(p.m2_r * cfg.tau)) {
                            state.shift_cell(nb, 0, -1, +1);
                            state.shift_cell(cell, 0, +1, -1);
                            ++traj.events;
                        }
                    }
                }

                rebuild_sample(sample, state, cell);
                if (rng.uniform01() < 1.0 - p.q1 - p.q2) {
                    const auto k = rng.bounded(static_cast<std::uint64_t>(nc));
                    if (fire_death(state, cell, sample[k], p, cfg.tau, rng)) ++traj.events;
                }
            }
        }
        ++traj.steps;
    }
    rec.finish(state);
    return traj;
}

}  // namespace

Trajectory run_classic_mc(const LatticeState& state0, const ModelParams& p,
                          const EngineConfig& cfg) {
    cfg.validate();
    p.validate_rates();
    p.validate_probabilities(cfg.tau);
    if ((p.p1_r + p.p2_r) * cfg.tau > 1.0) {
        throw InvalidConfigError("(p1_r + p2_r) * tau > 1");
    }
    state0.check_invariants();
    return state0.dims().is_homogeneous() ? run_classic_homogeneous(state0, p, cfg)
                                          : run_classic_lattice(state0, p, cfg);
}

}  // namespace predprey
