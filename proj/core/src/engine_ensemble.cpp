#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "predprey/engines.hpp"
#include "predprey/errors.hpp"
#include "predprey/rng.hpp"

namespace predprey {

namespace {

constexpr int kA = 0, kB = 1, kE = 2;

// Sequential without-replacement draws from a cell's occupancy. Drawing
// components one at a time and pairing consecutive draws is equivalent to
// selecting the whole subset uniformly, shuffling it, and pairing adjacent
// entries.
struct Urn {
    std::int64_t a, b, e, n;

    int draw(Rng& rng) {
        const auto r = static_cast<std::int64_t>(rng.bounded(static_cast<std::uint64_t>(n)));
        --n;
        if (r < a) {
            --a;
            return kA;
        }
        if (r < a + b) {
            --b;
            return kB;
        }
        --e;
        return kE;
    }
};

std::int64_t binomial_draw(Rng& rng, std::int64_t n, double prob) {
    if (n <= 0 || prob <= 0.0) return 0;
    if (prob >= 1.0) return n;
    std::binomial_distribution<std::int64_t> binom(n, prob);
    return binom(rng);
}

// Per-pair event probabilities. An unordered pair realizes both ordered
// interaction channels of the rate table, hence the factor 2 on the pair
// rules; death probabilities stay unscaled.
struct PairProbs {
    double birth;    // 2*b_r*tau
    double pred_a;   // 2*p1_r*tau
    double pred_ae;  // cumulative 2*(p1_r+p2_r)*tau
};

void check_pair_probs(const ModelParams& p, double tau) {
    if (2.0 * p.b_r * tau > 1.0) throw InvalidConfigError("2*b_r*tau > 1");
    if (2.0 * (p.p1_r + p.p2_r) * tau > 1.0) {
        throw InvalidConfigError("2*(p1_r + p2_r)*tau > 1");
    }
}

Trajectory make_trajectory(const LatticeState& s, const ModelParams& p,
                           const EngineConfig& cfg) {
    Trajectory traj;
    traj.dims = s.dims();
    traj.capacity = s.capacity();
    traj.engine = EngineKind::ensemble;
    traj.seed = cfg.seed;
    traj.params_hash = params_hash(p);
    return traj;
}

}  // namespace

Trajectory run_ensemble_homogeneous(const LatticeState& state0, const ModelParams& p,
                                    const EngineConfig& cfg) {
    cfg.validate();
    p.validate_rates();
    p.validate_probabilities(cfg.tau);
    check_pair_probs(p, cfg.tau);
    state0.check_invariants();
    if (!state0.dims().is_homogeneous()) {
        throw InvalidDimensionError("homogeneous engine requires a single cell");
    }
    const std::int64_t n = state0.capacity();
    const auto n_sel = static_cast<std::int64_t>(std::floor(p.mu * static_cast<double>(n)));
    if (n_sel < 2) throw InvalidConfigError("mu*N must be >= 2");
    const std::int64_t n_pairs = n_sel / 2;
    const bool odd = (n_sel % 2) != 0;

    const PairProbs pp{2.0 * p.b_r * cfg.tau, 2.0 * p.p1_r * cfg.tau,
                       2.0 * (p.p1_r + p.p2_r) * cfg.tau};
    const double pd1 = p.d1_r * cfg.tau;
    const double pd2 = p.d2_r * cfg.tau;

    LatticeState state = state0;
    Rng rng(cfg.seed);
    Trajectory traj = make_trajectory(state, p, cfg);
    detail::Recorder rec(traj, cfg.t_final, cfg.stride());

    const auto n_steps = static_cast<std::uint64_t>(std::floor(cfg.t_final / cfg.tau + 1e-9));
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        Urn urn{state.a(0), state.b(0), state.e(0), n};
        std::int64_t da = 0, db = 0, de = 0;

        for (std::int64_t i = 0; i < n_pairs; ++i) {
            const int c1 = urn.draw(rng);
            const int c2 = urn.draw(rng);
            const bool be = (c1 == kB && c2 == kE) || (c1 == kE && c2 == kB);
            const bool ab = (c1 == kA && c2 == kB) || (c1 == kB && c2 == kA);
            if (be) {
                if (rng.bernoulli(pp.birth)) {
                    ++db;
                    --de;
                    ++traj.events;
                }
            } else if (ab) {
                const double u = rng.uniform01();
                if (u < pp.pred_a) {
                    ++da;
                    --db;
                    ++traj.events;
                } else if (u < pp.pred_ae) {
                    --db;
                    ++de;
                    ++traj.events;
                }
            }
        }
        if (odd) urn.draw(rng);  // unpaired leftover idles this step

        // The urn remainder is the death pool of N - floor(mu*N) components.
        const std::int64_t k1 = binomial_draw(rng, urn.a, pd1);
        const std::int64_t k2 = binomial_draw(rng, urn.b, pd2);
        da -= k1;
        db -= k2;
        de += k1 + k2;
        traj.events += static_cast<std::uint64_t>(k1 + k2);

        rec.advance(static_cast<double>(step + 1) * cfg.tau, state);
        state.shift_cell(0, da, db, de);
        ++traj.steps;
    }
    rec.finish(state);
    return traj;
}

Trajectory run_ensemble_heterogeneous(const LatticeState& state0, const ModelParams& p,
                                      const EngineConfig& cfg) {
    cfg.validate();
    p.validate_rates();
    p.validate_probabilities(cfg.tau);
    check_pair_probs(p, cfg.tau);
    state0.check_invariants();
    const GridDims dims = state0.dims();
    if (dims.is_homogeneous()) {
        throw InvalidDimensionError("lattice engine requires more than one cell");
    }
    const std::int64_t nc = state0.capacity();
    const auto n_sel1 = static_cast<std::int64_t>(std::floor(p.q1 * static_cast<double>(nc)));
    if (n_sel1 < 2) throw InvalidConfigError("q1*Nc must be >= 2");
    const std::int64_t n_pairs = n_sel1 / 2;
    const bool odd1 = (n_sel1 % 2) != 0;
    const auto n_sel2 = static_cast<std::int64_t>(std::floor(p.q2 * static_cast<double>(nc)));
    const int n_dirs = dims.is_2d() ? 4 : 2;
    const std::int64_t dir_quota = n_sel2 / n_dirs;
    const std::int64_t quota_rest = n_sel2 - dir_quota * n_dirs;

    const PairProbs pp{2.0 * p.b_r * cfg.tau, 2.0 * p.p1_r * cfg.tau,
                       2.0 * (p.p1_r + p.p2_r) * cfg.tau};
    const double pm1 = p.m1_r * cfg.tau;
    const double pm2 = p.m2_r * cfg.tau;
    const double pd1 = p.d1_r * cfg.tau;
    const double pd2 = p.d2_r * cfg.tau;

    const int cells = dims.cells();
    // Migration sides are processed +x, -x, then +y, -y.
    const int dir_dx[4] = {1, -1, 0, 0};
    const int dir_dy[4] = {0, 0, 1, -1};
    std::vector<std::vector<int>> neighbor(cells, std::vector<int>(n_dirs, -1));
    for (int y = 0; y < dims.mcy; ++y) {
        for (int x = 0; x < dims.mcx; ++x) {
            for (int d = 0; d < n_dirs; ++d) {
                const int nx = x + dir_dx[d], ny = y + dir_dy[d];
                if (nx >= 0 && nx < dims.mcx && ny >= 0 && ny < dims.mcy) {
                    neighbor[dims.index(x, y)][d] = dims.index(nx, ny);
                }
            }
        }
    }

    LatticeState state = state0;
    Rng rng(cfg.seed);
    Trajectory traj = make_trajectory(state, p, cfg);
    detail::Recorder rec(traj, cfg.t_final, cfg.stride());

    std::vector<Urn> own(cells), partners(cells);
    std::vector<std::int64_t> da(cells), db(cells), de(cells);
    // Destructive uses per (cell, species) this step; an event may not consume
    // more of a species than the step-start count, so commits never go
    // negative even when the separate partner draws pick an already-used slot.
    std::vector<std::array<std::int64_t, 3>> used(cells);
    std::vector<std::array<std::int64_t, 3>> start(cells);

    const auto n_steps = static_cast<std::uint64_t>(std::floor(cfg.t_final / cfg.tau + 1e-9));
    for (std::uint64_t step = 0; step < n_steps; ++step) {
        for (int c = 0; c < cells; ++c) {
            own[c] = Urn{state.a(c), state.b(c), state.e(c), nc};
            partners[c] = own[c];
            start[c] = {state.a(c), state.b(c), state.e(c)};
            used[c] = {0, 0, 0};
            da[c] = db[c] = de[c] = 0;
        }
        const auto take = [&](int cell, int sp) {
            if (used[cell][sp] < start[cell][sp]) {
                ++used[cell][sp];
                return true;
            }
            return false;
        };
        const auto can_take = [&](int cell, int sp) {
            return used[cell][sp] < start[cell][sp];
        };

        // Within-cell birth/competition pairs.
        for (int c = 0; c < cells; ++c) {
            for (std::int64_t i = 0; i < n_pairs; ++i) {
                const int c1 = own[c].draw(rng);
                const int c2 = own[c].draw(rng);
                const bool be = (c1 == kB && c2 == kE) || (c1 == kE && c2 == kB);
                const bool ab = (c1 == kA && c2 == kB) || (c1 == kB && c2 == kA);
                if (be) {
                    if (rng.bernoulli(pp.birth) && take(c, kE)) {
                        ++db[c];
                        --de[c];
                        ++traj.events;
                    }
                } else if (ab) {
                    const double u = rng.uniform01();
                    if (u < pp.pred_a) {
                        if (take(c, kB)) {
                            ++da[c];
                            --db[c];
                            ++traj.events;
                        }
                    } else if (u < pp.pred_ae) {
                        if (take(c, kB)) {
                            --db[c];
                            ++de[c];
                            ++traj.events;
                        }
                    }
                }
            }
            if (odd1) own[c].draw(rng);
        }

        // Migration: per direction, dir_quota components pair with partner
        // slots drawn from the neighbor cell; either side of the pair may be
        // the moving component, the other must be the empty slot.
        for (int c = 0; c < cells; ++c) {
            for (int d = 0; d < n_dirs; ++d) {
                const int nb = neighbor[c][d];
                for (std::int64_t i = 0; i < dir_quota; ++i) {
                    const int mig = own[c].draw(rng);
                    if (nb < 0) continue;  // boundary side: migrants idle
                    const int partner = partners[nb].draw(rng);
                    if (mig == kA && partner == kE) {
                        if (rng.bernoulli(pm1) && can_take(c, kA) && can_take(nb, kE)) {
                            take(c, kA);
                            take(nb, kE);
                            --da[c];
                            ++de[c];
                            ++da[nb];
                            --de[nb];
                            ++traj.events;
                        }
                    } else if (mig == kB && partner == kE) {
                        if (rng.bernoulli(pm2) && can_take(c, kB) && can_take(nb, kE)) {
                            take(c, kB);
                            take(nb, kE);
                            --db[c];
                            ++de[c];
                            ++db[nb];
                            --de[nb];
                            ++traj.events;
                        }
                    } else if (mig == kE && partner == kA) {
                        if (rng.bernoulli(pm1) && can_take(nb, kA) && can_take(c, kE)) {
                            take(nb, kA);
                            take(c, kE);
                            --da[nb];
                            ++de[nb];
                            ++da[c];
                            --de[c];
                            ++traj.events;
                        }
                    } else if (mig == kE && partner == kB) {
                        if (rng.bernoulli(pm2) && can_take(nb, kB) && can_take(c, kE)) {
                            take(nb, kB);
                            take(c, kE);
                            --db[nb];
                            ++de[nb];
                            ++db[c];
                            --de[c];
                            ++traj.events;
                        }
                    }
                }
            }
            for (std::int64_t i = 0; i < quota_rest; ++i) own[c].draw(rng);
        }

        // Deaths on the urn remainder (Nc - floor(q1*Nc) - floor(q2*Nc) per cell).
        for (int c = 0; c < cells; ++c) {
            std::int64_t k1 = binomial_draw(rng, own[c].a, pd1);
            k1 = std::min(k1, start[c][kA] - used[c][kA]);
            used[c][kA] += k1;
            std::int64_t k2 = binomial_draw(rng, own[c].b, pd2);
            k2 = std::min(k2, start[c][kB] - used[c][kB]);
            used[c][kB] += k2;
            da[c] -= k1;
            db[c] -= k2;
            de[c] += k1 + k2;
            traj.events += static_cast<std::uint64_t>(k1 + k2);
        }

        rec.advance(static_cast<double>(step + 1) * cfg.tau, state);
        for (int c = 0; c < cells; ++c) state.shift_cell(c, da[c], db[c], de[c]);
        ++traj.steps;
    }
    rec.finish(state);
    return traj;
}

Trajectory run_ensemble(const LatticeState& state0, const ModelParams& p,
                        const EngineConfig& cfg) {
    return state0.dims().is_homogeneous() ? run_ensemble_homogeneous(state0, p, cfg)
                                          : run_ensemble_heterogeneous(state0, p, cfg);
}

Trajectory run_engine(EngineKind kind, const LatticeState& state0, const ModelParams& p,
                      const EngineConfig& cfg) {
    switch (kind) {
        case EngineKind::direct: return run_direct(state0, p, cfg);
        case EngineKind::classic_mc: return run_classic_mc(state0, p, cfg);
        case EngineKind::tau_leaping: return run_tau_leaping(state0, p, cfg);
        case EngineKind::ensemble: return run_ensemble(state0, p, cfg);
    }
    throw InvalidConfigError("unknown engine kind");
}

}  // namespace predprey
