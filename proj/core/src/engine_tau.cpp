#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "predprey/engines.hpp"
#include "predprey/errors.hpp"
#include "predprey/rates.hpp"
#include "predprey/rng.hpp"

namespace predprey {

Trajectory run_tau_leaping(const LatticeState& state0, const ModelParams& p,
                           const EngineConfig& cfg) {
    cfg.validate();
    p.validate_rates();
    state0.check_invariants();

    const EventSystem es(state0.dims(), p);
    LatticeState state = state0;
    Rng rng(cfg.seed);

    Trajectory traj;
    traj.dims = state.dims();
    traj.capacity = state.capacity();
    traj.engine = EngineKind::tau_leaping;
    traj.seed = cfg.seed;
    traj.params_hash = params_hash(p);
    detail::Recorder rec(traj, cfg.t_final, cfg.stride());

    const int cells = state.cells();
    const int n_events = es.n_events();
    std::vector<double> a(n_events), a_proj(n_events);
    std::vector<double> counts(3 * static_cast<std::size_t>(cells));
    std::vector<double> projected(counts.size());
    std::vector<std::int64_t> fired(n_events);

    double t = 0.0;
    double tau_prev = cfg.tau;
    while (t < cfg.t_final) {
        es.propensities(state, a);
        const double a0 = std::accumulate(a.begin(), a.end(), 0.0);
        if (a0 <= 0.0) break;  // absorbing

        for (int c = 0; c < cells; ++c) {
            counts[c] = static_cast<double>(state.a(c));
            counts[cells + c] = static_cast<double>(state.b(c));
            counts[2 * cells + c] = static_cast<double>(state.e(c));
        }

        // Leap selection against the expected state change: halve until every
        // projected propensity moves by at most epsilon.
        double leap = std::min({tau_prev * 2.0, cfg.tau, cfg.t_final - t});
        for (;;) {
            if (leap < cfg.tau_min) {
                throw LeapFailureError("leap selection underflowed tau_min");
            }
            projected = counts;
            for (int j = 0; j < n_events; ++j) {
                if (a[j] <= 0.0) continue;
                const double mean_fires = a[j] * leap;
                for (const EventDelta& d : es.deltas(j)) {
                    projected[static_cast<std::size_t>(d.species) * cells + d.cell] +=
                        mean_fires * d.dv;
                }
            }
            bool in_range = true;
            for (double v : projected) {
                if (v < 0.0) {
                    in_range = false;
                    break;
                }
            }
            if (in_range) {
                es.propensities_from_counts(projected, a_proj);
                double max_change = 0.0;
                for (int j = 0; j < n_events; ++j) {
                    max_change = std::max(max_change, std::abs(a_proj[j] - a[j]));
                }
                if (max_change <= cfg.epsilon_leap) break;
            }
            leap *= 0.5;
        }

        // Draw the event counts; a draw that would overshoot a count is
        // rejected and redrawn at half the leap.
        LatticeState candidate = state;
        std::uint64_t total_fired = 0;
        for (;;) {
            if (leap < cfg.tau_min) {
                throw LeapFailureError("negativity clamp underflowed tau_min");
            }
            candidate = state;
            total_fired = 0;
            for (int j = 0; j < n_events; ++j) {
                std::int64_t k = 0;
                if (a[j] > 0.0) {
                    std::poisson_distribution<std::int64_t> poisson(a[j] * leap);
                    k = poisson(rng);
                }
                fired[j] = k;
                total_fired += static_cast<std::uint64_t>(k);
            }
            for (int j = 0; j < n_events; ++j) {
                if (fired[j] == 0) continue;
                for (const EventDelta& d : es.deltas(j)) {
                    candidate.shift_cell(d.cell, d.species == 0 ? d.dv * fired[j] : 0,
                                         d.species == 1 ? d.dv * fired[j] : 0,
                                         d.species == 2 ? d.dv * fired[j] : 0);
                }
            }
            bool feasible = true;
            for (int c = 0; c < cells && feasible; ++c) {
                feasible = candidate.a(c) >= 0 && candidate.b(c) >= 0 && candidate.e(c) >= 0;
            }
            if (feasible) break;
            leap *= 0.5;
        }

        rec.advance(t + leap, state);
        state = candidate;
        t += leap;
        tau_prev = leap;
        ++traj.steps;
        traj.events += total_fired;
    }
    rec.finish(state);
    return traj;
}

}  // namespace predprey
