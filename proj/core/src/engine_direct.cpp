#include <cmath>
#include <numeric>

#include "predprey/engines.hpp"
#include "predprey/errors.hpp"
#include "predprey/rates.hpp"
#include "predprey/rng.hpp"

namespace predprey {

int direct_event_index(std::span<const double> propensities, double r1) {
    double a0 = 0.0;
    for (double a : propensities) a0 += a;
    const double target = r1 * a0;
    double cum = 0.0;
    int last_positive = -1;
    for (std::size_t j = 0; j < propensities.size(); ++j) {
        if (propensities[j] <= 0.0) continue;
        cum += propensities[j];
        last_positive = static_cast<int>(j);
        if (cum >= target) return last_positive;
    }
    return last_positive;  // round-off fallback: the last firable channel
}

double direct_waiting_time(double a0, double r2) { return std::log(1.0 / r2) / a0; }

Trajectory run_direct(const LatticeState& state0, const ModelParams& p,
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
    traj.engine = EngineKind::direct;
    traj.seed = cfg.seed;
    traj.params_hash = params_hash(p);
    detail::Recorder rec(traj, cfg.t_final, cfg.stride());

    std::vector<double> a;
    double t = 0.0;
    while (t < cfg.t_final) {
        es.propensities(state, a);
        const double a0 = std::accumulate(a.begin(), a.end(), 0.0);
        if (a0 <= 0.0) break;  // absorbing state, trajectory stays constant

        const double r1 = rng.uniform01();
        const double r2 = rng.uniform01_open_left();
        const int j = direct_event_index(a, r1);
        const double t_next = t + direct_waiting_time(a0, r2);

        rec.advance(t_next, state);
        if (t_next > cfg.t_final) {
            t = cfg.t_final;
            break;
        }
        LatticeState next = state;
        if (!es.try_apply(next, j)) {
            throw InfeasibleEventError("direct method proposed an infeasible event");
        }
        state = next;
        t = t_next;
        ++traj.steps;
        ++traj.events;
    }
    rec.finish(state);
    return traj;
}

}  // namespace predprey
