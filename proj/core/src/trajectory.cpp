#include "predprey/trajectory.hpp"

#include <cmath>
#include <cstddef>

#include "predprey/errors.hpp"

namespace predprey {

const char* to_string(EngineKind k) {
    switch (k) {
        case EngineKind::direct: return "direct";
        case EngineKind::classic_mc: return "classic-mc";
        case EngineKind::tau_leaping: return "tau-leaping";
        case EngineKind::ensemble: return "ensemble";
    }
    return "unknown";
}

EngineKind engine_kind_from_string(const std::string& name) {
    if (name == "direct") return EngineKind::direct;
    if (name == "classic-mc" || name == "classic_mc") return EngineKind::classic_mc;
    if (name == "tau-leaping" || name == "tau_leaping") return EngineKind::tau_leaping;
    if (name == "ensemble") return EngineKind::ensemble;
    throw InvalidConfigError("unknown engine kind: " + name);
}

void EngineConfig::validate() const {
    if (!(t_final > 0.0) || !std::isfinite(t_final)) {
        throw InvalidConfigError("t_final must be > 0");
    }
    if (!(tau > 0.0) || !std::isfinite(tau)) {
        throw InvalidConfigError("tau must be > 0");
    }
    if (!(epsilon_leap > 0.0 && epsilon_leap < 1.0)) {
        throw InvalidConfigError("epsilon_leap must lie in (0,1)");
    }
    if (!(tau_min > 0.0)) {
        throw InvalidConfigError("tau_min must be > 0");
    }
    if (record_stride < 0.0) {
        throw InvalidConfigError("record_stride must be >= 0");
    }
}

Trajectory Trajectory::tail_from(double t0) const {
    Trajectory out;
    out.dims = dims;
    out.capacity = capacity;
    out.engine = engine;
    out.seed = seed;
    out.params_hash = params_hash;
    out.steps = steps;
    out.events = events;
    const int nc = cells();
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] + 1e-12 < t0) continue;
        out.times.push_back(times[i] - t0);
        for (int c = 0; c < nc; ++c) {
            out.f.push_back(f_at(i, c));
            out.g.push_back(g_at(i, c));
        }
    }
    return out;
}

MeanTrajectory mean_trajectory(const std::vector<Trajectory>& runs) {
    if (runs.empty()) throw InvalidConfigError("mean_trajectory needs at least one run");
    const Trajectory& first = runs.front();
    for (const Trajectory& t : runs) {
        if (t.times.size() != first.times.size() || t.dims != first.dims) {
            throw ResamplingError("trajectories do not share a common grid");
        }
    }
    const std::size_t n = first.f.size();
    const double r = static_cast<double>(runs.size());

    MeanTrajectory out;
    out.mean = first;
    out.mean.seed = 0;
    out.mean.steps = 0;
    out.mean.events = 0;
    out.mean.f.assign(n, 0.0);
    out.mean.g.assign(n, 0.0);
    for (const Trajectory& t : runs) {
        for (std::size_t i = 0; i < n; ++i) {
            out.mean.f[i] += t.f[i];
            out.mean.g[i] += t.g[i];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.mean.f[i] /= r;
        out.mean.g[i] /= r;
    }

    out.f_sem.assign(n, 0.0);
    out.g_sem.assign(n, 0.0);
    if (runs.size() > 1) {
        for (const Trajectory& t : runs) {
            for (std::size_t i = 0; i < n; ++i) {
                const double df = t.f[i] - out.mean.f[i];
                const double dg = t.g[i] - out.mean.g[i];
                out.f_sem[i] += df * df;
                out.g_sem[i] += dg * dg;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            out.f_sem[i] = std::sqrt(out.f_sem[i] / (r - 1.0) / r);
            out.g_sem[i] = std::sqrt(out.g_sem[i] / (r - 1.0) / r);
        }
    }
    return out;
}

namespace detail {

Recorder::Recorder(Trajectory& out, double t_final, double stride) : out_(out) {
    const auto n = static_cast<std::size_t>(std::floor(t_final / stride + 1e-9));
    out_.times.resize(n + 1);
    for (std::size_t k = 0; k <= n; ++k) out_.times[k] = static_cast<double>(k) * stride;
    out_.f.reserve(out_.times.size() * out_.dims.cells());
    out_.g.reserve(out_.times.size() * out_.dims.cells());
}

void Recorder::record(const LatticeState& state) {
    for (int c = 0; c < state.cells(); ++c) {
        out_.f.push_back(state.f(c));
        out_.g.push_back(state.g(c));
    }
    ++next_;
}

void Recorder::advance(double t_new, const LatticeState& state) {
    while (next_ < out_.times.size() && out_.times[next_] < t_new - 1e-12) {
        record(state);
    }
}

void Recorder::finish(const LatticeState& state) {
    while (next_ < out_.times.size()) record(state);
}

}  // namespace detail

}  // namespace predprey
