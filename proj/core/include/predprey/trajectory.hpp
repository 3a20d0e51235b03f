#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "predprey/lattice.hpp"
#include "predprey/params.hpp"

namespace predprey {

enum class EngineKind { direct, classic_mc, tau_leaping, ensemble };

const char* to_string(EngineKind k);
EngineKind engine_kind_from_string(const std::string& name);

/// Per-run engine settings. tau is the fixed step of the ensemble engine, the
/// base step of the classic Monte Carlo scheme (which advances tau/N per
/// iteration) and the initial leap of the tau-leaping method.
struct EngineConfig {
    EngineKind kind = EngineKind::ensemble;
    std::uint64_t seed = 0;
    double t_final = 100.0;
    double tau = 1.0;
    double epsilon_leap = 0.5;   // leap-selection tolerance, in (0,1)
    double tau_min = 1e-12;      // leap underflow threshold
    double record_stride = 0.0;  // 0: record every tau

    double stride() const { return record_stride > 0.0 ? record_stride : tau; }
    void validate() const;
};

/// Time series of per-cell densities (f = A/Nc, g = B/Nc) with run metadata.
struct Trajectory {
    GridDims dims;
    std::int64_t capacity = 0;
    std::vector<double> times;
    std::vector<double> f;  // times.size() * cells, row-major in time
    std::vector<double> g;

    EngineKind engine = EngineKind::ensemble;
    std::uint64_t seed = 0;
    std::uint64_t params_hash = 0;
    std::uint64_t steps = 0;   // engine iterations
    std::uint64_t events = 0;  // state-changing events applied

    int cells() const { return dims.cells(); }
    std::size_t samples() const { return times.size(); }

    double f_at(std::size_t t, int cell) const { return f[t * cells() + cell]; }
    double g_at(std::size_t t, int cell) const { return g[t * cells() + cell]; }

    /// Copy of the samples with time >= t0 (times shifted so the slice starts at 0).
    Trajectory tail_from(double t0) const;
};

/// Elementwise mean over equally shaped trajectories, plus per-sample standard
/// deviation of the mean (sample std / sqrt(R)).
struct MeanTrajectory {
    Trajectory mean;
    std::vector<double> f_sem;
    std::vector<double> g_sem;
};

MeanTrajectory mean_trajectory(const std::vector<Trajectory>& runs);

namespace detail {

/// Fills a Trajectory on the uniform grid {0, s, 2s, ..., t_final} with
/// piecewise-constant sampling: advance(t_new, state) records every grid
/// point strictly before t_new with `state`, finish() pads the remainder.
class Recorder {
public:
    Recorder(Trajectory& out, double t_final, double stride);

    void advance(double t_new, const LatticeState& state);
    void finish(const LatticeState& state);
    bool done() const { return next_ >= out_.times.size(); }

private:
    void record(const LatticeState& state);

    Trajectory& out_;
    std::size_t next_ = 0;
};

}  // namespace detail

}  // namespace predprey
