#include "predprey/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

// Linear interpolation of a per-cell field value onto time t.
double interp_field(const std::vector<Field>& mf, double t, int cell, bool predator) {
    if (t < mf.front().time - 1e-9 || t > mf.back().time + 1e-9) {
        throw ResamplingError("mean-field solution does not cover the trajectory grid");
    }
    if (t <= mf.front().time) {
        return predator ? mf.front().f[cell] : mf.front().g[cell];
    }
    std::size_t hi = 1;
    while (mf[hi].time < t && hi + 1 < mf.size()) ++hi;
    const Field& lo_f = mf[hi - 1];
    const Field& hi_f = mf[hi];
    const double w = (t - lo_f.time) / (hi_f.time - lo_f.time);
    const double lo_v = predator ? lo_f.f[cell] : lo_f.g[cell];
    const double hi_v = predator ? hi_f.f[cell] : hi_f.g[cell];
    return (1.0 - w) * lo_v + w * hi_v;
}

}  // namespace

ErrorPair error_vs_meanfield(const Trajectory& traj, const std::vector<Field>& mf) {
    if (mf.empty()) throw ResamplingError("empty mean-field solution");
    if (mf.front().dims != traj.dims) {
        throw ResamplingError("grid mismatch between trajectory and mean-field solution");
    }
    const int cells = traj.cells();
    ErrorPair out;
    double sum_f = 0.0, sum_g = 0.0;
    for (int c = 0; c < cells; ++c) {
        double sup_f = 0.0, sup_g = 0.0;
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            const double t = traj.times[i];
            sup_f = std::max(sup_f, std::abs(traj.f_at(i, c) - interp_field(mf, t, c, true)));
            sup_g = std::max(sup_g, std::abs(traj.g_at(i, c) - interp_field(mf, t, c, false)));
        }
        sum_f += sup_f;
        sum_g += sup_g;
    }
    out.e_f = sum_f / cells;
    out.e_g = sum_g / cells;
    return out;
}

ErrorPair error_vs_direct(const Trajectory& approx, const Trajectory& reference) {
    if (approx.dims != reference.dims || approx.times.size() != reference.times.size()) {
        throw ResamplingError("trajectories do not share a common grid");
    }
    for (std::size_t i = 0; i < approx.times.size(); ++i) {
        if (std::abs(approx.times[i] - reference.times[i]) > 1e-9) {
            throw ResamplingError("trajectories do not share a common grid");
        }
    }
    const int cells = approx.cells();
    double sum_f = 0.0, sum_g = 0.0;
    for (int c = 0; c < cells; ++c) {
        double sup_f = 0.0, sup_g = 0.0;
        for (std::size_t i = 0; i < approx.times.size(); ++i) {
            sup_f = std::max(sup_f, std::abs(approx.f_at(i, c) - reference.f_at(i, c)));
            sup_g = std::max(sup_g, std::abs(approx.g_at(i, c) - reference.g_at(i, c)));
        }
        sum_f += sup_f;
        sum_g += sup_g;
    }
    return {sum_f / cells, sum_g / cells};
}

LineFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw FitError("mismatched fit arrays");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] > 0.0 && y[i] > 0.0) {
            lx.push_back(std::log(x[i]));
            ly.push_back(std::log(y[i]));
        }
    }
    if (lx.size() < 3) throw FitError("fewer than 3 valid points for the log-log fit");
    const double n = static_cast<double>(lx.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw FitError("degenerate abscissa in the log-log fit");
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

ConvergenceReport convergence_study(const ConvergenceConfig& cfg, std::uint64_t seed0) {
    if (!cfg.initial_state) throw InvalidConfigError("initial_state builder missing");
    if (cfg.realizations < 1) throw InvalidConfigError("realizations must be >= 1");
    std::set<std::int64_t> distinct(cfg.n_values.begin(), cfg.n_values.end());
    if (distinct.size() < 4) {
        throw InvalidConfigError("convergence study needs >= 4 distinct capacities");
    }
    if (static_cast<double>(*distinct.rbegin()) < 100.0 * static_cast<double>(*distinct.begin())) {
        throw InvalidConfigError("capacities must span at least two decades");
    }

    ConvergenceReport report;
    for (std::int64_t n : cfg.n_values) {
        RealizationSpec spec;
        spec.kind = cfg.kind;
        spec.state0 = cfg.initial_state(cfg.dims, n);
        spec.params = cfg.params;
        spec.cfg = cfg.engine;
        const std::vector<Trajectory> runs =
            run_realizations(spec, cfg.realizations, seed0 ^ static_cast<std::uint64_t>(n << 20),
                             cfg.threads);
        const MeanTrajectory mean = mean_trajectory(runs);

        SolverConfig mf_cfg = cfg.mf;
        mf_cfg.t_final = cfg.engine.t_final;
        mf_cfg.record_stride = cfg.engine.stride();
        const std::vector<Field> mf =
            integrate(Field::from_state(spec.state0), scale_for(cfg.params, cfg.dims), mf_cfg);

        const ErrorPair err = error_vs_meanfield(mean.mean, mf);
        report.n_values.push_back(static_cast<double>(n));
        report.e_f.push_back(err.e_f);
        report.e_g.push_back(err.e_g);
    }
    report.fit_f = fit_loglog(report.n_values, report.e_f);
    report.fit_g = fit_loglog(report.n_values, report.e_g);
    return report;
}

double total_variation(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw InvalidDimensionError("distribution size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::abs(p[i] - q[i]);
    return 0.5 * s;
}

}  // namespace predprey
