#include <algorithm>
#include <chrono>
#include <map>
#include <vector>

#include "predprey/analysis.hpp"
#include "predprey/errors.hpp"

namespace predprey {

namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

double quartile_range(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const auto at = [&](double q) {
        const double pos = q * static_cast<double>(v.size() - 1);
        const auto lo = static_cast<std::size_t>(pos);
        const std::size_t hi = std::min(lo + 1, v.size() - 1);
        const double w = pos - static_cast<double>(lo);
        return (1.0 - w) * v[lo] + w * v[hi];
    };
    return at(0.75) - at(0.25);
}

}  // namespace

CostReport benchmark_cost(const std::vector<EngineKind>& engines,
                          const std::vector<CostCase>& cases, const EngineConfig& cfg,
                          int repetitions, std::uint64_t seed) {
    if (repetitions < 3) throw InvalidConfigError("repetitions must be >= 3");
    if (engines.empty() || cases.empty()) {
        throw InvalidConfigError("benchmark needs engines and cases");
    }
    constexpr double tick_seconds =
        static_cast<double>(Clock::period::num) / static_cast<double>(Clock::period::den);

    CostReport report;
    for (EngineKind engine : engines) {
        for (const CostCase& cc : cases) {
            EngineConfig run_cfg = cfg;
            run_cfg.kind = engine;
            run_cfg.seed = seed;

            CostMeasurement m;
            m.engine = engine;
            m.sweep_value = cc.sweep_value;

            run_engine(engine, cc.state0, cc.params, run_cfg);  // warm-up, discarded
            for (int rep = 0; rep < repetitions; ++rep) {
                const auto start = Clock::now();
                const Trajectory traj = run_engine(engine, cc.state0, cc.params, run_cfg);
                const auto stop = Clock::now();
                const double seconds = std::chrono::duration<double>(stop - start).count();
                if (seconds < 100.0 * tick_seconds) {
                    throw MeasurementError("run shorter than 100 clock ticks");
                }
                m.repetition_seconds.push_back(seconds);
                if (rep == 0) {
                    m.events = traj.events;
                    m.steps = traj.steps;
                } else if (traj.events != m.events || traj.steps != m.steps) {
                    throw MeasurementError("event counts differ across repetitions");
                }
            }
            m.median_seconds = median(m.repetition_seconds);
            m.iqr_seconds = quartile_range(m.repetition_seconds);
            report.measurements.push_back(std::move(m));
        }
    }

    std::map<EngineKind, std::pair<std::vector<double>, std::vector<double>>> series;
    for (const CostMeasurement& m : report.measurements) {
        series[m.engine].first.push_back(m.sweep_value);
        series[m.engine].second.push_back(m.median_seconds);
    }
    for (const auto& [engine, xy] : series) {
        if (xy.first.size() >= 3) {
            try {
                report.exponents.emplace_back(engine, fit_loglog(xy.first, xy.second).slope);
            } catch (const FitError&) {
                // sweep values without spread (e.g. rate sweeps): no exponent
            }
        }
    }
    return report;
}

}  // namespace predprey
