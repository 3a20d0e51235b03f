#include "experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "predprey/analysis.hpp"
#include "predprey/engines.hpp"
#include "predprey/errors.hpp"
#include "predprey/linear_noise.hpp"
#include "predprey/meanfield.hpp"
#include "predprey/spectrum.hpp"

namespace predprey::cli {

namespace {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

LatticeState blob_state(const ExperimentConfig& cfg) {
    const GridDims dims = cfg.dims();
    LatticeState s(dims, cfg.nc);
    const auto a0 = static_cast<std::int64_t>(std::llround(cfg.f0 * static_cast<double>(cfg.nc)));
    const auto b0 = static_cast<std::int64_t>(std::llround(cfg.g0 * static_cast<double>(cfg.nc)));
    if (!dims.is_2d()) {
        // Both species concentrated in the central fifth of the interval.
        const int width = std::max(1, dims.mcx / 5);
        const int lo = (dims.mcx - width) / 2;
        for (int x = lo; x < lo + width; ++x) {
            s.set_cell(x, a0, b0, cfg.nc - a0 - b0);
        }
        return s;
    }
    // Prey square of side ~mcx/5 surrounded by a predator ring of width ~mcx/10.
    const int side = std::max(1, dims.mcx / 5);
    const int ring = std::max(1, dims.mcx / 10);
    const int lo_x = (dims.mcx - side) / 2;
    const int lo_y = (dims.mcy - side) / 2;
    for (int y = 0; y < dims.mcy; ++y) {
        for (int x = 0; x < dims.mcx; ++x) {
            const bool in_square = x >= lo_x && x < lo_x + side && y >= lo_y && y < lo_y + side;
            const bool in_ring = !in_square && x >= lo_x - ring && x < lo_x + side + ring &&
                                 y >= lo_y - ring && y < lo_y + side + ring;
            if (in_square) {
                s.set_cell(dims.index(x, y), 0, b0, cfg.nc - b0);
            } else if (in_ring) {
                s.set_cell(dims.index(x, y), a0, 0, cfg.nc - a0);
            }
        }
    }
    return s;
}

SolverConfig meanfield_config(const ExperimentConfig& cfg) {
    SolverConfig mf;
    mf.dt = cfg.mf_dt;
    mf.t_final = cfg.t_final;
    mf.record_stride = cfg.engine_config().stride();
    mf.boundary = cfg.boundary == "periodic" ? Boundary::periodic : Boundary::zero_flux;
    mf.method = cfg.mf_method == "rk4" ? MfMethod::rk4 : MfMethod::rk45;
    mf.epsilon = cfg.params.epsilon;
    return mf;
}

void write_fields_csv(const std::string& path, const std::vector<Field>& fields) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write " + path);
    const bool two_d = fields.front().dims.is_2d();
    out << (two_d ? "time,cell_x,cell_y,f,g\n" : "time,cell_x,f,g\n");
    for (const Field& f : fields) {
        for (int y = 0; y < f.dims.mcy; ++y) {
            for (int x = 0; x < f.dims.mcx; ++x) {
                const int c = f.dims.index(x, y);
                out << fmt(f.time) << ',' << x;
                if (two_d) out << ',' << y;
                out << ',' << fmt(f.f[c]) << ',' << fmt(f.g[c]) << '\n';
            }
        }
    }
}

ordered_json params_json(const ModelParams& p) {
    ordered_json j;
    j["b_r"] = p.b_r;
    j["p1_r"] = p.p1_r;
    j["p2_r"] = p.p2_r;
    j["d1_r"] = p.d1_r;
    j["d2_r"] = p.d2_r;
    j["m1_r"] = p.m1_r;
    j["m2_r"] = p.m2_r;
    j["mu"] = p.mu;
    j["q1"] = p.q1;
    j["q2"] = p.q2;
    j["tau"] = p.tau;
    j["epsilon"] = p.epsilon;
    return j;
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_json(const std::string& path, const ordered_json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write " + path);
    out << j.dump(2) << '\n';
}

struct Outputs {
    fs::path dir;
    std::vector<std::string> files;

    std::string path(const std::string& name) {
        files.push_back(name);
        return (dir / name).string();
    }
};

}  // namespace

LatticeState make_initial_state(const ExperimentConfig& cfg) {
    if (cfg.initial == "centered-blob") return blob_state(cfg);
    const auto a0 = static_cast<std::int64_t>(std::llround(cfg.f0 * static_cast<double>(cfg.nc)));
    const auto b0 = static_cast<std::int64_t>(std::llround(cfg.g0 * static_cast<double>(cfg.nc)));
    return LatticeState::uniform(cfg.dims(), cfg.nc, a0, b0);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SimError("cannot write " + path);
    const bool two_d = traj.dims.is_2d();
    out << (two_d ? "time,cell_x,cell_y,f,g\n" : "time,cell_x,f,g\n");
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        for (int y = 0; y < traj.dims.mcy; ++y) {
            for (int x = 0; x < traj.dims.mcx; ++x) {
                const int c = traj.dims.index(x, y);
                out << fmt(traj.times[i]) << ',' << x;
                if (two_d) out << ',' << y;
                out << ',' << fmt(traj.f_at(i, c)) << ',' << fmt(traj.g_at(i, c)) << '\n';
            }
        }
    }
}

namespace {

void run_simulate(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    const Trajectory traj =
        run_engine(cfg.engine, make_initial_state(cfg), cfg.params, cfg.engine_config());
    write_trajectory_csv(out.path("trajectory.csv"), traj);
    report["steps"] = traj.steps;
    report["events"] = traj.events;
}

void run_meanfield(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    const auto fields = integrate(Field::from_state(make_initial_state(cfg)),
                                  scale_for(cfg.params, cfg.dims()), meanfield_config(cfg));
    write_fields_csv(out.path("meanfield.csv"), fields);
    report["samples"] = fields.size();
}

void run_validate(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    RealizationSpec spec{cfg.engine, make_initial_state(cfg), cfg.params, cfg.engine_config()};
    const auto runs = run_realizations(spec, cfg.realizations, cfg.seed, cfg.threads);
    const MeanTrajectory mean = mean_trajectory(runs);
    const auto fields = integrate(Field::from_state(spec.state0),
                                  scale_for(cfg.params, cfg.dims()), meanfield_config(cfg));
    write_trajectory_csv(out.path("stochastic_mean.csv"), mean.mean);
    write_fields_csv(out.path("meanfield.csv"), fields);
    const ErrorPair err = error_vs_meanfield(mean.mean, fields);
    report["e_f"] = err.e_f;
    report["e_g"] = err.e_g;
    report["realizations"] = cfg.realizations;
}

void run_convergence(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    ConvergenceConfig cc;
    cc.kind = cfg.engine;
    cc.params = cfg.params;
    cc.engine = cfg.engine_config();
    cc.dims = cfg.dims();
    cc.n_values = cfg.n_values;
    cc.realizations = cfg.realizations;
    cc.threads = cfg.threads;
    cc.mf = meanfield_config(cfg);
    const ExperimentConfig base = cfg;
    cc.initial_state = [base](GridDims, std::int64_t nc) {
        ExperimentConfig c = base;
        c.nc = nc;
        return make_initial_state(c);
    };
    const ConvergenceReport rep = convergence_study(cc, cfg.seed);
    report["n_values"] = rep.n_values;
    report["e_f"] = rep.e_f;
    report["e_g"] = rep.e_g;
    report["slope_f"] = rep.fit_f.slope;
    report["slope_g"] = rep.fit_g.slope;
    report["intercept_f"] = rep.fit_f.intercept;
    report["intercept_g"] = rep.fit_g.intercept;
    (void)out;
}

void run_cost(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    std::vector<CostCase> cases;
    ExperimentConfig base = cfg;
    if (!cfg.n_values.empty()) {
        for (std::int64_t n : cfg.n_values) {
            base.nc = n;
            cases.push_back({static_cast<double>(n), make_initial_state(base), base.params});
        }
    } else {
        for (double p : cfg.p_values) {
            base.params.p1_r = p;
            base.params.p2_r = p;
            cases.push_back({p, make_initial_state(base), base.params});
        }
    }
    const std::vector<EngineKind> engines = {EngineKind::ensemble, EngineKind::direct,
                                             EngineKind::tau_leaping, EngineKind::classic_mc};
    const CostReport rep =
        benchmark_cost(engines, cases, cfg.engine_config(), cfg.repetitions, cfg.seed);

    ordered_json measurements = ordered_json::array();
    for (const CostMeasurement& m : rep.measurements) {
        ordered_json j;
        j["engine"] = to_string(m.engine);
        j["sweep_value"] = m.sweep_value;
        j["median_seconds"] = m.median_seconds;
        j["iqr_seconds"] = m.iqr_seconds;
        j["repetition_seconds"] = m.repetition_seconds;
        j["events"] = m.events;
        j["steps"] = m.steps;
        measurements.push_back(j);
    }
    report["measurements"] = measurements;
    ordered_json exponents;
    for (const auto& [engine, slope] : rep.exponents) {
        exponents[to_string(engine)] = slope;
    }
    report["exponents"] = exponents;
    (void)out;
}

void run_accuracy(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    ordered_json rows = ordered_json::array();
    ExperimentConfig base = cfg;
    for (std::int64_t n : cfg.n_values) {
        base.nc = n;
        const LatticeState state0 = make_initial_state(base);
        const auto mean_of = [&](EngineKind kind, std::uint64_t salt) {
            RealizationSpec spec{kind, state0, base.params, base.engine_config()};
            return mean_trajectory(
                       run_realizations(spec, base.realizations, base.seed ^ salt, base.threads))
                .mean;
        };
        const Trajectory direct = mean_of(EngineKind::direct, 0x9e3779b9);
        const Trajectory ensemble = mean_of(EngineKind::ensemble, 0x7f4a7c15);
        const Trajectory leaping = mean_of(EngineKind::tau_leaping, 0x85ebca6b);
        const ErrorPair e_ens = error_vs_direct(ensemble, direct);
        const ErrorPair e_tau = error_vs_direct(leaping, direct);
        ordered_json row;
        row["n"] = n;
        row["ensemble_e_f"] = e_ens.e_f;
        row["ensemble_e_g"] = e_ens.e_g;
        row["tau_leaping_e_f"] = e_tau.e_f;
        row["tau_leaping_e_g"] = e_tau.e_g;
        rows.push_back(row);
    }
    report["errors"] = rows;
    (void)out;
}

void run_spectrum(const ExperimentConfig& cfg, Outputs& out, ordered_json& report) {
    RealizationSpec spec{cfg.engine, make_initial_state(cfg), cfg.params, cfg.engine_config()};
    const auto runs = run_realizations(spec, cfg.realizations, cfg.seed, cfg.threads);
    const SpectrumResult empirical = empirical_spectrum(runs);

    const auto model =
        build_linear_model(scale_for(cfg.params, cfg.dims()), static_cast<double>(cfg.nc));
    const SpectrumResult analytical = analytical_spectrum(model, empirical.omega);

    report["omega"] = empirical.omega;
    report["empirical_power"] = empirical.power;
    report["analytical_power"] = analytical.power;
    report["realizations"] = cfg.realizations;
    report["empirical_peak"] = spectrum_peak(empirical, cfg.omega_min, cfg.omega_max);
    report["analytical_peak"] = spectrum_peak(analytical, cfg.omega_min, cfg.omega_max);
    report["relative_l2"] =
        spectrum_relative_l2(empirical, analytical, cfg.omega_min, cfg.omega_max);
    (void)out;
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    Outputs out;
    out.dir = cfg.out_dir;
    fs::create_directories(out.dir);

    ordered_json report;
    switch (cfg.kind) {
        case ExperimentKind::simulate: run_simulate(cfg, out, report); break;
        case ExperimentKind::meanfield: run_meanfield(cfg, out, report); break;
        case ExperimentKind::validate: run_validate(cfg, out, report); break;
        case ExperimentKind::convergence: run_convergence(cfg, out, report); break;
        case ExperimentKind::cost: run_cost(cfg, out, report); break;
        case ExperimentKind::accuracy: run_accuracy(cfg, out, report); break;
        case ExperimentKind::spectrum: run_spectrum(cfg, out, report); break;
    }
    write_json(out.path("report.json"), report);

    ordered_json manifest;
    manifest["version"] = "0.1.0";
    manifest["created"] = iso_timestamp();
    manifest["kind"] = to_string(cfg.kind);
    manifest["engine"] = to_string(cfg.engine);
    manifest["seed"] = cfg.seed;
    manifest["params"] = params_json(cfg.params);
    manifest["lattice"] = {{"mcx", cfg.mcx}, {"mcy", cfg.mcy}, {"nc", cfg.nc}};
    manifest["params_hash"] = params_hash(cfg.params);
    manifest["outputs"] = out.files;
    write_json((out.dir / "manifest.json").string(), manifest);

    std::vector<std::string> written;
    for (const std::string& f : out.files) written.push_back((out.dir / f).string());
    written.push_back((out.dir / "manifest.json").string());
    return written;
}

}  // namespace predprey::cli
