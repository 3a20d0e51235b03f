#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "config.hpp"
#include "experiment.hpp"
#include "predprey/errors.hpp"

namespace {

using predprey::cli::ExperimentConfig;
using predprey::cli::ExperimentKind;

// Flags override values loaded from --config, which override the defaults.
void add_common_options(CLI::App* cmd, ExperimentConfig& cfg, std::string& engine_name) {
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--out-dir", cfg.out_dir, "output directory");
    cmd->add_option("--engine", engine_name, "ensemble|direct|classic-mc|tau-leaping");
    cmd->add_option("--b-r", cfg.params.b_r, "prey birth rate");
    cmd->add_option("--p1-r", cfg.params.p1_r, "predation rate (predator birth)");
    cmd->add_option("--p2-r", cfg.params.p2_r, "predation rate (prey removal)");
    cmd->add_option("--d1-r", cfg.params.d1_r, "predator death rate");
    cmd->add_option("--d2-r", cfg.params.d2_r, "prey death rate");
    cmd->add_option("--m1-r", cfg.params.m1_r, "predator migration rate");
    cmd->add_option("--m2-r", cfg.params.m2_r, "prey migration rate");
    cmd->add_option("--mu", cfg.params.mu, "homogeneous interaction fraction");
    cmd->add_option("--q1", cfg.params.q1, "lattice interaction fraction");
    cmd->add_option("--q2", cfg.params.q2, "lattice migration fraction");
    cmd->add_option("--tau", cfg.params.tau, "ensemble time step");
    cmd->add_option("--epsilon", cfg.params.epsilon, "lattice spacing");
    cmd->add_option("--mcx", cfg.mcx, "cells along x");
    cmd->add_option("--mcy", cfg.mcy, "cells along y");
    cmd->add_option("--nc", cfg.nc, "per-cell capacity (N for a single cell)");
    cmd->add_option("--t-final", cfg.t_final, "simulated horizon");
    cmd->add_option("--record-stride", cfg.record_stride, "output sampling interval");
    cmd->add_option("--epsilon-leap", cfg.epsilon_leap, "tau-leaping tolerance");
    cmd->add_option("--realizations", cfg.realizations, "independent realizations");
    cmd->add_option("--n-values", cfg.n_values, "capacity sweep list")->delimiter(',');
    cmd->add_option("--p-values", cfg.p_values, "competition-rate sweep list")->delimiter(',');
    cmd->add_option("--initial", cfg.initial, "uniform|centered-blob");
    cmd->add_option("--f0", cfg.f0, "initial predator density");
    cmd->add_option("--g0", cfg.g0, "initial prey density");
    cmd->add_option("--boundary", cfg.boundary, "mean-field boundary: periodic|zero-flux");
    cmd->add_option("--mf-dt", cfg.mf_dt, "mean-field integrator step");
    cmd->add_option("--mf-method", cfg.mf_method, "rk4|rk45");
    cmd->add_option("--repetitions", cfg.repetitions, "benchmark repetitions");
    cmd->add_option("--omega-min", cfg.omega_min, "spectrum band lower edge");
    cmd->add_option("--omega-max", cfg.omega_max, "spectrum band upper edge");
    cmd->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lattice predator-prey stochastic simulation toolkit"};
    app.require_subcommand(1);

    // --config is applied before the flag values, so flags win.
    std::string config_path;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") config_path = argv[i + 1];
    }

    // Precedence: defaults < PREDPREY_OUT_DIR < config file < flags.
    ExperimentConfig cfg;
    if (const char* env_dir = std::getenv("PREDPREY_OUT_DIR"); env_dir != nullptr) {
        cfg.out_dir = env_dir;
    }
    try {
        if (!config_path.empty()) cfg = predprey::cli::parse_config_file(config_path, cfg);
    } catch (const predprey::SimError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    std::string engine_name = to_string(cfg.engine);
    const char* kinds[] = {"simulate", "meanfield", "validate", "convergence",
                           "cost",     "accuracy",  "spectrum"};
    for (const char* kind : kinds) {
        CLI::App* cmd = app.add_subcommand(kind, std::string("run the ") + kind + " experiment");
        cmd->add_option("--config", config_path, "key = value configuration file");
        add_common_options(cmd, cfg, engine_name);
        cmd->callback([kind, &cfg, &engine_name] {
            cfg.kind = predprey::cli::experiment_kind_from_string(kind);
            cfg.engine = predprey::engine_kind_from_string(engine_name);
        });
    }

    CLI11_PARSE(app, argc, argv);

    try {
        const auto files = predprey::cli::run_experiment(cfg);
        for (const auto& f : files) std::cout << f << '\n';
    } catch (const predprey::SimError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
