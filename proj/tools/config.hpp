#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "predprey/lattice.hpp"
#include "predprey/params.hpp"
#include "predprey/trajectory.hpp"

namespace predprey::cli {

enum class ExperimentKind {
    validate,
    convergence,
    cost,
    accuracy,
    spectrum,
    simulate,
    meanfield,
};

const char* to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& name);

/// Full experiment description. Defaults reproduce the homogeneous benchmark
/// scenario (b_r=0.1, d1_r=0.1, d2_r=0, p1_r=0.25, p2_r=0.05, mu=0.5).
struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::validate;
    EngineKind engine = EngineKind::ensemble;
    std::uint64_t seed = 1;
    std::string out_dir = "out";

    ModelParams params = ModelParams::table_homogeneous();

    int mcx = 1;
    int mcy = 1;
    std::int64_t nc = 1000;

    double t_final = 500.0;
    double record_stride = 0.0;  // 0: every tau
    double epsilon_leap = 0.5;

    int realizations = 50;
    std::vector<std::int64_t> n_values;
    std::vector<double> p_values;  // competition-rate sweep for `cost`

    std::string initial = "uniform";  // uniform | centered-blob
    double f0 = 0.25;
    double g0 = 0.5;

    std::string boundary = "periodic";  // periodic | zero-flux
    double mf_dt = 0.01;
    std::string mf_method = "rk4";  // rk4 | rk45

    int repetitions = 5;
    double omega_min = 0.01;
    double omega_max = 1.0;
    int threads = 0;

    GridDims dims() const { return GridDims{mcx, mcy}; }
    EngineConfig engine_config() const;

    /// Cross-field invariants; throws InvalidConfigError.
    void validate() const;

    bool operator==(const ExperimentConfig&) const = default;
};

/// Parses the key = value schema ('#' comments, blank lines allowed) on top
/// of `base`. Unknown keys and malformed values report the key and line
/// number.
ExperimentConfig parse_config_text(const std::string& text,
                                   const ExperimentConfig& base = {});
ExperimentConfig parse_config_file(const std::string& path,
                                   const ExperimentConfig& base = {});

/// Canonical textual form; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace predprey::cli
