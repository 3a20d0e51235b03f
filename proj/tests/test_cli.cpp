#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "config.hpp"
#include "experiment.hpp"
#include "predprey/errors.hpp"

using namespace predprey;
using namespace predprey::cli;

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("predprey_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("minimal config file gets the tabulated homogeneous defaults") {
    const ExperimentConfig cfg = parse_config_text("kind = validate\n");
    CHECK(cfg.kind == ExperimentKind::validate);
    CHECK(cfg.params.b_r == 0.1);
    CHECK(cfg.params.d1_r == 0.1);
    CHECK(cfg.params.d2_r == 0.0);
    CHECK(cfg.params.p1_r == 0.25);
    CHECK(cfg.params.p2_r == 0.05);
    CHECK(cfg.params.mu == 0.5);
    CHECK(cfg.nc == 1000);
}

TEST_CASE("invalid fractions and probabilities are rejected") {
    CHECK_THROWS_AS(parse_config_text("kind = validate\nq1 = 0.6\nq2 = 0.6\n"),
                    InvalidConfigError);
    // p1_r * tau = 1.25 > 1
    CHECK_THROWS_AS(parse_config_text("kind = validate\ntau = 5\n"), InvalidConfigError);
}

TEST_CASE("unknown keys report the key and line number") {
    try {
        parse_config_text("kind = validate\nbogus = 1\n");
        FAIL("expected InvalidConfigError");
    } catch (const InvalidConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("bogus") != std::string::npos);
        CHECK(msg.find("line 2") != std::string::npos);
    }
    try {
        parse_config_text("kind = validate\nnc = abc\n");
        FAIL("expected InvalidConfigError");
    } catch (const InvalidConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("nc") != std::string::npos);
    }
}

TEST_CASE("config round-trips through its serialization") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::convergence;
    cfg.engine = EngineKind::tau_leaping;
    cfg.seed = 987;
    cfg.out_dir = "some/dir";
    cfg.params = ModelParams::table_heterogeneous();
    cfg.params.tau = 0.5;
    cfg.mcx = 50;
    cfg.nc = 500;
    cfg.t_final = 123.5;
    cfg.record_stride = 2.5;
    cfg.n_values = {10, 100, 1000, 10000};
    cfg.p_values = {0.1, 0.25};
    cfg.initial = "centered-blob";
    cfg.boundary = "zero-flux";
    cfg.mf_method = "rk45";
    cfg.realizations = 7;
    cfg.threads = 2;
    const ExperimentConfig parsed = parse_config_text(serialize_config(cfg));
    CHECK(parsed == cfg);
}

TEST_CASE("comments and blank lines are tolerated") {
    const ExperimentConfig cfg = parse_config_text(
        "# experiment\n"
        "\n"
        "kind = simulate   # trailing comment\n"
        "nc = 256\n");
    CHECK(cfg.kind == ExperimentKind::simulate);
    CHECK(cfg.nc == 256);
}

TEST_CASE("initial-state presets") {
    ExperimentConfig cfg;
    cfg.nc = 100;
    cfg.mcx = 10;
    cfg.initial = "centered-blob";
    const LatticeState blob = make_initial_state(cfg);
    // central fifth populated, boundary cells empty
    CHECK(blob.a(0) == 0);
    CHECK(blob.b(4) + blob.b(5) > 0);
    std::int64_t total_b = 0;
    for (int c = 0; c < 10; ++c) total_b += blob.b(c);
    CHECK(total_b == 50 * (10 / 5));

    cfg.initial = "uniform";
    const LatticeState uni = make_initial_state(cfg);
    for (int c = 0; c < 10; ++c) {
        CHECK(uni.a(c) == 25);
        CHECK(uni.b(c) == 50);
    }

    cfg.mcx = 10;
    cfg.mcy = 10;
    cfg.initial = "centered-blob";
    const LatticeState blob2d = make_initial_state(cfg);
    blob2d.check_invariants();
    std::int64_t ring_a = 0, square_b = 0;
    for (int c = 0; c < 100; ++c) {
        ring_a += blob2d.a(c);
        square_b += blob2d.b(c);
    }
    CHECK(ring_a > 0);
    CHECK(square_b > 0);
}

TEST_CASE("simulate experiment writes deterministic artifacts") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::simulate;
    cfg.nc = 200;
    cfg.t_final = 20.0;
    cfg.seed = 31337;

    const fs::path dir_a = temp_dir("sim_a");
    const fs::path dir_b = temp_dir("sim_b");
    cfg.out_dir = dir_a.string();
    const auto files_a = run_experiment(cfg);
    cfg.out_dir = dir_b.string();
    const auto files_b = run_experiment(cfg);
    REQUIRE(files_a.size() == files_b.size());

    CHECK(slurp(dir_a / "trajectory.csv") == slurp(dir_b / "trajectory.csv"));
    CHECK(slurp(dir_a / "report.json") == slurp(dir_b / "report.json"));

    // manifest: identical except the created timestamp
    auto manifest_a = nlohmann::json::parse(slurp(dir_a / "manifest.json"));
    auto manifest_b = nlohmann::json::parse(slurp(dir_b / "manifest.json"));
    manifest_a.erase("created");
    manifest_b.erase("created");
    CHECK(manifest_a == manifest_b);

    // every output referenced in the manifest exists and parses
    for (const auto& f : manifest_a["outputs"]) {
        const fs::path path = dir_a / f.get<std::string>();
        CHECK(fs::exists(path));
        if (path.extension() == ".json") {
            CHECK_NOTHROW(nlohmann::json::parse(slurp(path)));
        } else {
            const std::string head = slurp(path).substr(0, 5);
            CHECK(head == "time,");
        }
    }
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("validate experiment reports the mean-field errors") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::validate;
    cfg.nc = 300;
    cfg.t_final = 40.0;
    cfg.realizations = 10;
    cfg.seed = 5;
    const fs::path dir = temp_dir("validate");
    cfg.out_dir = dir.string();
    run_experiment(cfg);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["e_f"].get<double>() > 0.0);
    CHECK(report["e_f"].get<double>() < 0.5);
    CHECK(report["e_g"].get<double>() > 0.0);
    CHECK(fs::exists(dir / "stochastic_mean.csv"));
    CHECK(fs::exists(dir / "meanfield.csv"));
    fs::remove_all(dir);
}

TEST_CASE("2-D simulate emits the cell_y column") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::simulate;
    cfg.mcx = 4;
    cfg.mcy = 4;
    cfg.nc = 50;
    cfg.params = ModelParams::table_heterogeneous();
    cfg.t_final = 5.0;
    const fs::path dir = temp_dir("sim2d");
    cfg.out_dir = dir.string();
    run_experiment(cfg);
    const std::string csv = slurp(dir / "trajectory.csv");
    CHECK(csv.rfind("time,cell_x,cell_y,f,g\n", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("spectrum experiment reports both spectra") {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::spectrum;
    cfg.nc = 400;
    cfg.t_final = 400.0;
    cfg.record_stride = 1.0;
    cfg.realizations = 40;
    cfg.f0 = 0.2;
    cfg.g0 = 0.2;
    cfg.seed = 417;
    const fs::path dir = temp_dir("spectrum");
    cfg.out_dir = dir.string();
    run_experiment(cfg);
    const auto report = nlohmann::json::parse(slurp(dir / "report.json"));
    CHECK(report["omega"].size() == report["empirical_power"].size());
    CHECK(report["omega"].size() == report["analytical_power"].size());
    CHECK(report["empirical_peak"].get<double>() > 0.0);
    CHECK(report["relative_l2"].get<double>() < 1.0);
    fs::remove_all(dir);
}

TEST_CASE("convergence, accuracy and cost experiments run end to end") {
    const fs::path dir = temp_dir("kinds");

    ExperimentConfig conv;
    conv.kind = ExperimentKind::convergence;
    conv.n_values = {10, 40, 200, 1000};
    conv.realizations = 8;
    conv.t_final = 50.0;
    conv.out_dir = (dir / "conv").string();
    run_experiment(conv);
    const auto conv_report = nlohmann::json::parse(slurp(dir / "conv" / "report.json"));
    CHECK(conv_report["slope_f"].get<double>() < 0.0);

    ExperimentConfig acc;
    acc.kind = ExperimentKind::accuracy;
    acc.n_values = {100, 300};
    acc.realizations = 10;
    acc.t_final = 30.0;
    acc.out_dir = (dir / "acc").string();
    run_experiment(acc);
    const auto acc_report = nlohmann::json::parse(slurp(dir / "acc" / "report.json"));
    CHECK(acc_report["errors"].size() == 2);

    ExperimentConfig cost;
    cost.kind = ExperimentKind::cost;
    cost.n_values = {200, 400};
    cost.t_final = 5.0;
    cost.params.tau = 0.5;
    cost.repetitions = 3;
    cost.out_dir = (dir / "cost").string();
    run_experiment(cost);
    const auto cost_report = nlohmann::json::parse(slurp(dir / "cost" / "report.json"));
    CHECK(cost_report["measurements"].size() == 8);  // 4 engines x 2 sizes

    fs::remove_all(dir);
}
