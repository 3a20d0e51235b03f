#include "config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "predprey/errors.hpp"

namespace predprey::cli {

const char* to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::validate: return "validate";
        case ExperimentKind::convergence: return "convergence";
        case ExperimentKind::cost: return "cost";
        case ExperimentKind::accuracy: return "accuracy";
        case ExperimentKind::spectrum: return "spectrum";
        case ExperimentKind::simulate: return "simulate";
        case ExperimentKind::meanfield: return "meanfield";
    }
    return "unknown";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
    static const std::map<std::string, ExperimentKind> table = {
        {"validate", ExperimentKind::validate},   {"convergence", ExperimentKind::convergence},
        {"cost", ExperimentKind::cost},           {"accuracy", ExperimentKind::accuracy},
        {"spectrum", ExperimentKind::spectrum},   {"simulate", ExperimentKind::simulate},
        {"meanfield", ExperimentKind::meanfield},
    };
    const auto it = table.find(name);
    if (it == table.end()) throw InvalidConfigError("unknown experiment kind: " + name);
    return it->second;
}

EngineConfig ExperimentConfig::engine_config() const {
    EngineConfig cfg;
    cfg.kind = engine;
    cfg.seed = seed;
    cfg.t_final = t_final;
    cfg.tau = params.tau;
    cfg.epsilon_leap = epsilon_leap;
    cfg.record_stride = record_stride;
    return cfg;
}

void ExperimentConfig::validate() const {
    params.validate();
    engine_config().validate();
    if (mcx < 1 || mcy < 1) throw InvalidConfigError("grid dimensions must be >= 1");
    if (nc < 2) throw InvalidConfigError("nc must be >= 2");
    if (realizations < 1) throw InvalidConfigError("realizations must be >= 1");
    if (repetitions < 3) throw InvalidConfigError("repetitions must be >= 3");
    if (!(f0 >= 0.0 && g0 >= 0.0 && f0 + g0 <= 1.0)) {
        throw InvalidConfigError("initial densities must satisfy f0, g0 >= 0, f0+g0 <= 1");
    }
    if (initial != "uniform" && initial != "centered-blob") {
        throw InvalidConfigError("initial must be uniform or centered-blob");
    }
    if (boundary != "periodic" && boundary != "zero-flux") {
        throw InvalidConfigError("boundary must be periodic or zero-flux");
    }
    if (mf_method != "rk4" && mf_method != "rk45") {
        throw InvalidConfigError("mf_method must be rk4 or rk45");
    }
    if (!(mf_dt > 0.0)) throw InvalidConfigError("mf_dt must be > 0");
    if (!(omega_min >= 0.0 && omega_max > omega_min)) {
        throw InvalidConfigError("need 0 <= omega_min < omega_max");
    }
    const bool needs_sweep =
        kind == ExperimentKind::convergence || kind == ExperimentKind::accuracy;
    if (needs_sweep && n_values.empty()) {
        throw InvalidConfigError("n_values required for this experiment kind");
    }
    if (kind == ExperimentKind::cost && n_values.empty() && p_values.empty()) {
        throw InvalidConfigError("cost needs n_values or p_values");
    }
}

namespace {

struct Setter {
    std::function<void(ExperimentConfig&, const std::string&)> apply;
};

double parse_double(const std::string& v) {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
}

std::int64_t parse_int(const std::string& v) {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
}

std::vector<std::int64_t> parse_int_list(const std::string& v) {
    std::vector<std::int64_t> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_int(item));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_double(item));
    }
    return out;
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"kind", {[](ExperimentConfig& c, const std::string& v) {
             c.kind = experiment_kind_from_string(v);
         }}},
        {"engine", {[](ExperimentConfig& c, const std::string& v) {
             c.engine = engine_kind_from_string(v);
         }}},
        {"seed", {[](ExperimentConfig& c, const std::string& v) {
             c.seed = static_cast<std::uint64_t>(parse_int(v));
         }}},
        {"out_dir", {[](ExperimentConfig& c, const std::string& v) { c.out_dir = v; }}},
        {"b_r", {[](ExperimentConfig& c, const std::string& v) { c.params.b_r = parse_double(v); }}},
        {"p1_r", {[](ExperimentConfig& c, const std::string& v) { c.params.p1_r = parse_double(v); }}},
        {"p2_r", {[](ExperimentConfig& c, const std::string& v) { c.params.p2_r = parse_double(v); }}},
        {"d1_r", {[](ExperimentConfig& c, const std::string& v) { c.params.d1_r = parse_double(v); }}},
        {"d2_r", {[](ExperimentConfig& c, const std::string& v) { c.params.d2_r = parse_double(v); }}},
        {"m1_r", {[](ExperimentConfig& c, const std::string& v) { c.params.m1_r = parse_double(v); }}},
        {"m2_r", {[](ExperimentConfig& c, const std::string& v) { c.params.m2_r = parse_double(v); }}},
        {"mu", {[](ExperimentConfig& c, const std::string& v) { c.params.mu = parse_double(v); }}},
        {"q1", {[](ExperimentConfig& c, const std::string& v) { c.params.q1 = parse_double(v); }}},
        {"q2", {[](ExperimentConfig& c, const std::string& v) { c.params.q2 = parse_double(v); }}},
        {"tau", {[](ExperimentConfig& c, const std::string& v) { c.params.tau = parse_double(v); }}},
        {"epsilon", {[](ExperimentConfig& c, const std::string& v) {
             c.params.epsilon = parse_double(v);
         }}},
        {"mcx", {[](ExperimentConfig& c, const std::string& v) {
             c.mcx = static_cast<int>(parse_int(v));
         }}},
        {"mcy", {[](ExperimentConfig& c, const std::string& v) {
             c.mcy = static_cast<int>(parse_int(v));
         }}},
        {"nc", {[](ExperimentConfig& c, const std::string& v) { c.nc = parse_int(v); }}},
        {"t_final", {[](ExperimentConfig& c, const std::string& v) {
             c.t_final = parse_double(v);
         }}},
        {"record_stride", {[](ExperimentConfig& c, const std::string& v) {
             c.record_stride = parse_double(v);
         }}},
        {"epsilon_leap", {[](ExperimentConfig& c, const std::string& v) {
             c.epsilon_leap = parse_double(v);
         }}},
        {"realizations", {[](ExperimentConfig& c, const std::string& v) {
             c.realizations = static_cast<int>(parse_int(v));
         }}},
        {"n_values", {[](ExperimentConfig& c, const std::string& v) {
             c.n_values = parse_int_list(v);
         }}},
        {"p_values", {[](ExperimentConfig& c, const std::string& v) {
             c.p_values = parse_double_list(v);
         }}},
        {"initial", {[](ExperimentConfig& c, const std::string& v) { c.initial = v; }}},
        {"f0", {[](ExperimentConfig& c, const std::string& v) { c.f0 = parse_double(v); }}},
        {"g0", {[](ExperimentConfig& c, const std::string& v) { c.g0 = parse_double(v); }}},
        {"boundary", {[](ExperimentConfig& c, const std::string& v) { c.boundary = v; }}},
        {"mf_dt", {[](ExperimentConfig& c, const std::string& v) { c.mf_dt = parse_double(v); }}},
        {"mf_method", {[](ExperimentConfig& c, const std::string& v) { c.mf_method = v; }}},
        {"repetitions", {[](ExperimentConfig& c, const std::string& v) {
             c.repetitions = static_cast<int>(parse_int(v));
         }}},
        {"omega_min", {[](ExperimentConfig& c, const std::string& v) {
             c.omega_min = parse_double(v);
         }}},
        {"omega_max", {[](ExperimentConfig& c, const std::string& v) {
             c.omega_max = parse_double(v);
         }}},
        {"threads", {[](ExperimentConfig& c, const std::string& v) {
             c.threads = static_cast<int>(parse_int(v));
         }}},
    };
    return table;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text, const ExperimentConfig& base) {
    ExperimentConfig cfg = base;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw InvalidConfigError("line " + std::to_string(line_no) +
                                     ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw InvalidConfigError("line " + std::to_string(line_no) + ": unknown key '" +
                                     key + "'");
        }
        try {
            it->second.apply(cfg, value);
        } catch (const SimError&) {
            throw;
        } catch (const std::exception&) {
            throw InvalidConfigError("line " + std::to_string(line_no) +
                                     ": bad value for '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path, const ExperimentConfig& base) {
    std::ifstream in(path);
    if (!in) throw InvalidConfigError("cannot open config file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), base);
}

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        if constexpr (std::is_same_v<T, double>) {
            out += fmt(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

}  // namespace

std::string serialize_config(const ExperimentConfig& c) {
    std::string out;
    const auto kv = [&out](const std::string& k, const std::string& v) {
        out += k + " = " + v + "\n";
    };
    kv("kind", to_string(c.kind));
    kv("engine", to_string(c.engine));
    kv("seed", std::to_string(c.seed));
    kv("out_dir", c.out_dir);
    kv("b_r", fmt(c.params.b_r));
    kv("p1_r", fmt(c.params.p1_r));
    kv("p2_r", fmt(c.params.p2_r));
    kv("d1_r", fmt(c.params.d1_r));
    kv("d2_r", fmt(c.params.d2_r));
    kv("m1_r", fmt(c.params.m1_r));
    kv("m2_r", fmt(c.params.m2_r));
    kv("mu", fmt(c.params.mu));
    kv("q1", fmt(c.params.q1));
    kv("q2", fmt(c.params.q2));
    kv("tau", fmt(c.params.tau));
    kv("epsilon", fmt(c.params.epsilon));
    kv("mcx", std::to_string(c.mcx));
    kv("mcy", std::to_string(c.mcy));
    kv("nc", std::to_string(c.nc));
    kv("t_final", fmt(c.t_final));
    kv("record_stride", fmt(c.record_stride));
    kv("epsilon_leap", fmt(c.epsilon_leap));
    kv("realizations", std::to_string(c.realizations));
    if (!c.n_values.empty()) kv("n_values", join(c.n_values));
    if (!c.p_values.empty()) kv("p_values", join(c.p_values));
    kv("initial", c.initial);
    kv("f0", fmt(c.f0));
    kv("g0", fmt(c.g0));
    kv("boundary", c.boundary);
    kv("mf_dt", fmt(c.mf_dt));
    kv("mf_method", c.mf_method);
    kv("repetitions", std::to_string(c.repetitions));
    kv("omega_min", fmt(c.omega_min));
    kv("omega_max", fmt(c.omega_max));
    kv("threads", std::to_string(c.threads));
    return out;
}

}  // namespace predprey::cli
