#include "predprey/params.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

void check_rate(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidConfigError(std::string(name) + " must be finite and >= 0");
    }
}

void check_probability(double rate, double tau, const char* name) {
    const double p = rate * tau;
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InvalidConfigError(std::string(name) + " * tau = " + std::to_string(p) +
                                 " outside [0,1]");
    }
}

}  // namespace

void ModelParams::validate_rates() const {
    check_rate(b_r, "b_r");
    check_rate(p1_r, "p1_r");
    check_rate(p2_r, "p2_r");
    check_rate(d1_r, "d1_r");
    check_rate(d2_r, "d2_r");
    check_rate(m1_r, "m1_r");
    check_rate(m2_r, "m2_r");
    if (!(mu >= 0.0 && mu <= 1.0)) throw InvalidConfigError("mu outside [0,1]");
    if (!(q1 >= 0.0 && q1 <= 1.0)) throw InvalidConfigError("q1 outside [0,1]");
    if (!(q2 >= 0.0 && q2 <= 1.0)) throw InvalidConfigError("q2 outside [0,1]");
    if (q1 + q2 > 1.0 + 1e-12) throw InvalidConfigError("q1 + q2 > 1");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw InvalidConfigError("epsilon must be > 0");
    }
}

void ModelParams::validate_probabilities(double step) const {
    check_probability(b_r, step, "b_r");
    check_probability(p1_r, step, "p1_r");
    check_probability(p2_r, step, "p2_r");
    check_probability(d1_r, step, "d1_r");
    check_probability(d2_r, step, "d2_r");
    check_probability(m1_r, step, "m1_r");
    check_probability(m2_r, step, "m2_r");
}

void ModelParams::validate() const {
    validate_rates();
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidConfigError("tau must be > 0");
    validate_probabilities(tau);
}

ModelParams ModelParams::table_homogeneous() {
    ModelParams p;
    p.b_r = 0.1;
    p.d1_r = 0.1;
    p.d2_r = 0.0;
    p.p1_r = 0.25;
    p.p2_r = 0.05;
    p.mu = 0.5;
    return p;
}

ModelParams ModelParams::table_heterogeneous() {
    ModelParams p;
    p.b_r = 0.1;
    p.d1_r = 0.1;
    p.d2_r = 0.0;
    p.p1_r = 0.25;
    p.p2_r = 0.05;
    p.m1_r = 0.5;
    p.m2_r = 0.5;
    p.q1 = 0.3;
    p.q2 = 0.3;
    return p;
}

namespace {

ScaledParams scale_with(const ModelParams& p, double q1, double q2) {
    ScaledParams s;
    s.b_t = p.b_r * q1;
    s.p1_t = p.p1_r * q1;
    s.p2_t = p.p2_r * q1;
    const double rest = 1.0 - q1 - q2;
    s.d1_t = rest * p.d1_r;
    s.d2_t = rest * p.d2_r;
    const double inv_eps2 = 1.0 / (p.epsilon * p.epsilon);
    s.m1_t = q2 * inv_eps2 * p.m1_r;
    s.m2_t = q2 * inv_eps2 * p.m2_r;
    s.r = 2.0 * s.b_t - s.d2_t;
    if (s.b_t > 0.0) {
        s.q_cap = 1.0 - s.d2_t / (2.0 * s.b_t);
    } else if (s.d2_t > 0.0) {
        throw CarryingCapacityError("carrying capacity undefined: b_t = 0 with d2_t > 0");
    } else {
        s.q_cap = 1.0;  // b_t = d2_t = 0: growth term vanishes, any finite value works
    }
    s.alpha = 2.0 * (s.p1_t + s.p2_t + s.b_t);
    return s;
}

}  // namespace

ScaledParams scale_params(const ModelParams& p) { return scale_with(p, p.q1, p.q2); }

ScaledParams scale_params_homogeneous(const ModelParams& p) {
    return scale_with(p, p.mu, 0.0);
}

ScaledParams scale_for(const ModelParams& p, GridDims dims) {
    return dims.is_homogeneous() ? scale_params_homogeneous(p) : scale_params(p);
}

EquilibriumPoint equilibrium(const ScaledParams& sp) {
    if (!(sp.p1_t > 0.0)) {
        throw DivisionByZeroError("equilibrium requires p1_t > 0");
    }
    EquilibriumPoint eq;
    eq.f_star = (2.0 * sp.b_t * sp.p1_t - sp.b_t * sp.d1_t - sp.p1_t * sp.d2_t) /
                (2.0 * sp.p1_t * (sp.p1_t + sp.p2_t + sp.b_t));
    eq.g_star = sp.d1_t / (2.0 * sp.p1_t);
    return eq;
}

std::uint64_t params_hash(const ModelParams& p) {
    const double fields[] = {p.b_r, p.p1_r, p.p2_r, p.d1_r, p.d2_r, p.m1_r,
                             p.m2_r, p.mu,   p.q1,   p.q2,   p.tau,  p.epsilon};
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (double v : fields) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffULL;
            h *= 0x100000001b3ULL;
        }
    }
    return h;
}

}  // namespace predprey
