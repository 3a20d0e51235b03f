#include "predprey/meanfield.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "predprey/errors.hpp"

namespace predprey {

Field Field::from_state(const LatticeState& s) {
    Field out;
    out.dims = s.dims();
    out.f.resize(s.cells());
    out.g.resize(s.cells());
    for (int c = 0; c < s.cells(); ++c) {
        out.f[c] = s.f(c);
        out.g[c] = s.g(c);
    }
    return out;
}

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw InvalidConfigError("dt must be > 0");
    if (!(t_final > 0.0)) throw InvalidConfigError("t_final must be > 0");
    if (!(record_stride > 0.0)) throw InvalidConfigError("record_stride must be > 0");
    if (!(rtol > 0.0) || !(atol > 0.0)) throw InvalidConfigError("tolerances must be > 0");
    if (!(epsilon > 0.0)) throw InvalidConfigError("epsilon must be > 0");
}

std::pair<double, double> rhs_homogeneous(double f, double g, const ScaledParams& sp) {
    if (sp.q_cap == 0.0) {
        throw CarryingCapacityError("carrying capacity is zero");
    }
    const double df = 2.0 * sp.p1_t * f * g - sp.d1_t * f;
    const double dg = sp.r * g * (1.0 - g / sp.q_cap) - sp.alpha * f * g;
    return {df, dg};
}

std::vector<double> discrete_laplacian(const std::vector<double>& h, GridDims dims,
                                       double epsilon, Boundary boundary) {
    if (dims.cells() != static_cast<int>(h.size())) {
        throw InvalidDimensionError("field size does not match grid");
    }
    const double inv_eps2 = 1.0 / (epsilon * epsilon);
    std::vector<double> out(h.size(), 0.0);
    const bool periodic = boundary == Boundary::periodic;

    const auto accumulate_axis = [&](int idx, int coord, int extent, int stride) {
        double acc = 0.0;
        if (coord > 0) {
            acc += h[idx - stride] - h[idx];
        } else if (periodic && extent > 1) {
            acc += h[idx + stride * (extent - 1)] - h[idx];
        }
        if (coord < extent - 1) {
            acc += h[idx + stride] - h[idx];
        } else if (periodic && extent > 1) {
            acc += h[idx - stride * (extent - 1)] - h[idx];
        }
        return acc;
    };

    for (int y = 0; y < dims.mcy; ++y) {
        for (int x = 0; x < dims.mcx; ++x) {
            const int idx = dims.index(x, y);
            double acc = 0.0;
            if (dims.mcx > 1) acc += accumulate_axis(idx, x, dims.mcx, 1);
            if (dims.mcy > 1) acc += accumulate_axis(idx, y, dims.mcy, dims.mcx);
            out[idx] = acc * inv_eps2;
        }
    }
    return out;
}

Field rhs_heterogeneous(const Field& field, const ScaledParams& sp, double epsilon,
                        Boundary boundary) {
    Field out;
    out.dims = field.dims;
    out.time = field.time;
    const int n = field.cells();
    out.f.resize(n);
    out.g.resize(n);

    // On two axes the migration budget is split over four directions instead
    // of two, halving the per-axis diffusion coefficient.
    const double share = field.dims.is_2d() ? 0.5 : 1.0;
    const double m1 = sp.m1_t * share;
    const double m2 = sp.m2_t * share;

    const bool diffusive = m1 != 0.0 || m2 != 0.0;
    std::vector<double> lf, lg;
    if (diffusive) {
        lf = discrete_laplacian(field.f, field.dims, epsilon, boundary);
        lg = discrete_laplacian(field.g, field.dims, epsilon, boundary);
    }
    for (int c = 0; c < n; ++c) {
        const auto [df, dg] = rhs_homogeneous(field.f[c], field.g[c], sp);
        out.f[c] = df;
        out.g[c] = dg;
        if (diffusive) {
            out.f[c] += m1 * (field.f[c] * lg[c] + (1.0 - field.g[c]) * lf[c]);
            out.g[c] += m2 * (field.g[c] * lf[c] + (1.0 - field.f[c]) * lg[c]);
        }
    }
    return out;
}

namespace {

using StateVec = std::vector<double>;

StateVec pack(const Field& f) {
    StateVec y(f.f.size() * 2);
    std::copy(f.f.begin(), f.f.end(), y.begin());
    std::copy(f.g.begin(), f.g.end(), y.begin() + f.f.size());
    return y;
}

Field unpack(const StateVec& y, GridDims dims, double t) {
    Field f;
    f.dims = dims;
    f.time = t;
    const std::size_t n = y.size() / 2;
    f.f.assign(y.begin(), y.begin() + n);
    f.g.assign(y.begin() + n, y.end());
    return f;
}

void check_field(const Field& f) {
    constexpr double tol = 1e-9;
    for (int c = 0; c < f.cells(); ++c) {
        const double fv = f.f[c], gv = f.g[c];
        if (!std::isfinite(fv) || !std::isfinite(gv) || fv < -tol || gv < -tol ||
            fv + gv > 1.0 + tol) {
            throw SolverInstabilityError("field invariant violated at t = " +
                                         std::to_string(f.time));
        }
    }
}

class MeanfieldOde {
public:
    MeanfieldOde(GridDims dims, const ScaledParams& sp, const SolverConfig& cfg)
        : dims_(dims), sp_(sp), eps_(cfg.epsilon), boundary_(cfg.boundary) {}

    void operator()(const StateVec& y, StateVec& dydt) const {
        const Field f = unpack(y, dims_, 0.0);
        const Field d = rhs_heterogeneous(f, sp_, eps_, boundary_);
        dydt.resize(y.size());
        std::copy(d.f.begin(), d.f.end(), dydt.begin());
        std::copy(d.g.begin(), d.g.end(), dydt.begin() + d.f.size());
    }

private:
    GridDims dims_;
    ScaledParams sp_;
    double eps_;
    Boundary boundary_;
};

void axpy(StateVec& y, double a, const StateVec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

std::vector<Field> integrate_rk4(const Field& f0, const ScaledParams& sp,
                                 const SolverConfig& cfg) {
    const MeanfieldOde ode(f0.dims, sp, cfg);
    const auto n_out = static_cast<std::size_t>(
        std::floor(cfg.t_final / cfg.record_stride + 1e-9));
    std::vector<Field> out;
    out.reserve(n_out + 1);

    StateVec y = pack(f0);
    StateVec k1, k2, k3, k4, tmp;
    out.push_back(unpack(y, f0.dims, 0.0));
    check_field(out.back());

    const int n_sub = std::max(1, static_cast<int>(std::ceil(cfg.record_stride / cfg.dt - 1e-9)));
    const double h = cfg.record_stride / n_sub;
    for (std::size_t k = 1; k <= n_out; ++k) {
        for (int s = 0; s < n_sub; ++s) {
            ode(y, k1);
            tmp = y;
            axpy(tmp, 0.5 * h, k1);
            ode(tmp, k2);
            tmp = y;
            axpy(tmp, 0.5 * h, k2);
            ode(tmp, k3);
            tmp = y;
            axpy(tmp, h, k3);
            ode(tmp, k4);
            for (std::size_t i = 0; i < y.size(); ++i) {
                y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            }
        }
        out.push_back(unpack(y, f0.dims, static_cast<double>(k) * cfg.record_stride));
        check_field(out.back());
    }
    return out;
}

// Dormand-Prince 5(4) embedded pair with linear interpolation onto the
// output grid.
std::vector<Field> integrate_rk45(const Field& f0, const ScaledParams& sp,
                                  const SolverConfig& cfg) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                            e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640,
                            e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const MeanfieldOde ode(f0.dims, sp, cfg);
    const auto n_out = static_cast<std::size_t>(
        std::floor(cfg.t_final / cfg.record_stride + 1e-9));
    std::vector<Field> out;
    out.reserve(n_out + 1);
    out.push_back(unpack(pack(f0), f0.dims, 0.0));
    check_field(out.back());

    StateVec y = pack(f0);
    StateVec k1, k2, k3, k4, k5, k6, k7, tmp, y_new;
    double t = 0.0;
    double h = cfg.dt;
    const double t_end = static_cast<double>(n_out) * cfg.record_stride;
    std::size_t next_out = 1;

    ode(y, k1);
    while (next_out <= n_out) {
        h = std::min(h, t_end - t);
        tmp = y;
        axpy(tmp, h * a21, k1);
        ode(tmp, k2);
        tmp = y;
        axpy(tmp, h * a31, k1);
        axpy(tmp, h * a32, k2);
        ode(tmp, k3);
        tmp = y;
        axpy(tmp, h * a41, k1);
        axpy(tmp, h * a42, k2);
        axpy(tmp, h * a43, k3);
        ode(tmp, k4);
        tmp = y;
        axpy(tmp, h * a51, k1);
        axpy(tmp, h * a52, k2);
        axpy(tmp, h * a53, k3);
        axpy(tmp, h * a54, k4);
        ode(tmp, k5);
        tmp = y;
        axpy(tmp, h * a61, k1);
        axpy(tmp, h * a62, k2);
        axpy(tmp, h * a63, k3);
        axpy(tmp, h * a64, k4);
        axpy(tmp, h * a65, k5);
        ode(tmp, k6);
        y_new = y;
        axpy(y_new, h * b1, k1);
        axpy(y_new, h * b3, k3);
        axpy(y_new, h * b4, k4);
        axpy(y_new, h * b5, k5);
        axpy(y_new, h * b6, k6);
        ode(y_new, k7);

        double err = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double scale = cfg.atol + cfg.rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            err += (e / scale) * (e / scale);
        }
        err = std::sqrt(err / static_cast<double>(y.size()));

        if (err <= 1.0) {
            const double t_new = t + h;
            while (next_out <= n_out) {
                const double t_out = static_cast<double>(next_out) * cfg.record_stride;
                if (t_out > t_new + 1e-9 * std::max(1.0, t_end)) break;
                const double w = (t_out - t) / h;
                tmp.resize(y.size());
                for (std::size_t i = 0; i < y.size(); ++i) {
                    tmp[i] = (1.0 - w) * y[i] + w * y_new[i];
                }
                out.push_back(unpack(tmp, f0.dims, t_out));
                check_field(out.back());
                ++next_out;
            }
            t = t_new;
            y = y_new;
            k1 = k7;  // FSAL
        }
        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        if (err > 1.0 && h < 1e-13 * std::max(1.0, std::abs(t))) {
            throw SolverInstabilityError("adaptive step size underflow");
        }
    }
    return out;
}

}  // namespace

std::vector<Field> integrate(const Field& f0, const ScaledParams& sp,
                             const SolverConfig& cfg) {
    cfg.validate();
    if (f0.dims.cells() != static_cast<int>(f0.f.size()) ||
        f0.f.size() != f0.g.size()) {
        throw InvalidDimensionError("field arrays do not match grid");
    }
    if (cfg.method == MfMethod::rk4) {
        const double m_max = std::max(sp.m1_t, sp.m2_t);
        if (m_max > 0.0) {
            const double bound = cfg.epsilon * cfg.epsilon / (4.0 * m_max);
            if (cfg.dt > bound + 1e-15) {
                throw InvalidConfigError("dt violates the diffusion stability bound " +
                                         std::to_string(bound));
            }
        }
        return integrate_rk4(f0, sp, cfg);
    }
    return integrate_rk45(f0, sp, cfg);
}

}  // namespace predprey
