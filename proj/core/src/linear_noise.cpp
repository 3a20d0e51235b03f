#include "predprey/linear_noise.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "predprey/errors.hpp"
#include "predprey/rng.hpp"

namespace predprey {

namespace {

double checked_sqrt(double v, const char* what) {
    if (v < -1e-12) {
        throw InfeasibleEquilibriumError(std::string("negative radicand in ") + what);
    }
    return std::sqrt(std::max(v, 0.0));
}

struct StepGrid {
    double dt;
    int sub;          // EM steps per recorded sample
    std::size_t out;  // recorded samples past t = 0
};

StepGrid step_grid(const EngineConfig& cfg) {
    const double stride = cfg.stride();
    const int sub = std::max(1, static_cast<int>(std::lround(stride / cfg.tau)));
    const auto out = static_cast<std::size_t>(std::floor(cfg.t_final / stride + 1e-9));
    return {stride / sub, sub, out};
}

Trajectory make_series(std::uint64_t seed, double stride, std::size_t n_out) {
    Trajectory traj;
    traj.dims = GridDims{1, 1};
    traj.capacity = 0;
    traj.engine = EngineKind::ensemble;
    traj.seed = seed;
    traj.times.resize(n_out + 1);
    for (std::size_t k = 0; k <= n_out; ++k) traj.times[k] = static_cast<double>(k) * stride;
    traj.f.reserve(n_out + 1);
    traj.g.reserve(n_out + 1);
    return traj;
}

}  // namespace

double LinearNoiseModel::spectral_radius() const {
    const double tr = psi[0][0] + psi[1][1];
    const double det = psi[0][0] * psi[1][1] - psi[0][1] * psi[1][0];
    const double disc = tr * tr - 4.0 * det;
    if (disc < 0.0) return std::sqrt(det);
    const double root = std::sqrt(disc);
    return std::max(std::abs((tr + root) / 2.0), std::abs((tr - root) / 2.0));
}

LinearNoiseModel build_linear_model(const ScaledParams& sp, double n_size) {
    if (!(n_size > 0.0)) throw InvalidConfigError("N must be > 0");
    LinearNoiseModel m;
    m.eq = equilibrium(sp);
    const double fs = m.eq.f_star;
    const double gs = m.eq.g_star;
    const double es = 1.0 - fs - gs;
    if (fs < -1e-12 || gs < -1e-12 || es < -1e-12) {
        throw InfeasibleEquilibriumError("equilibrium outside the density simplex");
    }

    m.psi[0][0] = 2.0 * sp.p1_t * gs - sp.d1_t;
    m.psi[0][1] = 2.0 * sp.p1_t * fs;
    m.psi[1][0] = -sp.alpha * gs;
    m.psi[1][1] = sp.r * (1.0 - 2.0 * gs / sp.q_cap) - sp.alpha * fs;

    const double s_pred = checked_sqrt(2.0 * sp.p1_t * fs * gs, "predation noise");
    m.phi[0][0] = 0.0;
    m.phi[0][1] = s_pred;
    m.phi[0][2] = 0.0;
    m.phi[0][3] = -checked_sqrt(sp.d1_t * fs, "predator death noise");
    m.phi[1][0] = checked_sqrt(2.0 * sp.b_t * gs * es, "birth noise");
    m.phi[1][1] = -s_pred;
    m.phi[1][2] = -checked_sqrt(2.0 * sp.p2_t * fs * gs + sp.d2_t * gs, "prey loss noise");
    m.phi[1][3] = 0.0;

    m.n_size = n_size;
    m.sigma = 1.0 / std::sqrt(n_size);
    return m;
}

Trajectory simulate_langevin_linear(const LinearNoiseModel& model, const EngineConfig& cfg,
                                    bool noise_on, double f0_dev, double g0_dev) {
    cfg.validate();
    const StepGrid grid = step_grid(cfg);
    if (grid.dt * model.spectral_radius() >= 1.0) {
        throw InvalidConfigError("dt too large for the linear system");
    }

    Rng rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Trajectory traj = make_series(cfg.seed, cfg.stride(), grid.out);

    double x = f0_dev, y = g0_dev;
    const double amp_ref = std::max({std::abs(f0_dev), std::abs(g0_dev), model.sigma, 1e-12});
    const double sqrt_dt = std::sqrt(grid.dt);

    traj.f.push_back(x);
    traj.g.push_back(y);
    for (std::size_t k = 1; k <= grid.out; ++k) {
        for (int s = 0; s < grid.sub; ++s) {
            const double dx = model.psi[0][0] * x + model.psi[0][1] * y;
            const double dy = model.psi[1][0] * x + model.psi[1][1] * y;
            double nx = 0.0, ny = 0.0;
            if (noise_on) {
                for (int i = 0; i < 4; ++i) {
                    const double xi = model.sigma * gauss(rng);
                    nx += model.phi[0][i] * xi;
                    ny += model.phi[1][i] * xi;
                }
            }
            x += dx * grid.dt + nx * sqrt_dt;
            y += dy * grid.dt + ny * sqrt_dt;
            ++traj.steps;
        }
        if (std::abs(x) > 1e3 * amp_ref || std::abs(y) > 1e3 * amp_ref) {
            throw SolverInstabilityError("linear Langevin trajectory diverged");
        }
        traj.f.push_back(x);
        traj.g.push_back(y);
    }
    return traj;
}

Trajectory simulate_langevin_full(const ScaledParams& sp, double n_size,
                                  const EngineConfig& cfg, double f0, double g0,
                                  LangevinStats* stats) {
    cfg.validate();
    if (!(n_size > 0.0)) throw InvalidConfigError("N must be > 0");
    if (sp.q_cap == 0.0) throw CarryingCapacityError("carrying capacity is zero");
    const StepGrid grid = step_grid(cfg);
    const double sigma = 1.0 / std::sqrt(n_size);
    const double sqrt_dt = std::sqrt(grid.dt);

    Rng rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Trajectory traj = make_series(cfg.seed, cfg.stride(), grid.out);
    LangevinStats local;
    LangevinStats& st = stats ? *stats : local;

    const auto noise_amp = [&st](double radicand) {
        if (radicand < 0.0) {
            ++st.radicand_clamps;
            return 0.0;
        }
        return std::sqrt(radicand);
    };

    double f = f0, g = g0;
    traj.f.push_back(f);
    traj.g.push_back(g);
    for (std::size_t k = 1; k <= grid.out; ++k) {
        for (int s = 0; s < grid.sub; ++s) {
            const double drift_f = (2.0 * sp.p1_t * g - sp.d1_t) * f;
            const double drift_g = sp.r * g * (1.0 - g / sp.q_cap) - sp.alpha * f * g;

            const double xi1 = sigma * gauss(rng);
            const double xi2 = sigma * gauss(rng);
            const double xi3 = sigma * gauss(rng);
            const double xi4 = sigma * gauss(rng);

            const double s_pred = noise_amp(2.0 * sp.p1_t * f * g);
            const double noise_f = s_pred * xi2 - noise_amp(sp.d1_t * f) * xi4;
            const double noise_g = noise_amp(2.0 * sp.b_t * g * (1.0 - f - g)) * xi1 -
                                   noise_amp(2.0 * sp.p2_t * f * g + sp.d2_t * g) * xi3 -
                                   s_pred * xi2;

            f += drift_f * grid.dt + noise_f * sqrt_dt;
            g += drift_g * grid.dt + noise_g * sqrt_dt;
            if (f < 0.0 || f > 1.0) {
                f = std::clamp(f, 0.0, 1.0);
                ++st.density_clamps;
            }
            if (g < 0.0 || g > 1.0) {
                g = std::clamp(g, 0.0, 1.0);
                ++st.density_clamps;
            }
            ++traj.steps;
        }
        traj.f.push_back(f);
        traj.g.push_back(g);
    }
    return traj;
}

}  // namespace predprey
