#include "predprey/spectrum.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstddef>
#include <mutex>
#include <numbers>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

std::mutex fftw_plan_mutex;  // FFTW plan creation is not thread-safe

double interp(const std::vector<double>& x, const std::vector<double>& y, double xi) {
    if (xi <= x.front()) return y.front();
    if (xi >= x.back()) return y.back();
    std::size_t hi = 1;
    while (x[hi] < xi) ++hi;
    const double w = (xi - x[hi - 1]) / (x[hi] - x[hi - 1]);
    return (1.0 - w) * y[hi - 1] + w * y[hi];
}

}  // namespace

SpectrumConstants spectrum_constants(const LinearNoiseModel& m) {
    const double s2 = m.sigma * m.sigma;
    const double p12 = m.psi[0][1];
    const double p21 = m.psi[1][0];
    const double p22 = m.psi[1][1];
    if (p12 * std::abs(p21) < 0.0) {
        throw InvalidConfigError("Psi12 * |Psi21| must be nonnegative");
    }
    SpectrumConstants c;
    const double c1 = p12 * m.phi[1][0];
    const double c2 = p12 * m.phi[1][1] - p22 * m.phi[0][1];  // shared xi_2 term
    const double c3 = p12 * m.phi[1][2];
    const double c4 = p22 * m.phi[0][3];
    c.theta = s2 * (c1 * c1 + c2 * c2 + c3 * c3 + c4 * c4);
    c.lambda = s2 * (m.phi[0][1] * m.phi[0][1] + m.phi[0][3] * m.phi[0][3]);
    c.omega0_sq = p12 * std::abs(p21);
    c.gamma = std::abs(p22);
    return c;
}

SpectrumResult analytical_spectrum(const LinearNoiseModel& model,
                                   std::vector<double> omega_grid) {
    const SpectrumConstants c = spectrum_constants(model);
    SpectrumResult out;
    out.analytical = true;
    out.omega = std::move(omega_grid);
    out.power.resize(out.omega.size());
    for (std::size_t i = 0; i < out.omega.size(); ++i) {
        const double w2 = out.omega[i] * out.omega[i];
        const double denom = (w2 - c.omega0_sq) * (w2 - c.omega0_sq) + c.gamma * c.gamma * w2;
        out.power[i] = (c.theta + c.lambda * w2) / denom;
    }
    return out;
}

SpectrumResult empirical_spectrum(const std::vector<Trajectory>& trajectories, int cell) {
    if (trajectories.empty()) {
        throw InvalidConfigError("empirical spectrum needs at least one trajectory");
    }
    const Trajectory& first = trajectories.front();
    const std::size_t n = first.times.size();
    if (n < 4) throw ResamplingError("time series too short");
    const double dt = first.times[1] - first.times[0];
    for (const Trajectory& t : trajectories) {
        if (t.times.size() != n) throw ResamplingError("trajectories differ in length");
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(t.times[i] - first.times[i]) > 1e-9) {
                throw ResamplingError("trajectories do not share one time grid");
            }
        }
    }
    for (std::size_t i = 2; i < n; ++i) {
        if (std::abs(first.times[i] - first.times[i - 1] - dt) > 1e-9) {
            throw ResamplingError("time grid is not uniform");
        }
    }

    const std::size_t n_bins = n / 2 + 1;
    SpectrumResult out;
    out.analytical = false;
    out.realizations = static_cast<int>(trajectories.size());
    out.omega.resize(n_bins);
    out.power.assign(n_bins, 0.0);
    const double w0 = 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
    for (std::size_t k = 0; k < n_bins; ++k) out.omega[k] = w0 * static_cast<double>(k);

    double* in = fftw_alloc_real(n);
    fftw_complex* spec = fftw_alloc_complex(n_bins);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, spec, FFTW_ESTIMATE);
    }

    const double norm = dt / static_cast<double>(n);
    for (const Trajectory& t : trajectories) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += t.f_at(i, cell);
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) in[i] = t.f_at(i, cell) - mean;
        fftw_execute(plan);
        for (std::size_t k = 0; k < n_bins; ++k) {
            out.power[k] += norm * (spec[k][0] * spec[k][0] + spec[k][1] * spec[k][1]);
        }
    }
    for (double& p : out.power) p /= static_cast<double>(trajectories.size());

    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex);
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(spec);
    return out;
}

double spectrum_peak(const SpectrumResult& spectrum, double lo, double hi) {
    double best_w = -1.0, best_p = -1.0;
    for (std::size_t i = 0; i < spectrum.omega.size(); ++i) {
        const double w = spectrum.omega[i];
        if (w < lo || w > hi) continue;
        if (spectrum.power[i] > best_p) {
            best_p = spectrum.power[i];
            best_w = w;
        }
    }
    if (best_w < 0.0) throw InvalidConfigError("no spectrum bins in [lo, hi]");
    return best_w;
}

double spectrum_relative_l2(const SpectrumResult& a, const SpectrumResult& b, double lo,
                            double hi) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.omega.size(); ++i) {
        const double w = a.omega[i];
        if (w < lo || w > hi) continue;
        const double ref = interp(b.omega, b.power, w);
        num += (a.power[i] - ref) * (a.power[i] - ref);
        den += ref * ref;
    }
    if (den == 0.0) throw InvalidConfigError("reference spectrum is zero on [lo, hi]");
    return std::sqrt(num / den);
}

}  // namespace predprey
