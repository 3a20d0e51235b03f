#include "predprey/rates.hpp"

#include <cstddef>

#include "predprey/errors.hpp"

namespace predprey {

namespace {

constexpr int kLocal[5][3] = {
    {0, 1, -1},
    {1, -1, 0},
    {0, -1, 1},
    {-1, 0, 1},
    {0, -1, 1},
};

void require_pairable(std::int64_t nc) {
    if (nc < 2) throw DegenerateSampleError("cell capacity must be >= 2 for pair events");
}

// Local family rates shared by the homogeneous (q1 = mu, q2 = 0) and lattice
// forms, evaluated on real-valued counts.
inline void local_rates(double a, double b, double e, double nc, double q1, double q2,
                        const ModelParams& p, double* out) {
    const double pair = 1.0 / (nc * (nc - 1.0));
    const double rest = 1.0 - q1 - q2;
    out[0] = 2.0 * p.b_r * q1 * b * e * pair;
    out[1] = 2.0 * p.p1_r * q1 * a * b * pair;
    out[2] = 2.0 * p.p2_r * q1 * a * b * pair;
    out[3] = p.d1_r * rest * a / nc;
    out[4] = p.d2_r * rest * b / nc;
}

inline void local_rates(const LatticeState& s, int cell, double q1, double q2,
                        const ModelParams& p, double* out) {
    local_rates(static_cast<double>(s.a(cell)), static_cast<double>(s.b(cell)),
                static_cast<double>(s.e(cell)), static_cast<double>(s.capacity()), q1, q2,
                p, out);
}

}  // namespace

std::vector<double> transition_rates_homogeneous(const LatticeState& state,
                                                 const ModelParams& p) {
    if (!state.dims().is_homogeneous()) {
        throw InvalidDimensionError("homogeneous rates require a single-cell state");
    }
    require_pairable(state.capacity());
    std::vector<double> rates(5);
    local_rates(state, 0, p.mu, 0.0, p, rates.data());
    return rates;
}

std::vector<double> transition_rates_heterogeneous(const LatticeState& state,
                                                   const ModelParams& p) {
    if (state.dims().is_2d()) {
        throw InvalidDimensionError("1-D rate table requested for a 2-D state");
    }
    require_pairable(state.capacity());
    const int mc = state.cells();
    const double nc = static_cast<double>(state.capacity());
    const double inv_nc2 = 1.0 / (nc * nc);
    std::vector<double> rates(13 * static_cast<std::size_t>(mc), 0.0);

    const auto a_at = [&](int c) { return c >= 0 && c < mc ? static_cast<double>(state.a(c)) : 0.0; };
    const auto b_at = [&](int c) { return c >= 0 && c < mc ? static_cast<double>(state.b(c)) : 0.0; };
    const auto e_at = [&](int c) { return c >= 0 && c < mc ? static_cast<double>(state.e(c)) : 0.0; };

    for (int cell = 0; cell < mc; ++cell) {
        double local[5];
        local_rates(state, cell, p.q1, p.q2, p, local);
        for (int j = 0; j < 5; ++j) rates[j * mc + cell] = local[j];

        const double m1 = p.m1_r * p.q2 * inv_nc2;
        const double m2 = p.m2_r * p.q2 * inv_nc2;
        rates[5 * mc + cell] = m1 * a_at(cell) * e_at(cell - 1);
        rates[6 * mc + cell] = m1 * a_at(cell - 1) * e_at(cell);
        rates[7 * mc + cell] = m2 * b_at(cell) * e_at(cell - 1);
        rates[8 * mc + cell] = m2 * b_at(cell - 1) * e_at(cell);
        rates[9 * mc + cell] = m1 * a_at(cell) * e_at(cell + 1);
        rates[10 * mc + cell] = m1 * a_at(cell + 1) * e_at(cell);
        rates[11 * mc + cell] = m2 * b_at(cell) * e_at(cell + 1);
        rates[12 * mc + cell] = m2 * b_at(cell + 1) * e_at(cell);
    }
    return rates;
}

std::vector<double> transition_rates_heterogeneous_2d(const LatticeState& state,
                                                      const ModelParams& p) {
    require_pairable(state.capacity());
    const GridDims dims = state.dims();
    const int cells = dims.cells();
    const double nc = static_cast<double>(state.capacity());
    const double inv_nc2 = 1.0 / (nc * nc);
    std::vector<double> rates(21 * static_cast<std::size_t>(cells), 0.0);

    for (int cell = 0; cell < cells; ++cell) {
        double local[5];
        local_rates(state, cell, p.q1, p.q2, p, local);
        for (int j = 0; j < 5; ++j) rates[j * cells + cell] = local[j];
    }

    const double m1 = 0.5 * p.m1_r * p.q2 * inv_nc2;
    const double m2 = 0.5 * p.m2_r * p.q2 * inv_nc2;
    const int dir_dx[4] = {-1, 1, 0, 0};
    const int dir_dy[4] = {0, 0, -1, 1};
    for (int d = 0; d < 4; ++d) {
        const int base = (5 + 4 * d) * cells;
        for (int y = 0; y < dims.mcy; ++y) {
            for (int x = 0; x < dims.mcx; ++x) {
                const int cell = dims.index(x, y);
                const int nx = x + dir_dx[d], ny = y + dir_dy[d];
                if (nx < 0 || nx >= dims.mcx || ny < 0 || ny >= dims.mcy) continue;
                const int nb = dims.index(nx, ny);
                const double a_c = static_cast<double>(state.a(cell));
                const double b_c = static_cast<double>(state.b(cell));
                const double e_c = static_cast<double>(state.e(cell));
                const double a_n = static_cast<double>(state.a(nb));
                const double b_n = static_cast<double>(state.b(nb));
                const double e_n = static_cast<double>(state.e(nb));
                rates[base + 0 * cells + cell] = m1 * a_c * e_n;  // A out
                rates[base + 1 * cells + cell] = m1 * a_n * e_c;  // A in
                rates[base + 2 * cells + cell] = m2 * b_c * e_n;  // B out
                rates[base + 3 * cells + cell] = m2 * b_n * e_c;  // B in
            }
        }
    }
    return rates;
}

EventSystem::EventSystem(GridDims dims, const ModelParams& p) : dims_(dims), params_(p) {
    homogeneous_ = dims.is_homogeneous();
    const int cells = dims.cells();
    share_ = dims.is_2d() ? 0.5 : 1.0;

    // Local families for all cells.
    for (int j = 0; j < 5; ++j) {
        for (int cell = 0; cell < cells; ++cell) {
            std::array<EventDelta, 4> d{};
            std::size_t n = 0;
            for (int sp = 0; sp < 3; ++sp) {
                if (kLocal[j][sp] != 0) d[n++] = EventDelta{cell, sp, kLocal[j][sp]};
            }
            deltas_.push_back(d);
            sizes_.push_back(n);
            channels_.push_back({j, cell, -1});
        }
    }
    if (homogeneous_) return;

    const int dir_dx[4] = {-1, 1, 0, 0};
    const int dir_dy[4] = {0, 0, -1, 1};
    const int n_dirs = dims.is_2d() ? 4 : 2;
    for (int d = 0; d < n_dirs; ++d) {
        for (int kind = 5; kind <= 6; ++kind) {  // 5 = A-out, 6 = B-out
            const int sp = kind == 5 ? 0 : 1;
            for (int y = 0; y < dims.mcy; ++y) {
                for (int x = 0; x < dims.mcx; ++x) {
                    const int nx = x + dir_dx[d], ny = y + dir_dy[d];
                    if (nx < 0 || nx >= dims.mcx || ny < 0 || ny >= dims.mcy) continue;
                    const int cell = dims.index(x, y);
                    const int nb = dims.index(nx, ny);
                    std::array<EventDelta, 4> dd{
                        EventDelta{cell, sp, -1},
                        EventDelta{cell, 2, +1},
                        EventDelta{nb, sp, +1},
                        EventDelta{nb, 2, -1},
                    };
                    deltas_.push_back(dd);
                    sizes_.push_back(4);
                    channels_.push_back({kind, cell, nb});
                }
            }
        }
    }
}

void EventSystem::eval_rates(std::span<const double> counts, double nc,
                             std::vector<double>& out) const {
    out.resize(deltas_.size());
    const double inv_nc2 = 1.0 / (nc * nc);
    const double q1 = homogeneous_ ? params_.mu : params_.q1;
    const double q2 = homogeneous_ ? 0.0 : params_.q2;

    const int cells = dims_.cells();
    double local[5];
    for (int cell = 0; cell < cells; ++cell) {
        local_rates(counts[cell], counts[cells + cell], counts[2 * cells + cell], nc, q1,
                    q2, params_, local);
        for (int j = 0; j < 5; ++j) out[j * cells + cell] = local[j];
    }
    for (std::size_t i = 5 * static_cast<std::size_t>(cells); i < channels_.size(); ++i) {
        const Channel& ch = channels_[i];
        const double m = ch.kind == 5 ? params_.m1_r : params_.m2_r;
        const double src = ch.kind == 5 ? counts[ch.cell] : counts[cells + ch.cell];
        out[i] = share_ * m * params_.q2 * src * counts[2 * cells + ch.neighbor] * inv_nc2;
    }
}

void EventSystem::rates(const LatticeState& state, std::vector<double>& out) const {
    require_pairable(state.capacity());
    const int cells = dims_.cells();
    std::vector<double> counts(3 * static_cast<std::size_t>(cells));
    for (int c = 0; c < cells; ++c) {
        counts[c] = static_cast<double>(state.a(c));
        counts[cells + c] = static_cast<double>(state.b(c));
        counts[2 * cells + c] = static_cast<double>(state.e(c));
    }
    eval_rates(counts, static_cast<double>(state.capacity()), out);
}

void EventSystem::propensities(const LatticeState& state, std::vector<double>& out) const {
    rates(state, out);
    const double scale = static_cast<double>(state.capacity());
    for (double& v : out) v *= scale;
}

void EventSystem::propensities_from_counts(std::span<const double> counts,
                                           std::vector<double>& out) const {
    const int cells = dims_.cells();
    const double nc = counts[0] + counts[cells] + counts[2 * cells];
    eval_rates(counts, nc, out);
    for (double& v : out) v *= nc;
}

bool EventSystem::try_apply(LatticeState& state, int event) const {
    const auto ds = deltas(event);
    for (const EventDelta& d : ds) {
        if (d.dv >= 0) continue;
        const std::int64_t cur = d.species == 0   ? state.a(d.cell)
                                 : d.species == 1 ? state.b(d.cell)
                                                  : state.e(d.cell);
        if (cur + d.dv < 0) return false;
    }
    for (const EventDelta& d : ds) {
        state.shift_cell(d.cell, d.species == 0 ? d.dv : 0, d.species == 1 ? d.dv : 0,
                         d.species == 2 ? d.dv : 0);
    }
    return true;
}

}  // namespace predprey
