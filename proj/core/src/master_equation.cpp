#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "predprey/analysis.hpp"
#include "predprey/errors.hpp"
#include "predprey/rates.hpp"

namespace predprey {

namespace {

std::uint64_t state_key(const LatticeState& s) {
    const std::uint64_t base = static_cast<std::uint64_t>(s.capacity() + 1);
    std::uint64_t key = 0;
    for (int c = 0; c < s.cells(); ++c) {
        key = key * base * base + static_cast<std::uint64_t>(s.a(c)) * base +
              static_cast<std::uint64_t>(s.b(c));
    }
    return key;
}

void enumerate_cell(GridDims dims, std::int64_t nc, int cell, LatticeState& scratch,
                    std::vector<LatticeState>& out) {
    if (cell == dims.cells()) {
        out.push_back(scratch);
        return;
    }
    for (std::int64_t a = 0; a <= nc; ++a) {
        for (std::int64_t b = 0; b + a <= nc; ++b) {
            scratch.set_cell(cell, a, b, nc - a - b);
            enumerate_cell(dims, nc, cell + 1, scratch, out);
        }
    }
}

}  // namespace

std::vector<LatticeState> enumerate_states(GridDims dims, std::int64_t nc) {
    std::vector<LatticeState> out;
    LatticeState scratch(dims, nc);
    enumerate_cell(dims, nc, 0, scratch, out);
    return out;
}

std::vector<double> master_equation_exact(const LatticeState& state0, const ModelParams& p,
                                          double t_final, int max_hom_n, int max_het_nc) {
    const GridDims dims = state0.dims();
    const std::int64_t nc = state0.capacity();
    if (dims.is_homogeneous()) {
        if (nc > max_hom_n) {
            throw StateSpaceSizeError("homogeneous master equation limited to N <= " +
                                      std::to_string(max_hom_n));
        }
    } else if (dims.cells() == 2) {
        if (nc > max_het_nc) {
            throw StateSpaceSizeError("2-cell master equation limited to Nc <= " +
                                      std::to_string(max_het_nc));
        }
    } else {
        throw StateSpaceSizeError("master equation supports 1 or 2 cells");
    }

    const std::vector<LatticeState> states = enumerate_states(dims, nc);
    std::unordered_map<std::uint64_t, int> index;
    index.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) {
        index.emplace(state_key(states[i]), static_cast<int>(i));
    }

    // Sparse generator from the same propensities the samplers use, so the
    // probability flow lives on the mean-field time scale.
    struct Transition {
        int from;
        int to;
        double rate;
    };
    const EventSystem es(dims, p);
    std::vector<Transition> transitions;
    std::vector<double> a;
    double max_outflow = 0.0;
    for (std::size_t s = 0; s < states.size(); ++s) {
        es.propensities(states[s], a);
        double outflow = 0.0;
        for (int j = 0; j < es.n_events(); ++j) {
            if (a[j] <= 0.0) continue;
            LatticeState target = states[s];
            if (!es.try_apply(target, j)) continue;
            const auto it = index.find(state_key(target));
            if (it == index.end()) {
                throw StateSpaceSizeError("event left the enumerated state space");
            }
            transitions.push_back({static_cast<int>(s), it->second, a[j]});
            outflow += a[j];
        }
        max_outflow = std::max(max_outflow, outflow);
    }

    std::vector<double> prob(states.size(), 0.0);
    const auto it0 = index.find(state_key(state0));
    if (it0 == index.end()) throw StateSpaceSizeError("initial state not enumerable");
    prob[it0->second] = 1.0;
    if (t_final <= 0.0) return prob;

    const auto apply_generator = [&](const std::vector<double>& v, std::vector<double>& dv) {
        std::fill(dv.begin(), dv.end(), 0.0);
        for (const Transition& tr : transitions) {
            const double flow = tr.rate * v[tr.from];
            dv[tr.to] += flow;
            dv[tr.from] -= flow;
        }
    };

    const int steps = std::max(200, static_cast<int>(std::ceil(t_final * max_outflow * 20.0)));
    const double h = t_final / steps;
    std::vector<double> k1(prob.size()), k2(prob.size()), k3(prob.size()), k4(prob.size()),
        tmp(prob.size());
    for (int s = 0; s < steps; ++s) {
        apply_generator(prob, k1);
        for (std::size_t i = 0; i < prob.size(); ++i) tmp[i] = prob[i] + 0.5 * h * k1[i];
        apply_generator(tmp, k2);
        for (std::size_t i = 0; i < prob.size(); ++i) tmp[i] = prob[i] + 0.5 * h * k2[i];
        apply_generator(tmp, k3);
        for (std::size_t i = 0; i < prob.size(); ++i) tmp[i] = prob[i] + h * k3[i];
        apply_generator(tmp, k4);
        for (std::size_t i = 0; i < prob.size(); ++i) {
            prob[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }

    double total = 0.0;
    for (double v : prob) total += v;
    if (std::abs(total - 1.0) > 1e-8) {
        throw SolverInstabilityError("master-equation probabilities drifted from 1");
    }
    return prob;
}

std::vector<double> empirical_state_distribution(const RealizationSpec& spec, int runs,
                                                 std::uint64_t seed0, int threads) {
    if (runs < 1) throw InvalidConfigError("runs must be >= 1");
    const GridDims dims = spec.state0.dims();
    const std::int64_t nc = spec.state0.capacity();
    const std::vector<LatticeState> states = enumerate_states(dims, nc);
    std::unordered_map<std::uint64_t, int> index;
    for (std::size_t i = 0; i < states.size(); ++i) {
        index.emplace(state_key(states[i]), static_cast<int>(i));
    }

    int n_threads = threads;
    if (n_threads <= 0) {
        n_threads = static_cast<int>(std::thread::hardware_concurrency());
        if (n_threads <= 0) n_threads = 1;
    }
    n_threads = std::min(n_threads, runs);

    std::vector<std::vector<std::int64_t>> counts(
        n_threads, std::vector<std::int64_t>(states.size(), 0));
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto worker = [&](int tid) {
        std::vector<std::int64_t>& local = counts[tid];
        try {
            for (int i = next.fetch_add(1); i < runs; i = next.fetch_add(1)) {
                EngineConfig cfg = spec.cfg;
                cfg.seed = seed0 ^ static_cast<std::uint64_t>(i);
                cfg.record_stride = cfg.t_final;  // only the final state is needed
                const Trajectory traj = run_engine(spec.kind, spec.state0, spec.params, cfg);
                LatticeState final_state(dims, nc);
                const std::size_t last = traj.times.size() - 1;
                for (int c = 0; c < dims.cells(); ++c) {
                    const auto av = static_cast<std::int64_t>(
                        std::llround(traj.f_at(last, c) * static_cast<double>(nc)));
                    const auto bv = static_cast<std::int64_t>(
                        std::llround(traj.g_at(last, c) * static_cast<double>(nc)));
                    final_state.set_cell(c, av, bv, nc - av - bv);
                }
                ++local[index.at(state_key(final_state))];
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
        }
    };

    if (n_threads == 1) {
        worker(0);
    } else {
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    std::vector<double> hist(states.size(), 0.0);
    for (const auto& local : counts) {
        for (std::size_t i = 0; i < hist.size(); ++i) {
            hist[i] += static_cast<double>(local[i]);
        }
    }
    for (double& v : hist) v /= static_cast<double>(runs);
    return hist;
}

}  // namespace predprey
