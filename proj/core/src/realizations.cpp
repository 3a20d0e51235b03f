#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "predprey/engines.hpp"
#include "predprey/errors.hpp"

namespace predprey {

std::vector<Trajectory> run_realizations(const RealizationSpec& spec, int count,
                                         std::uint64_t seed0, int threads) {
    if (count < 1) throw InvalidConfigError("realization count must be >= 1");

    std::vector<Trajectory> out(static_cast<std::size_t>(count));
    int n_threads = threads;
    if (n_threads <= 0) {
        n_threads = static_cast<int>(std::thread::hardware_concurrency());
        if (n_threads <= 0) n_threads = 1;
    }
    n_threads = std::min(n_threads, count);

    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    const auto worker = [&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
                EngineConfig cfg = spec.cfg;
                cfg.seed = seed0 ^ static_cast<std::uint64_t>(i);
                out[static_cast<std::size_t>(i)] =
                    run_engine(spec.kind, spec.state0, spec.params, cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };

    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);
    return out;
}

}  // namespace predprey
