#include "eqcheck/harness.hpp"

#include "eqcheck/sampling.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace eqcheck {

ZeroUniverse ZeroUniverse::prefix(std::uint64_t grid_size, std::uint64_t k) {
    if (k > grid_size) throw std::invalid_argument("zero locus larger than the grid");
    ZeroUniverse u;
    u.grid_size = grid_size;
    u.zero_indices.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) u.zero_indices.insert(i);
    return u;
}

namespace {

constexpr unsigned kMaxBruteForce = 12;

// counts[j] = number of ordered length-j sequences of distinct elements of
// {0..k-1}, obtained by walking the full choice tree. The walk mirrors the
// checker's draw-distinct-points process restricted to all-zero prefixes.
void count_sequences(unsigned k, unsigned depth, std::uint32_t used, std::vector<std::uint64_t>& counts) {
    ++counts[depth];
    std::uint32_t remaining = ~used & ((1u << k) - 1u);
    while (remaining != 0) {
        unsigned v = static_cast<unsigned>(std::countr_zero(remaining));
        remaining &= remaining - 1;
        count_sequences(k, depth + 1, used | (1u << v), counts);
    }
}

const std::vector<std::uint64_t>& sequence_table(unsigned k) {
    static std::array<std::vector<std::uint64_t>, kMaxBruteForce + 1> tables;
    static std::mutex guard;
    std::lock_guard<std::mutex> lock(guard);
    auto& table = tables[k];
    if (table.empty()) {
        table.assign(k + 1, 0);
        count_sequences(k, 0, 0, table);
    }
    return table;
}

}  // namespace

ProbRational brute_force_probability(unsigned grid_size, unsigned check_points,
                                     unsigned zero_count) {
    if (grid_size > kMaxBruteForce)
        throw std::invalid_argument("brute-force enumeration is limited to grids of 12 points");
    if (check_points < 1 || check_points > grid_size || zero_count > grid_size)
        throw std::invalid_argument("invalid (M, m, k) combination");
    std::uint64_t hits = check_points <= zero_count ? sequence_table(zero_count)[check_points] : 0;
    boost::multiprecision::cpp_int total = 1;
    for (unsigned i = 0; i < check_points; ++i) total *= grid_size - i;
    return ProbRational(hits, total);
}

SimulationResult simulate_failure_rate(const ZeroUniverse& universe, std::uint64_t check_points,
                                       std::uint64_t trials, std::uint64_t seed,
                                       unsigned workers) {
    if (check_points < 1 || check_points > universe.grid_size)
        throw std::invalid_argument("check_points must lie in [1, grid_size]");
    if (trials < 1) throw std::invalid_argument("need at least one trial");
    if (workers < 1) workers = 1;

    auto run_worker = [&](unsigned worker, std::uint64_t worker_trials) -> std::uint64_t {
        std::mt19937_64 rng(split_seed(seed, worker));
        std::uint64_t hits = 0;
        std::vector<std::uint64_t> drawn;
        drawn.reserve(check_points);
        for (std::uint64_t t = 0; t < worker_trials; ++t) {
            drawn.clear();
            bool all_zero = true;
            for (std::uint64_t i = 0; i < check_points; ++i) {
                std::uint64_t idx;
                bool fresh;
                do {
                    idx = uniform_index(rng, universe.grid_size);
                    fresh = std::find(drawn.begin(), drawn.end(), idx) == drawn.end();
                } while (!fresh);
                drawn.push_back(idx);
                if (!universe.zero_indices.contains(idx)) {
                    all_zero = false;
                    break;  // the trial's outcome is already decided
                }
            }
            if (all_zero) ++hits;
        }
        return hits;
    };

    std::uint64_t hits = 0;
    if (workers == 1) {
        hits = run_worker(0, trials);
    } else {
        std::vector<std::uint64_t> partial(workers, 0);
        std::vector<std::thread> pool;
        std::uint64_t base = trials / workers, extra = trials % workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t n = base + (w < extra ? 1 : 0);
            pool.emplace_back([&, w, n] { partial[w] = run_worker(w, n); });
        }
        for (auto& t : pool) t.join();
        for (auto h : partial) hits += h;
    }

    SimulationResult r;
    r.hits = hits;
    r.trials = trials;
    r.rate = static_cast<double>(hits) / static_cast<double>(trials);
    r.standard_error = std::sqrt(r.rate * (1.0 - r.rate) / static_cast<double>(trials));
    return r;
}

}  // namespace eqcheck
