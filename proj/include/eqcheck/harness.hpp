#pragma once

#include "eqcheck/prob.hpp"

#include <cstdint>
#include <unordered_set>

namespace eqcheck {

/// Abstract universe for validating the combinatorics in isolation: a grid
/// of grid_size indices of which zero_indices play the role of the zero
/// locus. No expressions are evaluated here.
struct ZeroUniverse {
    std::uint64_t grid_size = 1;
    std::unordered_set<std::uint64_t> zero_indices;

    /// Universe whose zero locus is {0, .., k-1}.
    static ZeroUniverse prefix(std::uint64_t grid_size, std::uint64_t k);
};

/// Exhaustive-enumeration oracle: walks every ordered sequence of distinct
/// elements of a fixed k-subset and divides the count of length-m sequences
/// by the number of ordered m-arrangements of the full grid. Exact rational;
/// independent of the product formula it is used to check. Limited to
/// grid sizes <= 12.
ProbRational brute_force_probability(unsigned grid_size, unsigned check_points,
                                     unsigned zero_count);

struct SimulationResult {
    double rate = 0.0;
    double standard_error = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
};

/// Monte Carlo estimate of the failure rate: per trial, draw check_points
/// distinct indices and count the trials where all of them land in the zero
/// locus. Trials are partitioned across workers with per-worker generator
/// streams derived from (seed, worker), so results are reproducible at a
/// fixed worker count.
SimulationResult simulate_failure_rate(const ZeroUniverse& universe, std::uint64_t check_points,
                                       std::uint64_t trials, std::uint64_t seed,
                                       unsigned workers = 1);

}  // namespace eqcheck
