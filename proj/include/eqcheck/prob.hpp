#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>

namespace eqcheck {

using ProbRational = boost::multiprecision::cpp_rational;

/// Inputs of the failure-probability model: grid_size is the number of grid
/// points in the segment (M), check_points the number of distinct points the
/// checker draws (m), zero_bound an assumed upper bound on the size of the
/// zero locus (k).
struct ProbParams {
    std::uint64_t grid_size = 1;
    std::uint64_t check_points = 1;
    std::uint64_t zero_bound = 0;
};

struct ProbResult {
    std::optional<ProbRational> exact;  // present on the exact path
    double value = 0.0;                 // in [0, 1]
    double log_value = 0.0;             // natural log; -inf for value 0
};

/// Probability that check_points distinct uniform draws from a grid of
/// grid_size points all land inside a fixed zero_bound-element subset:
/// prod_{i=0}^{m-1} (k-i)/(M-i). Exact rational arithmetic when
/// grid_size <= 10^6 or force_exact is set; the log-sum path otherwise
/// (direct products underflow long before M reaches 2^53). Requires
/// check_points >= 1 and check_points <= zero_bound's universe, i.e.
/// m <= M and k <= M.
ProbResult failure_probability(const ProbParams& p, bool force_exact = false);

/// Termwise sum of log((k-i)/(M-i)), immune to underflow. Returns -infinity
/// when zero_bound < check_points (the probability is exactly zero).
double log_failure_probability(const ProbParams& p);

/// Piecewise total error probability: 0 when k < m, p_{M,m,k} when
/// m <= k <= M, and 1 when k > M.
ProbResult error_probability(const ProbParams& p);

/// Smallest m with error_probability(M, m, k) <= target, by monotone search;
/// k < m forces an exact zero, so the result never exceeds k+1. Requires
/// 0 < target < 1 and zero_bound < grid_size.
std::uint64_t min_points_for_target(std::uint64_t grid_size, std::uint64_t zero_bound,
                                    double target);

}  // namespace eqcheck
