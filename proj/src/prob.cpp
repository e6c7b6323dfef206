#include "eqcheck/prob.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eqcheck {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::uint64_t kExactPathLimit = 1'000'000;

void check_params(const ProbParams& p) {
    if (p.check_points < 1) throw std::invalid_argument("need at least one check point");
    if (p.check_points > p.grid_size)
        throw std::invalid_argument("cannot draw more distinct points than the grid holds");
}

}  // namespace

double log_failure_probability(const ProbParams& p) {
    check_params(p);
    if (p.zero_bound < p.check_points) return kNegInf;
    if (p.zero_bound > p.grid_size)
        throw std::invalid_argument("zero_bound exceeds the grid size; use error_probability");
    // Neumaier-compensated sum; the terms are all non-positive but may span
    // many magnitudes when m is large.
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t i = 0; i < p.check_points; ++i) {
        double term = std::log(static_cast<double>(p.zero_bound - i) /
                               static_cast<double>(p.grid_size - i));
        double t = sum + term;
        if (std::fabs(sum) >= std::fabs(term)) comp += (sum - t) + term;
        else comp += (term - t) + sum;
        sum = t;
    }
    return sum + comp;
}

ProbResult failure_probability(const ProbParams& p, bool force_exact) {
    check_params(p);
    if (p.zero_bound > p.grid_size)
        throw std::invalid_argument("zero_bound exceeds the grid size; use error_probability");
    if (p.zero_bound < p.check_points) return {ProbRational(0), 0.0, kNegInf};

    if (force_exact || p.grid_size <= kExactPathLimit) {
        // Falling factorials as plain big-integer products; one gcd at the end.
        boost::multiprecision::cpp_int num = 1, den = 1;
        for (std::uint64_t i = 0; i < p.check_points; ++i) {
            num *= p.zero_bound - i;
            den *= p.grid_size - i;
        }
        ProbRational exact(num, den);
        double value = exact.convert_to<double>();
        double log_value = value > 0.0 ? log_failure_probability(p) : kNegInf;
        return {std::move(exact), value, log_value};
    }
    double log_value = log_failure_probability(p);
    return {std::nullopt, std::exp(log_value), log_value};
}

ProbResult error_probability(const ProbParams& p) {
    if (p.check_points < 1) throw std::invalid_argument("need at least one check point");
    if (p.check_points > p.grid_size)
        throw std::invalid_argument("cannot draw more distinct points than the grid holds");
    if (p.zero_bound < p.check_points) return {ProbRational(0), 0.0, kNegInf};
    if (p.zero_bound > p.grid_size) return {ProbRational(1), 1.0, 0.0};
    return failure_probability(p);
}

std::uint64_t min_points_for_target(std::uint64_t grid_size, std::uint64_t zero_bound,
                                    double target) {
    if (!(target > 0.0 && target < 1.0))
        throw std::invalid_argument("target must lie strictly between 0 and 1");
    if (zero_bound >= grid_size)
        throw std::invalid_argument("no finite bound is reachable when the zero set may cover the grid");
    if (zero_bound == 0) return 1;

    double log_target = std::log(target);
    auto good = [&](std::uint64_t m) {
        if (m > zero_bound) return true;  // exact zero
        return log_failure_probability({grid_size, m, zero_bound}) <= log_target;
    };
    std::uint64_t lo = 1, hi = zero_bound + 1;  // good(hi) always holds
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo) / 2;
        if (good(mid)) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

}  // namespace eqcheck
