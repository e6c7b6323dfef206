#include "eqcheck/prob.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

using namespace eqcheck;
using boost::multiprecision::cpp_int;

TEST_CASE("failure_probability small exact cases") {
    ProbResult r = failure_probability({5, 2, 3});
    REQUIRE(r.exact.has_value());
    CHECK(*r.exact == ProbRational(3, 10));
    CHECK(r.value == doctest::Approx(0.3));

    r = failure_probability({4, 1, 2});
    CHECK(*r.exact == ProbRational(1, 2));

    r = failure_probability({10, 3, 10});
    CHECK(*r.exact == 1);
    CHECK(r.value == 1.0);
    CHECK(r.log_value == 0.0);

    r = failure_probability({10, 3, 2});  // k < m: a factor is zero
    CHECK(*r.exact == 0);
    CHECK(r.value == 0.0);
    CHECK(std::isinf(r.log_value));
    CHECK(r.log_value < 0);

    CHECK_THROWS_AS(failure_probability({5, 6, 3}), std::invalid_argument);
}

TEST_CASE("log_failure_probability matches the direct product where representable") {
    ProbParams cases[] = {{100, 3, 40}, {1000, 10, 900}, {50, 5, 5}, {12, 12, 12}};
    for (const auto& p : cases) {
        ProbResult direct = failure_probability(p, true);
        double logsum = log_failure_probability(p);
        if (direct.value > 0.0) {
            CHECK(std::fabs(logsum - std::log(direct.value)) <= 1e-10);
        }
    }
    CHECK(log_failure_probability({10, 1, 5}) == doctest::Approx(std::log(0.5)));
    CHECK(log_failure_probability({1000000, 2, 1000000}) == 0.0);
    CHECK(std::isinf(log_failure_probability({10, 5, 3})));
}

TEST_CASE("log path survives astronomically small probabilities") {
    const std::uint64_t big_grid = 1ull << 52;
    double logp = log_failure_probability({big_grid, 10, 1000000});
    CHECK(logp < -200.0);
    // frozen from a 50-digit termwise evaluation
    CHECK(logp == doctest::Approx(-222.28147331167128).epsilon(1e-12));

    ProbResult r = failure_probability({big_grid, 10, 1000000});
    CHECK_FALSE(r.exact.has_value());  // default path skips exact for huge grids
    CHECK(r.value == doctest::Approx(std::exp(logp)));
    CHECK(r.log_value == logp);

    // deeper regimes do underflow; the log still carries the signal
    ProbResult tiny = failure_probability({big_grid, 100, 1000000});
    CHECK(tiny.value == 0.0);
    CHECK(tiny.log_value < -2000.0);
}

TEST_CASE("error_probability piecewise branches") {
    ProbResult r = error_probability({100, 10, 5});
    CHECK(r.value == 0.0);
    CHECK(*r.exact == 0);

    r = error_probability({100, 10, 200});
    CHECK(r.value == 1.0);
    CHECK(*r.exact == 1);
    CHECK(r.log_value == 0.0);

    r = error_probability({5, 2, 3});
    CHECK(r.value == doctest::Approx(0.3));
}

TEST_CASE("min_points_for_target") {
    // k = 0: one point suffices for any target
    CHECK(min_points_for_target(1000, 0, 1e-12) == 1);

    // direct evaluation of the product for M=100, k=5:
    //   p(1)=0.05  p(4)~1.275e-6  p(5)~1.328e-8  p(6)=0
    CHECK(min_points_for_target(100, 5, 0.5) == 1);
    CHECK(min_points_for_target(100, 5, 1e-6) == 5);
    CHECK(min_points_for_target(100, 5, 1e-9) == 6);  // only the k<m branch reaches 1e-9

    // the worked large case: 9 points already push below e^-200
    CHECK(min_points_for_target(1ull << 52, 1000000, std::exp(-200.0)) == 9);
    CHECK(min_points_for_target(1ull << 52, 1000000, std::exp(-200.0)) <= 10);

    CHECK_THROWS_AS(min_points_for_target(100, 100, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(min_points_for_target(100, 5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(min_points_for_target(100, 5, 1.0), std::invalid_argument);
}

TEST_CASE("monotone in the grid size") {
    double prev = 1.0;
    for (std::uint64_t grid = 100; grid <= 100000000; grid *= 10) {
        ProbResult r = error_probability({grid, 5, 50});
        CHECK(r.value < prev);
        prev = r.value;
    }
}

TEST_CASE("non-increasing and log-concave in the number of points") {
    const std::uint64_t grid = 9007199, zeros = 100000;
    double prev_log = log_failure_probability({grid, 1, zeros});
    double prev_delta = 0.0;
    for (std::uint64_t m = 2; m <= 60; ++m) {
        double cur = log_failure_probability({grid, m, zeros});
        double delta = cur - prev_log;
        CHECK(delta < 0.0);                          // decreasing
        if (m > 2) CHECK(delta <= prev_delta + 1e-12);  // drops ever faster
        prev_delta = delta;
        prev_log = cur;
    }
}

TEST_CASE("product form equals the hypergeometric closed form") {
    auto binomial = [](std::uint64_t n, std::uint64_t r) {
        cpp_int num = 1, den = 1;
        for (std::uint64_t i = 0; i < r; ++i) {
            num *= n - i;
            den *= i + 1;
        }
        return ProbRational(num, den);
    };
    std::mt19937_64 rng(404);
    for (int i = 0; i < 10000; ++i) {
        std::uint64_t grid = 1 + rng() % 40;
        std::uint64_t m = 1 + rng() % grid;
        std::uint64_t k = m + rng() % (grid - m + 1);  // m <= k <= grid
        ProbResult r = failure_probability({grid, m, k}, true);
        REQUIRE(r.exact.has_value());
        CHECK(*r.exact == binomial(k, m) / binomial(grid, m));
    }
}

TEST_CASE("exact rational path reproduces the card-deck constant") {
    cpp_int f = 1;
    for (int i = 2; i <= 36; ++i) f *= i;
    ProbRational inverse = ProbRational(1) / ProbRational(f);
    double v = inverse.convert_to<double>();
    CHECK(std::fabs(v - 0.27e-41) / 0.27e-41 < 0.01);
}

TEST_CASE("result invariants") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        std::uint64_t grid = 2 + rng() % 1000;
        std::uint64_t m = 1 + rng() % grid;
        std::uint64_t k = rng() % (grid + 10);
        ProbResult r = error_probability({grid, m, k});
        CHECK(r.value >= 0.0);
        CHECK(r.value <= 1.0);
        if (r.exact) CHECK(r.value == doctest::Approx(r.exact->convert_to<double>()));
        if (r.value > 0.0)
            CHECK(std::fabs(r.log_value - std::log(r.value)) <=
                  1e-12 * std::max(1.0, std::fabs(std::log(r.value))));
    }
}
