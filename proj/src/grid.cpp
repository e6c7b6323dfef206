#include "eqcheck/grid.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eqcheck {

namespace {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

cpp_rational exact(double d) {
    if (d == 0.0) return 0;
    int exp = 0;
    double m = std::frexp(d, &exp);
    cpp_rational r(static_cast<std::int64_t>(std::ldexp(m, 53)));
    int e2 = exp - 53;
    if (e2 >= 0) r *= cpp_int(1) << e2;
    else r /= cpp_int(1) << -e2;
    return r;
}

void check_segment(const Segment& s) {
    if (!std::isfinite(s.a) || !std::isfinite(s.b))
        throw std::invalid_argument("segment bounds must be finite");
    if (!(s.a < s.b)) throw std::invalid_argument("segment requires a < b");
}

}  // namespace

double epsilon_for(double x, GridMode mode) {
    if (!std::isfinite(x)) throw std::invalid_argument("epsilon_for requires a finite x");
    double ax = std::fabs(x);
    if (mode == GridMode::RelativeEps) {
        if (ax == 0.0) throw std::invalid_argument("relative spacing is undefined at zero");
        return ax * 0x1p-53;
    }
    double up = std::nextafter(ax, std::numeric_limits<double>::infinity());
    if (std::isinf(up)) return ax - std::nextafter(ax, 0.0);  // ulp below DBL_MAX
    return up - ax;
}

std::uint64_t estimate_grid_points(const Segment& s, GridMode mode) {
    check_segment(s);
    // floor((b-a)/eps_b), all in exact rationals: binary64 division could
    // round the quotient across an integer boundary and spoil the floor.
    cpp_rational width = exact(s.b) - exact(s.a);
    cpp_rational eps = mode == GridMode::RelativeEps
                           ? exact(std::fabs(s.b)) / (cpp_int(1) << 53)
                           : cpp_rational(exact(epsilon_for(s.b, GridMode::TrueUlp)));
    cpp_rational q = width / eps;
    cpp_int m = numerator(q) / denominator(q);  // exact floor, q > 0
    return m.convert_to<std::uint64_t>();
}

Segment normalize_segment(const Segment& s) {
    check_segment(s);
    Segment r = s;
    if (r.b <= 0.0) r = {-r.b, -r.a};
    if (r.a < 0.0)
        throw std::invalid_argument("segment straddles zero; use split_segment");
    if (r.a == 0.0) r.a = std::numeric_limits<double>::min();
    return r;
}

std::vector<Segment> split_segment(const Segment& s) {
    check_segment(s);
    if (s.a < 0.0 && 0.0 < s.b)
        return {normalize_segment({s.a, 0.0}), normalize_segment({0.0, s.b})};
    return {normalize_segment(s)};
}

double grid_point(const Segment& s, std::uint64_t index, GridMode mode) {
    check_segment(s);
    std::uint64_t m = estimate_grid_points(s, mode);
    if (index >= m) throw std::out_of_range("grid index out of range");
    double eps = epsilon_for(s.b, mode);
    double x = std::fma(static_cast<double>(index), eps, s.a);
    if (x > s.b) return s.b;
    if (x < s.a) return s.a;
    return x;
}

}  // namespace eqcheck
