#pragma once

#include <cstdint>
#include <vector>

namespace eqcheck {

/// Closed segment [a, b], a < b, both finite.
struct Segment {
    double a = 0.0;
    double b = 1.0;
};

/// Spacing model for the floating-point grid inside a segment.
///
/// RelativeEps treats the spacing at x as |x| * 2^-53 (the relative rounding
/// error bound); TrueUlp uses the actual distance to the next representable
/// binary64. RelativeEps is the default: it is the model whose point-count
/// estimates the rest of the pipeline is calibrated against. TrueUlp reports
/// the honest grid and is always the larger spacing, so its counts are a
/// strict lower bound on the real point count.
enum class GridMode { RelativeEps, TrueUlp };

/// Largest increment absorbed by rounding at |x| under the chosen model.
double epsilon_for(double x, GridMode mode);

/// Lower-bound estimate M = floor((b-a)/eps_b) for the number of grid points
/// inside the segment, computed in exact rational arithmetic so the result
/// is bit-exact. Expects a segment already run through normalize_segment.
std::uint64_t estimate_grid_points(const Segment& s, GridMode mode);

/// Maps a segment onto the positive axis: [a,b] with b <= 0 becomes [-b,-a]
/// (the grid is symmetric in sign), and a == 0 is replaced by the smallest
/// positive normal binary64. Throws std::invalid_argument for a segment
/// straddling zero; split_segment handles those.
Segment normalize_segment(const Segment& s);

/// normalize_segment extended to segments straddling zero, which split into
/// two positive-axis halves.
std::vector<Segment> split_segment(const Segment& s);

/// index-th grid node: a + index * eps_b rounded to binary64, clamped into
/// [a, b]. index must lie in [0, M).
double grid_point(const Segment& s, std::uint64_t index, GridMode mode);

}  // namespace eqcheck
