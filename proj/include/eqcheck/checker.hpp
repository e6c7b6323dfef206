#pragma once

#include "eqcheck/eval.hpp"
#include "eqcheck/expr.hpp"
#include "eqcheck/grid.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <unordered_set>
#include <vector>

namespace eqcheck {

/// How segments are generated when none are given explicitly.
struct AutoSegmentSpec {
    std::uint32_t count = 3;
    double length = 10.0;
    Segment placement{1.0, 100.0};
};

struct CheckConfig {
    std::vector<Segment> segments;     // explicit; empty -> auto-generated
    AutoSegmentSpec auto_spec;
    std::uint32_t points_per_segment = 100;
    ToleranceSpec tolerance;
    EvalBudget budget;
    std::uint64_t seed = 42;
    std::uint64_t assumed_zero_bound = 1'000'000;  // k used for the reported bound
    GridMode grid_mode = GridMode::RelativeEps;
};

enum class SegmentOutcome { AllZero, NonzeroFound, Inconclusive };

struct SegmentStats {
    Segment segment;
    std::uint64_t grid_size = 0;
    std::uint32_t points_tested = 0;   // defined evaluations, including a witness
    std::uint32_t resampled = 0;       // draws discarded as Undefined
    SegmentOutcome outcome = SegmentOutcome::Inconclusive;
    double log_error_probability = 0.0;  // only meaningful for AllZero
};

struct Witness {
    double x = 0.0;
    double fx = 0.0;
};

enum class FinalVerdict { Correct, Incorrect, CorrectWithBound, Inconclusive };
enum class DecidingStage { Symbolic, Pointwise };

struct CheckReport {
    FinalVerdict verdict = FinalVerdict::Inconclusive;
    DecidingStage stage = DecidingStage::Symbolic;
    std::vector<SegmentStats> segments;
    std::optional<Witness> witness;
    double error_bound = 1.0;
    std::uint64_t seed = 0;
};

/// Draw-without-repetition state: a seeded generator plus the set of grid
/// indices already used. An index handed out once is never handed out again,
/// whether or not the evaluation at it succeeded.
class SampleState {
  public:
    explicit SampleState(std::uint64_t seed) : rng_(seed) {}

    std::mt19937_64& rng() { return rng_; }
    std::unordered_set<std::uint64_t>& used() { return used_; }

  private:
    std::mt19937_64 rng_;
    std::unordered_set<std::uint64_t> used_;
};

/// Uniform draw over the not-yet-used grid indices. Throws when the grid is
/// exhausted.
std::uint64_t sample_next(SampleState& state, std::uint64_t grid_size);

struct PointwiseResult {
    SegmentOutcome outcome = SegmentOutcome::Inconclusive;
    SegmentStats stats;
    std::optional<Witness> witness;
};

/// Randomized pointwise zero test of f on a normalized segment: up to m
/// distinct grid points; a draw whose evaluation is Undefined is resampled
/// without consuming an iteration. Resampling is capped at 10*m draws in
/// total, after which the segment is Inconclusive (f is undefined nearly
/// everywhere there). Returns NonzeroFound with a witness at the first point
/// that fails the zero test.
PointwiseResult pointwise_check(const Expr& f, const Segment& s, const CheckConfig& cfg,
                                std::optional<std::uint64_t> seed_override = std::nullopt);

/// count pairwise-disjoint segments of the given length placed uniformly
/// inside range. Deterministic under seed. Throws when they cannot fit.
std::vector<Segment> auto_segments(std::uint32_t count, double length, const Segment& range,
                                   std::uint64_t seed);

/// Full two-stage comparison: symbolic stage first; when it is inconclusive,
/// the pointwise stage runs on every configured segment and the report
/// carries the combined error bound 1 - prod(1 - P_err_i) computed from the
/// assumed zero bound.
CheckReport compare_answers(const ExprPtr& real_answer, const ExprPtr& user_answer,
                            const CheckConfig& cfg);

std::string verdict_name(FinalVerdict v);
std::string stage_name(DecidingStage s);

/// Stable JSON document, schema version 1:
/// {schema_version, verdict, stage, segments:[{a,b,M,points_tested,resampled}],
///  witness:{x,fx}|null, error_bound, seed}
std::string report_to_json(const CheckReport& report);

}  // namespace eqcheck
