#include "eqcheck/checker.hpp"

#include "eqcheck/prob.hpp"
#include "eqcheck/sampling.hpp"
#include "eqcheck/symbolic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqcheck {

std::uint64_t sample_next(SampleState& state, std::uint64_t grid_size) {
    if (state.used().size() >= grid_size) throw std::logic_error("grid exhausted");
    std::uint64_t idx;
    do {
        idx = uniform_index(state.rng(), grid_size);
    } while (state.used().contains(idx));
    state.used().insert(idx);
    return idx;
}

PointwiseResult pointwise_check(const Expr& f, const Segment& s, const CheckConfig& cfg,
                                std::optional<std::uint64_t> seed_override) {
    if (cfg.points_per_segment < 1)
        throw std::invalid_argument("need at least one point per segment");
    const Segment seg = normalize_segment(s);
    const std::uint64_t seed = seed_override.value_or(cfg.seed);

    PointwiseResult result;
    result.stats.segment = seg;
    result.stats.grid_size = estimate_grid_points(seg, cfg.grid_mode);
    const std::uint64_t grid_size = result.stats.grid_size;
    if (grid_size == 0) return result;  // no grid points to test

    const std::uint32_t target = static_cast<std::uint32_t>(
        std::min<std::uint64_t>(cfg.points_per_segment, grid_size));
    const std::uint64_t resample_cap = 10ull * cfg.points_per_segment;

    SampleState state(seed);
    std::uint32_t passed = 0;
    while (passed < target) {
        if (state.used().size() >= grid_size) break;  // tested the whole grid
        std::uint64_t idx = sample_next(state, grid_size);
        double x = grid_point(seg, idx, cfg.grid_mode);
        EvalOutcome out = evaluate_at(f, x, cfg.budget);
        if (!out.is_value()) {
            // Alg.-1-style resample: the draw does not consume an iteration,
            // but unbounded retrying would never terminate on a function
            // undefined across the segment.
            ++result.stats.resampled;
            if (result.stats.resampled >= resample_cap) {
                result.outcome = SegmentOutcome::Inconclusive;
                result.stats.outcome = result.outcome;
                return result;
            }
            continue;
        }
        ++result.stats.points_tested;
        if (!is_zero(out, out.scale(), cfg.tolerance)) {
            result.outcome = SegmentOutcome::NonzeroFound;
            result.stats.outcome = result.outcome;
            result.witness = Witness{x, out.value()};
            return result;
        }
        ++passed;
    }
    result.outcome = SegmentOutcome::AllZero;
    result.stats.outcome = result.outcome;
    return result;
}

std::vector<Segment> auto_segments(std::uint32_t count, double length, const Segment& range,
                                   std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("need at least one segment");
    if (!(length > 0.0)) throw std::invalid_argument("segment length must be positive");
    const double width = range.b - range.a;
    const double total = static_cast<double>(count) * length;
    if (!(total <= width))
        throw std::invalid_argument("infeasible packing: segments do not fit into the range");

    const double free_space = width - total;
    std::mt19937_64 rng(seed);
    std::vector<double> offsets(count);
    for (int attempt = 0; attempt < 100; ++attempt) {
        for (auto& u : offsets) u = free_space * std::ldexp(static_cast<double>(rng() >> 11), -53);
        std::sort(offsets.begin(), offsets.end());
        bool distinct = true;
        for (std::size_t i = 1; i < offsets.size(); ++i)
            if (offsets[i] == offsets[i - 1] && free_space > 0.0) distinct = false;
        if (distinct || free_space == 0.0) break;
    }
    std::vector<Segment> segments;
    segments.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) {
        double start = range.a + offsets[i] + static_cast<double>(i) * length;
        segments.push_back({start, start + length});
    }
    return segments;
}

namespace {

// Probe points for extracting a witness after a symbolic NotEqual: segment
// grid points first, then a small fallback set.
std::optional<Witness> probe_witness(const Expr& f, const std::vector<Segment>& segments,
                                     const CheckConfig& cfg) {
    std::vector<double> candidates;
    for (const auto& s : segments) {
        std::uint64_t m = estimate_grid_points(s, cfg.grid_mode);
        if (m == 0) continue;
        candidates.push_back(grid_point(s, 0, cfg.grid_mode));
        candidates.push_back(grid_point(s, m / 2, cfg.grid_mode));
        candidates.push_back(grid_point(s, m - 1, cfg.grid_mode));
    }
    for (double x : {1.0, 2.0, 0.5, 3.0, 10.0, 100.0}) candidates.push_back(x);
    for (double x : candidates) {
        EvalOutcome out = evaluate_at(f, x, cfg.budget);
        if (out.is_value() && !is_zero(out, out.scale(), cfg.tolerance))
            return Witness{x, out.value()};
    }
    return std::nullopt;
}

std::vector<Segment> resolve_segments(const CheckConfig& cfg) {
    std::vector<Segment> raw = cfg.segments;
    if (raw.empty())
        raw = auto_segments(cfg.auto_spec.count, cfg.auto_spec.length, cfg.auto_spec.placement,
                            split_seed(cfg.seed, 0));
    std::vector<Segment> resolved;
    for (const auto& s : raw)
        for (const auto& part : split_segment(s)) resolved.push_back(part);
    return resolved;
}

}  // namespace

CheckReport compare_answers(const ExprPtr& real_answer, const ExprPtr& user_answer,
                            const CheckConfig& cfg) {
    CheckReport report;
    report.seed = cfg.seed;

    const Verdict symbolic = symbolic_compare(real_answer, user_answer);
    const ExprPtr diff = difference(real_answer, user_answer);

    if (symbolic == Verdict::Equal) {
        report.verdict = FinalVerdict::Correct;
        report.stage = DecidingStage::Symbolic;
        report.error_bound = 0.0;
        return report;
    }
    if (symbolic == Verdict::NotEqual) {
        report.verdict = FinalVerdict::Incorrect;
        report.stage = DecidingStage::Symbolic;
        report.error_bound = 0.0;
        report.witness = probe_witness(*diff, resolve_segments(cfg), cfg);
        return report;
    }

    const std::vector<Segment> segments = resolve_segments(cfg);
    bool any_all_zero = false;
    double log1m_sum = 0.0;  // sum of log(1 - P_err_i)
    for (std::size_t i = 0; i < segments.size(); ++i) {
        PointwiseResult r = pointwise_check(*diff, segments[i], cfg, split_seed(cfg.seed, i + 1));
        if (r.outcome == SegmentOutcome::AllZero) {
            any_all_zero = true;
            ProbParams params{r.stats.grid_size,
                              std::max<std::uint64_t>(r.stats.points_tested, 1),
                              cfg.assumed_zero_bound};
            ProbResult p = error_probability(params);
            r.stats.log_error_probability = p.log_value;
            log1m_sum += std::log1p(-p.value);
        }
        report.segments.push_back(r.stats);
        if (r.outcome == SegmentOutcome::NonzeroFound) {
            report.verdict = FinalVerdict::Incorrect;
            report.stage = DecidingStage::Pointwise;
            report.witness = r.witness;
            report.error_bound = 0.0;
            return report;
        }
    }

    report.stage = DecidingStage::Pointwise;
    if (any_all_zero) {
        report.verdict = FinalVerdict::CorrectWithBound;
        double bound = -std::expm1(log1m_sum);
        report.error_bound = bound == 0.0 ? 0.0 : bound;  // avoid -0.0 in reports
    } else {
        report.verdict = FinalVerdict::Inconclusive;
        report.error_bound = 1.0;
    }
    return report;
}

std::string verdict_name(FinalVerdict v) {
    switch (v) {
        case FinalVerdict::Correct: return "correct";
        case FinalVerdict::Incorrect: return "incorrect";
        case FinalVerdict::CorrectWithBound: return "correct_with_bound";
        case FinalVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

std::string stage_name(DecidingStage s) {
    return s == DecidingStage::Symbolic ? "symbolic" : "pointwise";
}

std::string report_to_json(const CheckReport& report) {
    nlohmann::ordered_json doc;  // keep the documented field order
    doc["schema_version"] = 1;
    doc["verdict"] = verdict_name(report.verdict);
    doc["stage"] = stage_name(report.stage);
    auto segments = nlohmann::ordered_json::array();
    for (const auto& s : report.segments) {
        nlohmann::ordered_json seg;
        seg["a"] = s.segment.a;
        seg["b"] = s.segment.b;
        seg["M"] = s.grid_size;
        seg["points_tested"] = s.points_tested;
        seg["resampled"] = s.resampled;
        segments.push_back(std::move(seg));
    }
    doc["segments"] = std::move(segments);
    if (report.witness) {
        nlohmann::ordered_json w;
        w["x"] = report.witness->x;
        w["fx"] = report.witness->fx;
        doc["witness"] = std::move(w);
    } else {
        doc["witness"] = nullptr;
    }
    doc["error_bound"] = report.error_bound;
    doc["seed"] = report.seed;
    return doc.dump(2);
}

}  // namespace eqcheck
