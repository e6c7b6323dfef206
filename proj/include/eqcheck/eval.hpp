#pragma once

#include "eqcheck/expr.hpp"

#include <cstdint>
#include <optional>

namespace eqcheck {

struct ToleranceSpec {
    double absolute = 1e-12;
    double relative = 1e-9;
};

/// Cooperative evaluation budget. Node visits make results deterministic;
/// the wall-clock limit is opt-in for service deployments where a hard time
/// cap matters more than reproducibility.
struct EvalBudget {
    std::uint64_t max_node_visits = 10000;
    std::optional<double> wall_clock_ms;
};

enum class UndefinedReason { DomainError, Overflow, BudgetExhausted };

/// Result of evaluating an expression at a point: either a finite binary64
/// value (with the largest subterm magnitude seen on the way, used as the
/// scale for relative zero tests) or an Undefined state. NaN and infinities
/// never escape as values.
class EvalOutcome {
  public:
    static EvalOutcome value(double v, double scale) {
        EvalOutcome o;
        o.has_value_ = true;
        o.value_ = v;
        o.scale_ = scale;
        return o;
    }
    static EvalOutcome undefined(UndefinedReason r) {
        EvalOutcome o;
        o.reason_ = r;
        return o;
    }

    bool is_value() const { return has_value_; }
    double value() const { return value_; }
    double scale() const { return scale_; }
    UndefinedReason reason() const { return reason_; }

  private:
    bool has_value_ = false;
    double value_ = 0.0;
    double scale_ = 0.0;
    UndefinedReason reason_ = UndefinedReason::DomainError;
};

/// Recursive binary64 evaluation at x. Domain violations (log of a
/// non-positive value, sqrt of a negative, division by zero, non-finite tan)
/// yield Undefined(DomainError); any other non-finite intermediate yields
/// Undefined(Overflow); running out of budget yields
/// Undefined(BudgetExhausted). Deterministic for fixed arguments when the
/// wall-clock limit is disabled.
EvalOutcome evaluate_at(const Expr& e, double x, const EvalBudget& budget = {});

/// Tolerance-based zero test: |v| <= absolute or |v| <= relative * f_scale.
/// Requires v.is_value().
bool is_zero(const EvalOutcome& v, double f_scale, const ToleranceSpec& tol = {});

}  // namespace eqcheck
