#include "eqcheck/eval.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eqcheck {

namespace {

using Clock = std::chrono::steady_clock;

struct EvalContext {
    double x;
    std::uint64_t visits_left;
    std::optional<Clock::time_point> deadline;
    std::uint64_t since_clock_check = 0;
    double scale = 0.0;

    bool failed = false;
    UndefinedReason reason = UndefinedReason::DomainError;

    double fail(UndefinedReason r) {
        failed = true;
        reason = r;
        return 0.0;
    }
};

double eval_node(const Expr& e, EvalContext& ctx);

double record(double v, EvalContext& ctx) {
    if (!std::isfinite(v)) return ctx.fail(UndefinedReason::Overflow);
    double mag = std::fabs(v);
    if (mag > ctx.scale) ctx.scale = mag;
    return v;
}

double eval_call(const Expr& e, EvalContext& ctx) {
    double a = eval_node(*e.child(), ctx);
    if (ctx.failed) return 0.0;
    switch (e.function()) {
        case FunctionId::Sin: return record(std::sin(a), ctx);
        case FunctionId::Cos: return record(std::cos(a), ctx);
        case FunctionId::Tan: {
            double v = std::tan(a);
            if (!std::isfinite(v)) return ctx.fail(UndefinedReason::DomainError);
            return record(v, ctx);
        }
        case FunctionId::Exp: return record(std::exp(a), ctx);
        case FunctionId::Log:
            if (a <= 0.0) return ctx.fail(UndefinedReason::DomainError);
            return record(std::log(a), ctx);
        case FunctionId::Sqrt:
            if (a < 0.0) return ctx.fail(UndefinedReason::DomainError);
            return record(std::sqrt(a), ctx);
        case FunctionId::Abs: return record(std::fabs(a), ctx);
    }
    return ctx.fail(UndefinedReason::DomainError);
}

double eval_node(const Expr& e, EvalContext& ctx) {
    if (ctx.visits_left == 0) return ctx.fail(UndefinedReason::BudgetExhausted);
    --ctx.visits_left;
    if (ctx.deadline && ++ctx.since_clock_check >= 64) {
        ctx.since_clock_check = 0;
        if (Clock::now() > *ctx.deadline) return ctx.fail(UndefinedReason::BudgetExhausted);
    }
    switch (e.kind()) {
        case NodeKind::IntLiteral: return record(e.int_value().convert_to<double>(), ctx);
        case NodeKind::DecimalLiteral: return record(e.decimal_value(), ctx);
        case NodeKind::Constant:
            return record(e.constant() == ConstantId::Pi ? std::numbers::pi : std::numbers::e, ctx);
        case NodeKind::Variable: return record(ctx.x, ctx);
        case NodeKind::Negate: {
            double v = eval_node(*e.child(), ctx);
            return ctx.failed ? 0.0 : record(-v, ctx);
        }
        case NodeKind::Call: return eval_call(e, ctx);
        case NodeKind::DomainError: return ctx.fail(UndefinedReason::DomainError);
        default: break;
    }
    double l = eval_node(*e.lhs(), ctx);
    if (ctx.failed) return 0.0;
    double r = eval_node(*e.rhs(), ctx);
    if (ctx.failed) return 0.0;
    switch (e.kind()) {
        case NodeKind::Add: return record(l + r, ctx);
        case NodeKind::Sub: return record(l - r, ctx);
        case NodeKind::Mul: return record(l * r, ctx);
        case NodeKind::Div:
            if (r == 0.0) return ctx.fail(UndefinedReason::DomainError);
            return record(l / r, ctx);
        case NodeKind::Pow: {
            if (l == 0.0 && r < 0.0) return ctx.fail(UndefinedReason::DomainError);
            if (l < 0.0 && r != std::trunc(r)) return ctx.fail(UndefinedReason::DomainError);
            return record(std::pow(l, r), ctx);
        }
        default: return ctx.fail(UndefinedReason::DomainError);
    }
}

}  // namespace

EvalOutcome evaluate_at(const Expr& e, double x, const EvalBudget& budget) {
    if (!std::isfinite(x)) throw std::invalid_argument("evaluation point must be finite");
    if (budget.max_node_visits < 1) throw std::invalid_argument("budget must allow at least one visit");
    EvalContext ctx{x, budget.max_node_visits, std::nullopt};
    if (budget.wall_clock_ms) {
        ctx.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                          std::chrono::duration<double, std::milli>(*budget.wall_clock_ms));
    }
    double v = eval_node(e, ctx);
    if (ctx.failed) return EvalOutcome::undefined(ctx.reason);
    return EvalOutcome::value(v, ctx.scale);
}

bool is_zero(const EvalOutcome& v, double f_scale, const ToleranceSpec& tol) {
    if (!v.is_value()) throw std::logic_error("is_zero requires a defined value");
    double mag = std::fabs(v.value());
    return mag <= tol.absolute || mag <= tol.relative * f_scale;
}

}  // namespace eqcheck
