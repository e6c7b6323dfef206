#include "eqcheck/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

namespace eqcheck {

namespace {

int kind_rank(NodeKind k) {
    switch (k) {
        case NodeKind::IntLiteral: return 0;
        case NodeKind::DecimalLiteral: return 1;
        case NodeKind::Constant: return 2;
        case NodeKind::Variable: return 3;
        case NodeKind::Call: return 4;
        case NodeKind::Negate: return 5;
        case NodeKind::Pow: return 6;
        case NodeKind::Mul: return 7;
        case NodeKind::Div: return 8;
        case NodeKind::Add: return 9;
        case NodeKind::Sub: return 10;
        case NodeKind::DomainError: return 11;
    }
    return 12;
}

template <typename T>
int cmp3(const T& a, const T& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

}  // namespace

int compare_order(const Expr& a, const Expr& b) {
    if (int c = cmp3(kind_rank(a.kind()), kind_rank(b.kind()))) return c;
    switch (a.kind()) {
        case NodeKind::IntLiteral: return cmp3(a.int_value(), b.int_value());
        case NodeKind::DecimalLiteral: return cmp3(a.decimal_value(), b.decimal_value());
        case NodeKind::Constant: return cmp3(static_cast<int>(a.constant()), static_cast<int>(b.constant()));
        case NodeKind::Variable: return a.variable().compare(b.variable());
        case NodeKind::Negate: return compare_order(*a.child(), *b.child());
        case NodeKind::Call:
            if (int c = cmp3(static_cast<int>(a.function()), static_cast<int>(b.function()))) return c;
            return compare_order(*a.child(), *b.child());
        case NodeKind::DomainError: return 0;
        default:
            if (int c = compare_order(*a.lhs(), *b.lhs())) return c;
            return compare_order(*a.rhs(), *b.rhs());
    }
}

std::optional<BigRational> as_rational(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::IntLiteral: return BigRational(e.int_value());
        case NodeKind::DecimalLiteral: {
            // Every finite binary64 is an exact rational m * 2^(exp-53).
            double d = e.decimal_value();
            if (d == 0.0) return BigRational(0);
            int exp = 0;
            double m = std::frexp(d, &exp);
            auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
            BigRational r(mant);
            int e2 = exp - 53;
            if (e2 >= 0) r *= BigInt(1) << e2;
            else r /= BigInt(1) << -e2;
            return r;
        }
        case NodeKind::Negate: {
            auto c = as_rational(*e.child());
            if (!c) return std::nullopt;
            return -*c;
        }
        case NodeKind::Div: {
            auto n = as_rational(*e.lhs());
            if (!n) return std::nullopt;
            auto d = as_rational(*e.rhs());
            if (!d || *d == 0) return std::nullopt;
            return *n / *d;
        }
        default: return std::nullopt;
    }
}

ExprPtr rational_to_expr(const BigRational& r) {
    if (r < 0) return make_neg(rational_to_expr(-r));
    BigInt num = numerator(r), den = denominator(r);
    if (den == 1) return make_int(std::move(num));
    return make_div(make_int(std::move(num)), make_int(std::move(den)));
}

namespace {

bool is_domain_error(const Expr& e) { return e.kind() == NodeKind::DomainError; }

bool is_literal_zero(const Expr& e) {
    return e.kind() == NodeKind::IntLiteral && e.int_value() == 0;
}

// (core, negated) with the sign stripped from canonical forms.
std::pair<ExprPtr, bool> strip_sign(const ExprPtr& e) {
    if (e->kind() == NodeKind::Negate) return {e->child(), true};
    return {e, false};
}

ExprPtr sum_normal(std::vector<ExprPtr> operands);
ExprPtr product_normal(std::vector<ExprPtr> operands);
void flatten(NodeKind chain, const ExprPtr& e, std::vector<ExprPtr>& out);

// Negation of an already-normal expression, kept normal: fold rationals,
// cancel double negation, distribute over sums.
ExprPtr negate_normal(const ExprPtr& e) {
    if (is_domain_error(*e)) return e;
    if (auto r = as_rational(*e)) return rational_to_expr(-*r);
    if (e->kind() == NodeKind::Negate) return e->child();
    if (e->kind() == NodeKind::Add) {
        std::vector<ExprPtr> flat;
        flatten(NodeKind::Add, e, flat);
        std::vector<ExprPtr> negated;
        negated.reserve(flat.size());
        for (auto& op : flat) negated.push_back(negate_normal(op));
        return sum_normal(std::move(negated));
    }
    return make_neg(e);
}

void flatten(NodeKind chain, const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (e->kind() == chain) {
        flatten(chain, e->lhs(), out);
        flatten(chain, e->rhs(), out);
    } else {
        out.push_back(e);
    }
}

ExprPtr rebuild_chain(NodeKind op, std::vector<ExprPtr>& ops) {
    ExprPtr e = ops.front();
    for (std::size_t i = 1; i < ops.size(); ++i) e = make_binary(op, std::move(e), ops[i]);
    return e;
}

// Sum of normal operands: flatten, fold constants, cancel t against -t,
// order canonically.
ExprPtr sum_normal(std::vector<ExprPtr> operands) {
    std::vector<ExprPtr> flat;
    for (auto& op : operands) flatten(NodeKind::Add, op, flat);

    BigRational constant(0);
    std::vector<std::pair<ExprPtr, int>> signed_terms;  // (core, +1/-1)
    for (auto& op : flat) {
        if (is_domain_error(*op)) return op;
        if (auto r = as_rational(*op)) {
            constant += *r;
            continue;
        }
        auto [core, neg] = strip_sign(op);
        signed_terms.emplace_back(std::move(core), neg ? -1 : 1);
    }

    std::sort(signed_terms.begin(), signed_terms.end(),
              [](const auto& a, const auto& b) { return compare_order(a.first, b.first) < 0; });

    std::vector<ExprPtr> terms;
    for (std::size_t i = 0; i < signed_terms.size();) {
        std::size_t j = i;
        int net = 0;
        while (j < signed_terms.size() &&
               compare_order(signed_terms[i].first, signed_terms[j].first) == 0) {
            net += signed_terms[j].second;
            ++j;
        }
        for (int c = 0; c < std::abs(net); ++c)
            terms.push_back(net > 0 ? signed_terms[i].first : make_neg(signed_terms[i].first));
        i = j;
    }
    if (constant != 0) terms.push_back(rational_to_expr(constant));

    if (terms.empty()) return make_int(0);
    std::sort(terms.begin(), terms.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare_order(a, b) < 0; });
    if (terms.size() == 1) return terms.front();
    return rebuild_chain(NodeKind::Add, terms);
}

// Product of normal operands: flatten, fold constants (a zero factor kills
// the product), drop unit factors, pull signs out, order canonically.
// Stripping the sign of a Neg(Mul ...) operand exposes another chain, so
// flattening iterates until only plain factors remain.
ExprPtr product_normal(std::vector<ExprPtr> operands) {
    std::vector<ExprPtr> work;
    for (auto& op : operands) flatten(NodeKind::Mul, op, work);

    BigRational coeff(1);
    bool negate = false;
    std::vector<ExprPtr> factors;
    while (!work.empty()) {
        ExprPtr op = std::move(work.back());
        work.pop_back();
        if (is_domain_error(*op)) return op;
        if (auto r = as_rational(*op)) {
            coeff *= *r;
            continue;
        }
        if (op->kind() == NodeKind::Mul) {
            flatten(NodeKind::Mul, op, work);
            continue;
        }
        auto [core, neg] = strip_sign(op);
        if (neg) {
            negate = !negate;
            work.push_back(std::move(core));
            continue;
        }
        factors.push_back(std::move(core));
    }
    if (coeff == 0) return make_int(0);
    if (coeff < 0) {
        negate = !negate;
        coeff = -coeff;
    }

    std::sort(factors.begin(), factors.end(),
              [](const ExprPtr& a, const ExprPtr& b) { return compare_order(a, b) < 0; });
    if (coeff != 1) factors.insert(factors.begin(), rational_to_expr(coeff));

    ExprPtr result;
    if (factors.empty()) result = make_int(1);
    else if (factors.size() == 1) result = factors.front();
    else result = rebuild_chain(NodeKind::Mul, factors);
    return negate ? negate_normal(result) : result;
}

ExprPtr divide_normal(const ExprPtr& l, const ExprPtr& r) {
    if (is_domain_error(*l)) return l;
    if (is_domain_error(*r)) return r;
    auto rl = as_rational(*l), rr = as_rational(*r);
    if (rr && *rr == 0) return make_domain_error();
    if (rl && rr) return rational_to_expr(*rl / *rr);
    auto [lc, lneg] = strip_sign(l);
    auto [rc, rneg] = strip_sign(r);
    ExprPtr q = make_div(lc, rc);
    return lneg != rneg ? make_neg(std::move(q)) : q;
}

constexpr unsigned kMaxFoldedExponent = 1024;

ExprPtr pow_normal(const ExprPtr& base, const ExprPtr& exponent) {
    if (is_domain_error(*base)) return base;
    if (is_domain_error(*exponent)) return exponent;
    auto rb = as_rational(*base);
    auto re = as_rational(*exponent);
    if (rb && re && denominator(*re) == 1) {
        BigInt n = numerator(*re);
        if (abs(n) <= kMaxFoldedExponent) {
            if (*rb == 0) {
                if (n < 0) return make_domain_error();
                return make_int(n == 0 ? 1 : 0);
            }
            auto k = n.convert_to<long>();
            BigRational b = *rb;
            BigRational p(1);
            for (long i = 0; i < std::labs(k); ++i) p *= b;
            if (k < 0) p = 1 / p;
            return rational_to_expr(p);
        }
    }
    if (rb && *rb > 0) {
        // a^x -> exp(x*log(a)) for positive numeric bases; closes pairs like
        // 2^x vs e^(x*log(2)) at the symbolic stage.
        ExprPtr log_base = make_call(FunctionId::Log, rational_to_expr(*rb));
        return make_call(FunctionId::Exp, product_normal({exponent, std::move(log_base)}));
    }
    if (base->kind() == NodeKind::Constant && base->constant() == ConstantId::E)
        return make_call(FunctionId::Exp, exponent);
    return make_pow(base, exponent);
}

}  // namespace

ExprPtr normalize(const ExprPtr& e) {
    switch (e->kind()) {
        case NodeKind::IntLiteral: return e;
        case NodeKind::DecimalLiteral: return rational_to_expr(*as_rational(*e));
        case NodeKind::Constant:
        case NodeKind::Variable:
        case NodeKind::DomainError: return e;
        case NodeKind::Negate: return negate_normal(normalize(e->child()));
        case NodeKind::Call: {
            ExprPtr arg = normalize(e->child());
            if (is_domain_error(*arg)) return arg;
            return make_call(e->function(), std::move(arg));
        }
        case NodeKind::Add: return sum_normal({normalize(e->lhs()), normalize(e->rhs())});
        case NodeKind::Sub:
            return sum_normal({normalize(e->lhs()), negate_normal(normalize(e->rhs()))});
        case NodeKind::Mul: return product_normal({normalize(e->lhs()), normalize(e->rhs())});
        case NodeKind::Div: return divide_normal(normalize(e->lhs()), normalize(e->rhs()));
        case NodeKind::Pow: return pow_normal(normalize(e->lhs()), normalize(e->rhs()));
    }
    return e;
}

namespace {

bool contains_variable(const Expr& e) {
    return tree_variable(e).has_value();
}

// Conservative "provably nonzero constant" classifier over normal forms.
// Every accepted pattern is mathematically nonzero; anything unrecognized
// stays Unknown.
bool definitely_nonzero(const Expr& e) {
    if (auto r = as_rational(e)) return *r != 0;
    switch (e.kind()) {
        case NodeKind::Constant: return true;  // pi, e
        case NodeKind::Negate: return definitely_nonzero(*e.child());
        case NodeKind::Call:
            if (e.function() == FunctionId::Exp) return true;  // exp never vanishes
            if (e.function() == FunctionId::Log) {
                auto r = as_rational(*e.child());
                return r && *r > 0 && *r != 1;
            }
            return false;
        case NodeKind::Mul:
            return definitely_nonzero(*e.lhs()) && definitely_nonzero(*e.rhs());
        case NodeKind::Div:
            return definitely_nonzero(*e.lhs()) && definitely_nonzero(*e.rhs());
        default: return false;
    }
}

}  // namespace

Verdict symbolic_compare(const ExprPtr& a, const ExprPtr& b) {
    ExprPtr n = normalize(difference(a, b));
    if (is_literal_zero(*n)) return Verdict::Equal;
    if (contains_variable(*n)) return Verdict::Unknown;
    if (auto r = as_rational(*n)) return *r == 0 ? Verdict::Equal : Verdict::NotEqual;
    if (definitely_nonzero(*n)) return Verdict::NotEqual;
    return Verdict::Unknown;
}

}  // namespace eqcheck
