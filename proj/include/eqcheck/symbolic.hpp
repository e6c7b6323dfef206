#pragma once

#include "eqcheck/expr.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>

namespace eqcheck {

using BigRational = boost::multiprecision::cpp_rational;

/// Three-valued outcome of the symbolic comparison stage. Unknown is a legal
/// terminal answer; the pointwise stage takes over from there.
enum class Verdict { Equal, NotEqual, Unknown };

/// Total, deterministic order over expression trees used for canonical
/// ordering of commutative chains: by node kind, then recursively by
/// children, then by literal payload. Returns <0, 0, >0.
int compare_order(const Expr& a, const Expr& b);
inline int compare_order(const ExprPtr& a, const ExprPtr& b) { return compare_order(*a, *b); }

/// Exact rational value of a constant subtree in canonical form (integer
/// literal, canonical fraction, or Negate of those; decimal literals are
/// converted exactly). Empty for anything symbolic.
std::optional<BigRational> as_rational(const Expr& e);

/// Canonical expression form of an exact rational: n, p/q (q > 1, coprime),
/// or Negate of those.
ExprPtr rational_to_expr(const BigRational& r);

/// Deliberately incomplete rewrite pass: exact-rational constant folding,
/// flattening plus canonical ordering of +/* chains, a-b -> a+(-b) with sign
/// pulling, x + (-x) -> 0, e*0 -> 0, e*1 -> e, e+0 -> e, double-negation
/// elimination, and a^x -> exp(x*log(a)) for positive numeric bases (with
/// e^x -> exp(x)). Never fails: division by a (folded) literal zero becomes
/// a DomainError node that absorbs enclosing operations. Idempotent.
ExprPtr normalize(const ExprPtr& e);

/// Normalize the difference a-b and classify the result: literal 0 -> Equal,
/// provably nonzero constant -> NotEqual, anything else -> Unknown. Sound by
/// construction; incompleteness only ever surfaces as Unknown.
Verdict symbolic_compare(const ExprPtr& a, const ExprPtr& b);

}  // namespace eqcheck
