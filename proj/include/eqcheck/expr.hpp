#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace eqcheck {

using BigInt = boost::multiprecision::cpp_int;

enum class NodeKind {
    IntLiteral,
    DecimalLiteral,
    Constant,
    Variable,
    Negate,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Call,
    // Internal marker produced by normalization when a constant subterm has
    // no defined value (e.g. division by a literal zero). Never produced by
    // the parser.
    DomainError,
};

enum class ConstantId { Pi, E };

enum class FunctionId { Sin, Cos, Tan, Exp, Log, Sqrt, Abs };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree node. Nodes are built through the factory
/// functions below and shared freely; no mutation after construction.
class Expr {
  public:
    NodeKind kind() const { return kind_; }

    const BigInt& int_value() const { return int_value_; }
    double decimal_value() const { return decimal_value_; }
    ConstantId constant() const { return constant_; }
    const std::string& variable() const { return variable_; }
    FunctionId function() const { return function_; }

    /// Single child of Negate and Call nodes.
    const ExprPtr& child() const { return lhs_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

    bool is_binary() const {
        return kind_ == NodeKind::Add || kind_ == NodeKind::Sub ||
               kind_ == NodeKind::Mul || kind_ == NodeKind::Div ||
               kind_ == NodeKind::Pow;
    }

    struct Private {};  // locks constructors to the factories
    Expr(Private, NodeKind kind) : kind_(kind) {}

  private:
    friend ExprPtr make_int(BigInt value);
    friend ExprPtr make_decimal(double value);
    friend ExprPtr make_constant(ConstantId id);
    friend ExprPtr make_variable(std::string name);
    friend ExprPtr make_neg(ExprPtr operand);
    friend ExprPtr make_binary(NodeKind op, ExprPtr lhs, ExprPtr rhs);
    friend ExprPtr make_call(FunctionId fn, ExprPtr argument);
    friend ExprPtr make_domain_error();

    NodeKind kind_;
    BigInt int_value_;
    double decimal_value_ = 0.0;
    ConstantId constant_ = ConstantId::Pi;
    std::string variable_;
    FunctionId function_ = FunctionId::Sin;
    ExprPtr lhs_;
    ExprPtr rhs_;
};

/// Literal factories keep the sign invariant: literal payloads are
/// non-negative, negativity is always an explicit Negate node. A negative
/// argument therefore yields Negate(|value|).
ExprPtr make_int(BigInt value);
ExprPtr make_decimal(double value);  // requires a finite value
ExprPtr make_constant(ConstantId id);
ExprPtr make_variable(std::string name);
ExprPtr make_neg(ExprPtr operand);
ExprPtr make_binary(NodeKind op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_call(FunctionId fn, ExprPtr argument);
ExprPtr make_domain_error();

inline ExprPtr make_add(ExprPtr l, ExprPtr r) { return make_binary(NodeKind::Add, std::move(l), std::move(r)); }
inline ExprPtr make_sub(ExprPtr l, ExprPtr r) { return make_binary(NodeKind::Sub, std::move(l), std::move(r)); }
inline ExprPtr make_mul(ExprPtr l, ExprPtr r) { return make_binary(NodeKind::Mul, std::move(l), std::move(r)); }
inline ExprPtr make_div(ExprPtr l, ExprPtr r) { return make_binary(NodeKind::Div, std::move(l), std::move(r)); }
inline ExprPtr make_pow(ExprPtr l, ExprPtr r) { return make_binary(NodeKind::Pow, std::move(l), std::move(r)); }

/// Canonical printed name ("log", not "ln").
std::string_view function_name(FunctionId fn);
std::string_view constant_name(ConstantId id);

bool structural_equal(const Expr& a, const Expr& b);
inline bool structural_equal(const ExprPtr& a, const ExprPtr& b) { return structural_equal(*a, *b); }

/// Name of the (single) variable occurring in the tree, if any.
std::optional<std::string> tree_variable(const Expr& e);

struct ParseError {
    std::size_t offset = 0;   // byte offset into the input
    std::string expected;
    std::string found;

    std::string message() const;
};

struct ParseResult {
    ExprPtr expr;                     // non-null on success
    std::optional<ParseError> error;  // set on failure

    bool ok() const { return expr != nullptr; }
};

/// Recursive-descent parser for the expression grammar:
///
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := "-" factor | power
///   power  := atom ("^" factor)?
///   atom   := NUMBER | "pi" | "e" | IDENT "(" expr ")" | VAR | "(" expr ")"
///
/// Whitespace-insensitive. "ln" is accepted as an alias of "log" (natural
/// logarithm). Identifiers other than the declared variable name, the
/// constants, and the known functions are rejected. Never throws: every
/// failure is reported as a ParseError.
ParseResult parse(std::string_view text, std::string_view variable = "x");

/// Minimal-parenthesization infix printer; parse(format(e)) rebuilds the
/// same tree.
std::string format(const Expr& e);
inline std::string format(const ExprPtr& e) { return format(*e); }

/// Sub(real_answer, user_answer), unsimplified. Throws std::invalid_argument
/// when the two expressions use different variable names.
ExprPtr difference(const ExprPtr& real_answer, const ExprPtr& user_answer);

}  // namespace eqcheck
