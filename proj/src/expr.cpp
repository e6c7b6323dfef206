#include "eqcheck/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

namespace eqcheck {

namespace {

ExprPtr make_node(NodeKind kind) {
    return std::make_shared<Expr>(Expr::Private{}, kind);
}

// The Expr fields are private; the factories are friends, so they reach the
// members through a mutable alias of the freshly created node.
Expr& mut(ExprPtr& p) { return const_cast<Expr&>(*p); }

}  // namespace

ExprPtr make_int(BigInt value) {
    if (value < 0) return make_neg(make_int(-value));
    auto node = make_node(NodeKind::IntLiteral);
    mut(node).int_value_ = std::move(value);
    return node;
}

ExprPtr make_decimal(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("decimal literal must be finite");
    if (std::signbit(value)) {
        if (value == 0.0) value = 0.0;  // normalize -0.0
        else return make_neg(make_decimal(-value));
    }
    auto node = make_node(NodeKind::DecimalLiteral);
    mut(node).decimal_value_ = value;
    return node;
}

ExprPtr make_constant(ConstantId id) {
    auto node = make_node(NodeKind::Constant);
    mut(node).constant_ = id;
    return node;
}

ExprPtr make_variable(std::string name) {
    auto node = make_node(NodeKind::Variable);
    mut(node).variable_ = std::move(name);
    return node;
}

ExprPtr make_neg(ExprPtr operand) {
    auto node = make_node(NodeKind::Negate);
    mut(node).lhs_ = std::move(operand);
    return node;
}

ExprPtr make_binary(NodeKind op, ExprPtr lhs, ExprPtr rhs) {
    auto node = make_node(op);
    mut(node).lhs_ = std::move(lhs);
    mut(node).rhs_ = std::move(rhs);
    return node;
}

ExprPtr make_call(FunctionId fn, ExprPtr argument) {
    auto node = make_node(NodeKind::Call);
    mut(node).function_ = fn;
    mut(node).lhs_ = std::move(argument);
    return node;
}

ExprPtr make_domain_error() {
    return make_node(NodeKind::DomainError);
}

std::string_view function_name(FunctionId fn) {
    switch (fn) {
        case FunctionId::Sin: return "sin";
        case FunctionId::Cos: return "cos";
        case FunctionId::Tan: return "tan";
        case FunctionId::Exp: return "exp";
        case FunctionId::Log: return "log";
        case FunctionId::Sqrt: return "sqrt";
        case FunctionId::Abs: return "abs";
    }
    return "?";
}

std::string_view constant_name(ConstantId id) {
    return id == ConstantId::Pi ? "pi" : "e";
}

bool structural_equal(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case NodeKind::IntLiteral: return a.int_value() == b.int_value();
        case NodeKind::DecimalLiteral: return a.decimal_value() == b.decimal_value();
        case NodeKind::Constant: return a.constant() == b.constant();
        case NodeKind::Variable: return a.variable() == b.variable();
        case NodeKind::Negate: return structural_equal(*a.child(), *b.child());
        case NodeKind::Call:
            return a.function() == b.function() && structural_equal(*a.child(), *b.child());
        case NodeKind::DomainError: return true;
        default:
            return structural_equal(*a.lhs(), *b.lhs()) && structural_equal(*a.rhs(), *b.rhs());
    }
}

std::optional<std::string> tree_variable(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Variable: return e.variable();
        case NodeKind::Negate:
        case NodeKind::Call: return tree_variable(*e.child());
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Pow: {
            auto l = tree_variable(*e.lhs());
            return l ? l : tree_variable(*e.rhs());
        }
        default: return std::nullopt;
    }
}

std::string ParseError::message() const {
    return "parse error at offset " + std::to_string(offset) + ": expected " + expected +
           ", found " + found;
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

namespace {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Bad };

struct Token {
    TokenKind kind = TokenKind::End;
    std::size_t offset = 0;
    std::string_view text;       // slice of the input
    bool is_decimal = false;     // Number: has fraction/exponent part
};

struct ParseFailure {
    ParseError error;
};

class Parser {
  public:
    Parser(std::string_view text, std::string_view variable)
        : text_(text), variable_(variable) {
        advance();
    }

    ParseResult run() {
        try {
            ExprPtr e = parse_expr();
            if (cur_.kind != TokenKind::End)
                fail("end of input", describe(cur_));
            return {std::move(e), std::nullopt};
        } catch (const ParseFailure& f) {
            return {nullptr, f.error};
        }
    }

  private:
    static constexpr int kMaxDepth = 1000;

    std::string_view text_;
    std::string_view variable_;
    Token cur_;
    int depth_ = 0;

    [[noreturn]] void fail(std::string expected, std::string found) {
        throw ParseFailure{ParseError{cur_.offset, std::move(expected), std::move(found)}};
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case TokenKind::End: return "end of input";
            case TokenKind::Number: return "number '" + std::string(t.text) + "'";
            case TokenKind::Ident: return "identifier '" + std::string(t.text) + "'";
            case TokenKind::Bad: return "character '" + std::string(t.text) + "'";
            default: return "'" + std::string(t.text) + "'";
        }
    }

    void advance() { cur_ = lex(); }

    Token lex() {
        std::size_t i = pos_;
        while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
        Token t;
        t.offset = i;
        if (i >= text_.size()) {
            pos_ = i;
            t.kind = TokenKind::End;
            return t;
        }
        char c = text_[i];
        auto single = [&](TokenKind k) {
            t.kind = k;
            t.text = text_.substr(i, 1);
            pos_ = i + 1;
            return t;
        };
        switch (c) {
            case '+': return single(TokenKind::Plus);
            case '-': return single(TokenKind::Minus);
            case '*': return single(TokenKind::Star);
            case '/': return single(TokenKind::Slash);
            case '^': return single(TokenKind::Caret);
            case '(': return single(TokenKind::LParen);
            case ')': return single(TokenKind::RParen);
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            bool decimal = false;
            if (j + 1 < text_.size() && text_[j] == '.' &&
                std::isdigit(static_cast<unsigned char>(text_[j + 1]))) {
                decimal = true;
                ++j;
                while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
            }
            // Exponent suffix is consumed only when fully formed; "2e" stays
            // NUMBER(2) IDENT(e). Unambiguous because implicit multiplication
            // is not part of the grammar.
            if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
                if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
                    decimal = true;
                    ++k;
                    while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
                    j = k;
                }
            }
            t.kind = TokenKind::Number;
            t.text = text_.substr(i, j - i);
            t.is_decimal = decimal;
            pos_ = j;
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_'))
                ++j;
            t.kind = TokenKind::Ident;
            t.text = text_.substr(i, j - i);
            pos_ = j;
            return t;
        }
        t.kind = TokenKind::Bad;
        t.text = text_.substr(i, 1);
        pos_ = i + 1;
        return t;
    }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxDepth) p.fail("a shallower expression", "nesting deeper than 1000");
        }
        ~DepthGuard() { --p.depth_; }
    };

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        ExprPtr e = parse_term();
        while (cur_.kind == TokenKind::Plus || cur_.kind == TokenKind::Minus) {
            NodeKind op = cur_.kind == TokenKind::Plus ? NodeKind::Add : NodeKind::Sub;
            advance();
            e = make_binary(op, std::move(e), parse_term());
        }
        return e;
    }

    ExprPtr parse_term() {
        DepthGuard guard(*this);
        ExprPtr e = parse_factor();
        while (cur_.kind == TokenKind::Star || cur_.kind == TokenKind::Slash) {
            NodeKind op = cur_.kind == TokenKind::Star ? NodeKind::Mul : NodeKind::Div;
            advance();
            e = make_binary(op, std::move(e), parse_factor());
        }
        return e;
    }

    ExprPtr parse_factor() {
        DepthGuard guard(*this);
        if (cur_.kind == TokenKind::Minus) {
            advance();
            return make_neg(parse_factor());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        DepthGuard guard(*this);
        ExprPtr base = parse_atom();
        if (cur_.kind == TokenKind::Caret) {
            advance();
            return make_pow(std::move(base), parse_factor());
        }
        return base;
    }

    ExprPtr parse_atom() {
        DepthGuard guard(*this);
        switch (cur_.kind) {
            case TokenKind::Number: return parse_number();
            case TokenKind::LParen: {
                advance();
                ExprPtr e = parse_expr();
                if (cur_.kind != TokenKind::RParen) fail("')'", describe(cur_));
                advance();
                return e;
            }
            case TokenKind::Ident: return parse_ident();
            default:
                fail("number, constant, function call, variable or '('", describe(cur_));
        }
    }

    ExprPtr parse_number() {
        Token t = cur_;
        advance();
        if (!t.is_decimal) {
            // strip leading zeros: cpp_int would read "09" as bad octal
            std::string_view digits = t.text;
            while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
            return make_int(BigInt(std::string(digits)));
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), value);
        if (ec == std::errc::result_out_of_range || !std::isfinite(value)) {
            cur_ = t;  // report at the number itself
            fail("a number representable in binary64", describe(t));
        }
        (void)ptr;
        return make_decimal(value);
    }

    static std::optional<FunctionId> lookup_function(std::string_view name) {
        if (name == "sin") return FunctionId::Sin;
        if (name == "cos") return FunctionId::Cos;
        if (name == "tan") return FunctionId::Tan;
        if (name == "exp") return FunctionId::Exp;
        if (name == "log" || name == "ln") return FunctionId::Log;
        if (name == "sqrt") return FunctionId::Sqrt;
        if (name == "abs") return FunctionId::Abs;
        return std::nullopt;
    }

    ExprPtr parse_ident() {
        Token t = cur_;
        advance();
        if (cur_.kind == TokenKind::LParen) {
            auto fn = lookup_function(t.text);
            if (!fn) {
                cur_ = t;
                fail("one of sin, cos, tan, exp, log, ln, sqrt, abs", describe(t));
            }
            advance();
            ExprPtr arg = parse_expr();
            if (cur_.kind != TokenKind::RParen) fail("')'", describe(cur_));
            advance();
            return make_call(*fn, std::move(arg));
        }
        if (t.text == "pi") return make_constant(ConstantId::Pi);
        if (t.text == "e") return make_constant(ConstantId::E);
        if (t.text == variable_) return make_variable(std::string(t.text));
        cur_ = t;
        fail("constant, function or variable '" + std::string(variable_) + "'", describe(t));
    }

    std::size_t pos_ = 0;
};

}  // namespace

ParseResult parse(std::string_view text, std::string_view variable) {
    return Parser(text, variable).run();
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

namespace {

// Grammar position levels: expr(+,-)=1, term(*,/)=2, factor(-)=3, power(^)=4,
// atom=5. A child below its slot's minimum level gets parenthesized.
int print_level(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Add:
        case NodeKind::Sub: return 1;
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::DomainError: return 2;  // prints as "0/0"
        case NodeKind::Negate: return 3;
        case NodeKind::Pow: return 4;
        default: return 5;
    }
}

std::string decimal_text(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write(std::string& out, const Expr& e, int min_level);

// Right operands that are Negate nodes are parenthesized even where the
// grammar would accept them bare ("x+-1" is valid but unreadable).
void write_operand(std::string& out, const Expr& e, int min_level, bool parenthesize_neg) {
    if (parenthesize_neg && e.kind() == NodeKind::Negate) {
        out += '(';
        write(out, e, 0);
        out += ')';
        return;
    }
    write(out, e, min_level);
}

void write(std::string& out, const Expr& e, int min_level) {
    if (print_level(e) < min_level) {
        out += '(';
        write(out, e, 0);
        out += ')';
        return;
    }
    switch (e.kind()) {
        case NodeKind::IntLiteral: out += e.int_value().str(); break;
        case NodeKind::DecimalLiteral: out += decimal_text(e.decimal_value()); break;
        case NodeKind::Constant: out += constant_name(e.constant()); break;
        case NodeKind::Variable: out += e.variable(); break;
        case NodeKind::DomainError: out += "0/0"; break;
        case NodeKind::Negate:
            out += '-';
            write_operand(out, *e.child(), 3, true);
            break;
        case NodeKind::Add:
        case NodeKind::Sub:
            write(out, *e.lhs(), 1);
            out += e.kind() == NodeKind::Add ? '+' : '-';
            write_operand(out, *e.rhs(), 2, true);
            break;
        case NodeKind::Mul:
        case NodeKind::Div:
            write(out, *e.lhs(), 2);
            out += e.kind() == NodeKind::Mul ? '*' : '/';
            write_operand(out, *e.rhs(), 3, true);
            break;
        case NodeKind::Pow:
            write(out, *e.lhs(), 5);
            out += '^';
            write_operand(out, *e.rhs(), 3, true);
            break;
        case NodeKind::Call:
            out += function_name(e.function());
            out += '(';
            write(out, *e.child(), 0);
            out += ')';
            break;
    }
}

}  // namespace

std::string format(const Expr& e) {
    std::string out;
    write(out, e, 0);
    return out;
}

ExprPtr difference(const ExprPtr& real_answer, const ExprPtr& user_answer) {
    auto a = tree_variable(*real_answer);
    auto b = tree_variable(*user_answer);
    if (a && b && *a != *b)
        throw std::invalid_argument("expressions use different variables: '" + *a + "' vs '" + *b + "'");
    return make_sub(real_answer, user_answer);
}

}  // namespace eqcheck
