#pragma once

/**
 * @file parser.hpp
 * @brief Text grammar for operators in D and right-hand sides in x.
 *
 *   sum     := product (('+' | '-') product)*
 *   product := unary (('*' | '/') unary | power)*     juxtaposition = '*'
 *   unary   := ('-' | '+') unary | power
 *   power   := primary ('^' exponent)?
 *   primary := number | 'x' | 'D' | func '(' sum ')' | '(' sum ')'
 *   func    := 'sin' | 'cos' | 'exp'
 *
 * Exponents are non-negative integer literals, except after 'e', where
 * e^(a*x) is a synonym for exp(a*x). Inside sin, cos and exp the argument
 * must reduce to a rational multiple of x.
 */

#include "factor.hpp"

#include <cctype>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dopsolve {

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;
};

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    TokenKind kind = TokenKind::End;
    Span span;
    std::string text;
    Rational value;                // Number only
    bool integer_literal = false;  // Number written without '.'
};

inline std::string describe(const Token& t) {
    switch (t.kind) {
    case TokenKind::End: return "end of input";
    case TokenKind::Number: return "number '" + t.text + "'";
    case TokenKind::Ident: return "identifier '" + t.text + "'";
    default: return "'" + t.text + "'";
    }
}

class ParseError : public std::runtime_error {
public:
    ParseError(std::string_view source, Span span, std::string message, std::vector<std::string> expected = {})
        : std::runtime_error(format(source, span, message)),
          span_(span),
          message_(std::move(message)),
          expected_(std::move(expected)) {}

    const Span& span() const { return span_; }
    const std::string& message() const { return message_; }
    const std::vector<std::string>& expected() const { return expected_; }

    /// 1-based line and column of a byte offset.
    static std::pair<std::size_t, std::size_t> line_col(std::string_view source, std::size_t offset) {
        std::size_t line = 1;
        std::size_t col = 1;
        for (std::size_t i = 0; i < offset && i < source.size(); ++i) {
            if (source[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        return {line, col};
    }

private:
    static std::string format(std::string_view source, Span span, const std::string& message) {
        auto [line, col] = line_col(source, span.begin);
        return std::to_string(line) + ":" + std::to_string(col) + ": " + message;
    }

    Span span_;
    std::string message_;
    std::vector<std::string> expected_;
};

namespace detail {

inline std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i > 0) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

inline ParseError expected_error(std::string_view src, const Token& found, std::vector<std::string> expected) {
    std::string msg = "expected " + join_expected(expected) + ", found " + describe(found);
    return ParseError(src, found.span, std::move(msg), std::move(expected));
}

}  // namespace detail

inline std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        Token t;
        t.span.begin = i;
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t j = i;
            std::size_t points = 0;
            while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) {
                points += src[j] == '.' ? 1 : 0;
                ++j;
            }
            t.kind = TokenKind::Number;
            t.text = std::string(src.substr(i, j - i));
            t.integer_literal = points == 0;
            try {
                if (points > 1) throw std::invalid_argument("two decimal points");
                t.value = Rational::parse(t.text);
            } catch (const std::invalid_argument&) {
                throw ParseError(src, {i, j}, "malformed number '" + t.text + "'");
            }
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isalpha(static_cast<unsigned char>(src[j]))) ++j;
            t.kind = TokenKind::Ident;
            t.text = std::string(src.substr(i, j - i));
            i = j;
        } else {
            switch (c) {
            case '+': t.kind = TokenKind::Plus; break;
            case '-': t.kind = TokenKind::Minus; break;
            case '*': t.kind = TokenKind::Star; break;
            case '/': t.kind = TokenKind::Slash; break;
            case '^': t.kind = TokenKind::Caret; break;
            case '(': t.kind = TokenKind::LParen; break;
            case ')': t.kind = TokenKind::RParen; break;
            default:
                throw ParseError(src, {i, i + 1}, std::string("unexpected character '") + c + "'");
            }
            t.text = std::string(1, c);
            ++i;
        }
        t.span.end = i;
        tokens.push_back(std::move(t));
    }
    Token end;
    end.span = {src.size(), src.size()};
    tokens.push_back(end);
    return tokens;
}

// ---------------------------------------------------------------------------
// Syntax tree

struct Node {
    enum class Kind { Number, Variable, Call, Neg, Add, Sub, Mul, Div, Pow };

    Kind kind = Kind::Number;
    Span span;
    std::string name;  // Variable / Call
    Rational value;    // Number
    bool integer_literal = false;
    std::unique_ptr<Node> lhs;
    std::unique_ptr<Node> rhs;
};

using NodePtr = std::unique_ptr<Node>;

class ExpressionParser {
public:
    explicit ExpressionParser(std::string_view src) : src_(src), tokens_(tokenize(src)) {}

    NodePtr parse() {
        if (peek().kind == TokenKind::End)
            throw detail::expected_error(src_, peek(), {"an expression"});
        NodePtr n = parse_sum();
        if (peek().kind != TokenKind::End)
            throw detail::expected_error(src_, peek(), {"an operator", "end of input"});
        return n;
    }

    const std::vector<Token>& tokens() const { return tokens_; }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }

    static NodePtr binary(Node::Kind kind, NodePtr a, NodePtr b) {
        auto n = std::make_unique<Node>();
        n->kind = kind;
        n->span = {a->span.begin, b->span.end};
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }

    bool starts_primary() const {
        auto k = peek().kind;
        return k == TokenKind::Number || k == TokenKind::Ident || k == TokenKind::LParen;
    }

    NodePtr parse_sum() {
        NodePtr left = parse_product();
        while (peek().kind == TokenKind::Plus || peek().kind == TokenKind::Minus) {
            auto kind = advance().kind == TokenKind::Plus ? Node::Kind::Add : Node::Kind::Sub;
            left = binary(kind, std::move(left), parse_product());
        }
        return left;
    }

    NodePtr parse_product() {
        NodePtr left = parse_unary();
        for (;;) {
            if (peek().kind == TokenKind::Star || peek().kind == TokenKind::Slash) {
                auto kind = advance().kind == TokenKind::Star ? Node::Kind::Mul : Node::Kind::Div;
                left = binary(kind, std::move(left), parse_unary());
            } else if (starts_primary()) {
                left = binary(Node::Kind::Mul, std::move(left), parse_power());
            } else {
                return left;
            }
        }
    }

    NodePtr parse_unary() {
        if (peek().kind == TokenKind::Minus || peek().kind == TokenKind::Plus) {
            const Token& op = advance();
            NodePtr operand = parse_unary();
            if (op.kind == TokenKind::Plus) return operand;
            auto n = std::make_unique<Node>();
            n->kind = Node::Kind::Neg;
            n->span = {op.span.begin, operand->span.end};
            n->lhs = std::move(operand);
            return n;
        }
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_primary();
        if (peek().kind != TokenKind::Caret) return base;
        advance();
        NodePtr exponent;
        if (peek().kind == TokenKind::Minus) {
            const Token& minus = advance();
            NodePtr operand = parse_primary();
            exponent = std::make_unique<Node>();
            exponent->kind = Node::Kind::Neg;
            exponent->span = {minus.span.begin, operand->span.end};
            exponent->lhs = std::move(operand);
        } else {
            exponent = parse_primary();
        }
        return binary(Node::Kind::Pow, std::move(base), std::move(exponent));
    }

    NodePtr parse_primary() {
        const Token& t = peek();
        auto n = std::make_unique<Node>();
        n->span = t.span;
        switch (t.kind) {
        case TokenKind::Number:
            advance();
            n->kind = Node::Kind::Number;
            n->value = t.value;
            n->integer_literal = t.integer_literal;
            return n;
        case TokenKind::LParen: {
            advance();
            NodePtr inner = parse_sum();
            if (peek().kind != TokenKind::RParen) throw detail::expected_error(src_, peek(), {"')'"});
            inner->span = {t.span.begin, advance().span.end};
            return inner;
        }
        case TokenKind::Ident: {
            advance();
            if (t.text == "sin" || t.text == "cos" || t.text == "exp") {
                if (peek().kind != TokenKind::LParen)
                    throw detail::expected_error(src_, peek(), {"'(' after " + t.text});
                advance();
                n->kind = Node::Kind::Call;
                n->name = t.text;
                n->lhs = parse_sum();
                if (peek().kind != TokenKind::RParen) throw detail::expected_error(src_, peek(), {"')'"});
                n->span.end = advance().span.end;
                return n;
            }
            if (t.text == "x" || t.text == "D" || t.text == "e") {
                n->kind = Node::Kind::Variable;
                n->name = t.text;
                return n;
            }
            if (t.text == "pi")
                throw ParseError(src_, t.span, "'pi' is not supported: frequencies and rates must be rational");
            if (peek().kind == TokenKind::LParen)
                throw ParseError(src_, t.span,
                                 "unsupported function '" + t.text +
                                     "': only sin, cos and exp of a rational multiple of x are allowed",
                                 {"sin", "cos", "exp"});
            throw ParseError(src_, t.span, "unknown identifier '" + t.text + "'", {"x", "D", "e"});
        }
        default:
            throw detail::expected_error(src_, t, {"number", "identifier", "'('"});
        }
    }

    std::string_view src_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

inline NodePtr parse_syntax(std::string_view src) { return ExpressionParser(src).parse(); }

namespace detail {

/// Exponent of a Pow node that is not e^(...): a non-negative integer literal.
inline unsigned integer_exponent(std::string_view src, const Node& e) {
    if (e.kind != Node::Kind::Number || !e.integer_literal || !e.value.is_integer())
        throw ParseError(src, e.span, "exponent must be a non-negative integer literal");
    if (e.value.num() > 10000) throw ParseError(src, e.span, "exponent too large");
    return e.value.num().convert_to<unsigned>();
}

// --- right-hand sides -------------------------------------------------------

class RhsEvaluator {
public:
    explicit RhsEvaluator(std::string_view src) : src_(src) {}

    ComplexExpr eval(const Node& n) const {
        switch (n.kind) {
        case Node::Kind::Number: return ComplexExpr::constant(GaussianRational(n.value));
        case Node::Kind::Variable:
            if (n.name == "x") return ComplexExpr::x_power(1);
            if (n.name == "D")
                throw ParseError(src_, n.span, "the operator variable D cannot appear in a function of x");
            throw ParseError(src_, n.span, "the constant e is only supported as e^(a*x)");
        case Node::Kind::Call: {
            Rational rate = linear_rate(*n.lhs);
            RealExpr r;
            if (n.name == "exp") return ComplexExpr::exponential(GaussianRational(rate));
            r.add({Rational(1), 0, Rational(), rate, n.name == "sin" ? Trig::Sin : Trig::Cos});
            return to_complex(r);
        }
        case Node::Kind::Neg: return -eval(*n.lhs);
        case Node::Kind::Add: return eval(*n.lhs) + eval(*n.rhs);
        case Node::Kind::Sub: return eval(*n.lhs) - eval(*n.rhs);
        case Node::Kind::Mul: return eval(*n.lhs) * eval(*n.rhs);
        case Node::Kind::Div: {
            ComplexExpr den = eval(*n.rhs);
            if (den.is_zero()) throw ParseError(src_, n.rhs->span, "division by zero");
            if (den.size() != 1 || den.terms().begin()->first.k != 0 || !den.terms().begin()->first.lambda.is_zero())
                throw ParseError(src_, n.rhs->span, "division is only allowed by a nonzero constant");
            return den.terms().begin()->second.inv() * eval(*n.lhs);
        }
        case Node::Kind::Pow:
            if (n.lhs->kind == Node::Kind::Variable && n.lhs->name == "e")
                return ComplexExpr::exponential(GaussianRational(linear_rate(*n.rhs)));
            return pow(eval(*n.lhs), integer_exponent(src_, *n.rhs));
        }
        throw std::logic_error("unreachable");
    }

private:
    /// The argument of sin/cos/exp: must reduce to a*x with rational a.
    Rational linear_rate(const Node& arg) const {
        ComplexExpr v = eval(arg);
        if (v.is_zero()) return Rational();
        if (!v.is_polynomial())
            throw ParseError(src_, arg.span, "nested transcendental functions are not supported");
        if (v.size() != 1 || v.terms().begin()->first.k != 1)
            throw ParseError(src_, arg.span,
                             "argument must be a rational multiple of x (the supported family is closed only under "
                             "rational frequencies and rates)");
        return v.terms().begin()->second.re();
    }

    std::string_view src_;
};

// --- operators ---------------------------------------------------------------

class OperatorEvaluator {
public:
    explicit OperatorEvaluator(std::string_view src) : src_(src) {}

    OperatorPoly eval(const Node& n) const {
        switch (n.kind) {
        case Node::Kind::Number: return OperatorPoly::constant(GaussianRational(n.value));
        case Node::Kind::Variable:
            if (n.name == "D") return OperatorPoly::d();
            throw ParseError(src_, n.span, "variable '" + n.name + "' is not allowed inside an operator", {"D"});
        case Node::Kind::Call:
            throw ParseError(src_, n.span, "function '" + n.name + "' is not allowed inside an operator");
        case Node::Kind::Neg: return -eval(*n.lhs);
        case Node::Kind::Add: return eval(*n.lhs) + eval(*n.rhs);
        case Node::Kind::Sub: return eval(*n.lhs) - eval(*n.rhs);
        case Node::Kind::Mul: return eval(*n.lhs) * eval(*n.rhs);
        case Node::Kind::Div: {
            OperatorPoly den = eval(*n.rhs);
            if (den.is_zero()) throw ParseError(src_, n.rhs->span, "division by zero");
            if (den.degree() > 0)
                throw ParseError(src_, n.span, "division inside an operator (only division by a constant is allowed)");
            return den.leading().inv() * eval(*n.lhs);
        }
        case Node::Kind::Pow: return pow(eval(*n.lhs), integer_exponent(src_, *n.rhs));
        }
        throw std::logic_error("unreachable");
    }

    /// Factored structure of a top-level product of powers of polynomials of
    /// degree <= 2 (splitting reducible rational quadratics). nullopt when the
    /// input is not of that shape or a factor has roots outside Q(i).
    std::optional<FactoredOperator> factored(const Node& root) const {
        FactoredOperator f;
        if (!collect(root, 1, f)) return std::nullopt;
        return f;
    }

private:
    bool collect(const Node& n, unsigned exponent, FactoredOperator& f) const {
        switch (n.kind) {
        case Node::Kind::Mul: return collect(*n.lhs, exponent, f) && collect(*n.rhs, exponent, f);
        case Node::Kind::Neg:
            if (exponent % 2 == 1) f.leading = -f.leading;
            return collect(*n.lhs, exponent, f);
        case Node::Kind::Pow: return collect(*n.lhs, exponent * integer_exponent(src_, *n.rhs), f);
        case Node::Kind::Div: {
            OperatorPoly den = eval(*n.rhs);
            f.leading /= pow(den.leading(), exponent);
            return collect(*n.lhs, exponent, f);
        }
        default: break;
        }
        OperatorPoly p = eval(n);
        if (p.is_zero()) return false;
        f.leading *= pow(p.leading(), exponent);
        if (p.degree() == 0) return true;
        if (p.degree() > 2) return false;
        FactoredOperator local;
        try {
            local = factor_exact(p);
        } catch (const UnfactorableOverGaussianRationals&) {
            return false;
        }
        for (auto factor : local.factors) {
            factor.multiplicity *= exponent;
            auto same = [&](const OperatorFactor& g) { return g.base() == factor.base(); };
            auto it = std::find_if(f.factors.begin(), f.factors.end(), same);
            if (it != f.factors.end())
                it->multiplicity += factor.multiplicity;
            else
                f.factors.push_back(std::move(factor));
        }
        return true;
    }

    std::string_view src_;
};

}  // namespace detail

struct ParsedOperator {
    OperatorPoly op;
    std::optional<FactoredOperator> factored;
};

inline ParsedOperator parse_operator(std::string_view src) {
    NodePtr tree = parse_syntax(src);
    detail::OperatorEvaluator ev(src);
    ParsedOperator out;
    out.op = ev.eval(*tree);
    if (!out.op.is_zero()) out.factored = ev.factored(*tree);
    return out;
}

inline RealExpr parse_rhs(std::string_view src) {
    NodePtr tree = parse_syntax(src);
    return to_real(detail::RhsEvaluator(src).eval(*tree));
}

/// Operator from a coefficient list "a0,a1,...,an" (low order first).
inline OperatorPoly parse_coefficient_list(std::string_view src) {
    std::vector<GaussianRational> coeffs;
    std::size_t start = 0;
    while (start <= src.size()) {
        std::size_t comma = src.find(',', start);
        if (comma == std::string_view::npos) comma = src.size();
        std::string item(src.substr(start, comma - start));
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        try {
            coeffs.emplace_back(Rational::parse(item));
        } catch (const std::invalid_argument&) {
            throw ParseError(src, {start, comma}, "expected a rational coefficient, found '" + item + "'",
                             {"rational coefficient"});
        }
        start = comma + 1;
    }
    return OperatorPoly(std::move(coeffs));
}

}  // namespace dopsolve
