#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/errors.hpp"

// Expression grammar (documented in the CLI help):
//   expr    := term (('+' | '-') term)*
//   term    := factor ('*' factor)*
//   factor  := base ('^' nat)?
//   base    := literal | var | '(' expr ')' | '-' base
//   literal := INT ('/' INT)?
// '^' binds tighter than '*' and is nonassociative; a '/' only forms a
// rational literal (there is no division of elements). Unary minus is part
// of the base, so in "-x1^2" the exponent applies to the negated base;
// parenthesize to exponentiate anything else. Variables are x1..x{2n+m},
// with y1..yn accepted as aliases for x{n+1}..x{2n} and normalized away on
// output. Multiplication is noncommutative and evaluates left to right into
// the algebra, so "x2*x1" parses to the element x1*x2 + 1.

namespace weyl {

inline constexpr std::uint32_t kMaxExponent = 1000000;

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
    enum class Kind {
        int_literal,
        rational_literal,
        variable,
        negate,
        sum,
        difference,
        product,
        power
    };

    Kind kind;
    BigInt int_value;                // int_literal
    BigInt numerator, denominator;   // rational_literal
    int var_index = 0;               // variable; 1-based generator index
    ExprPtr lhs, rhs;                // children (negate and power use lhs only)
    std::uint32_t exponent = 0;      // power
};

namespace detail {

struct Token {
    enum class Kind { integer, ident, plus, minus, star, caret, slash, lparen, rparen, end };
    Kind kind = Kind::end;
    BigInt value;       // integer
    std::string text;   // ident
    std::size_t offset = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
        current_ = Token{};
        current_.offset = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Token::Kind::end;
            return;
        }
        const char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            current_.kind = Token::Kind::integer;
            current_.value = BigInt(text_.substr(start, pos_ - start));
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            current_.kind = Token::Kind::ident;
            current_.text = text_.substr(start, pos_ - start);
            return;
        }
        ++pos_;
        switch (c) {
            case '+': current_.kind = Token::Kind::plus; return;
            case '-': current_.kind = Token::Kind::minus; return;
            case '*': current_.kind = Token::Kind::star; return;
            case '^': current_.kind = Token::Kind::caret; return;
            case '/': current_.kind = Token::Kind::slash; return;
            case '(': current_.kind = Token::Kind::lparen; return;
            case ')': current_.kind = Token::Kind::rparen; return;
            default:
                throw SyntaxError(std::string("unexpected character '") + c + "'", pos_ - 1);
        }
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    Token current_;
};

class Parser {
public:
    Parser(const std::string& text, int n, int m) : lexer_(text), n_(n), m_(m) {}

    ExprPtr run() {
        ExprPtr e = parse_expr();
        const auto& t = lexer_.peek();
        if (t.kind != Token::Kind::end) {
            throw SyntaxError("trailing input", t.offset);
        }
        return e;
    }

private:
    static ExprPtr make(Expr::Kind kind) {
        auto e = std::make_unique<Expr>();
        e->kind = kind;
        return e;
    }

    ExprPtr parse_expr() {
        ExprPtr left = parse_term();
        while (true) {
            const auto kind = lexer_.peek().kind;
            if (kind != Token::Kind::plus && kind != Token::Kind::minus) return left;
            lexer_.take();
            ExprPtr node = make(kind == Token::Kind::plus ? Expr::Kind::sum
                                                          : Expr::Kind::difference);
            node->lhs = std::move(left);
            node->rhs = parse_term();
            left = std::move(node);
        }
    }

    ExprPtr parse_term() {
        ExprPtr left = parse_factor();
        while (lexer_.peek().kind == Token::Kind::star) {
            lexer_.take();
            ExprPtr node = make(Expr::Kind::product);
            node->lhs = std::move(left);
            node->rhs = parse_factor();
            left = std::move(node);
        }
        return left;
    }

    ExprPtr parse_factor() {
        ExprPtr base = parse_base();
        if (lexer_.peek().kind != Token::Kind::caret) return base;
        lexer_.take();
        const Token t = lexer_.take();
        if (t.kind != Token::Kind::integer) {
            throw SyntaxError("expected a nonnegative integer exponent after '^'", t.offset);
        }
        if (t.value > kMaxExponent) {
            throw ExponentTooLarge("exponent " + t.value.str() + " exceeds cap " +
                                   std::to_string(kMaxExponent));
        }
        ExprPtr node = make(Expr::Kind::power);
        node->lhs = std::move(base);
        node->exponent = t.value.convert_to<std::uint32_t>();
        if (lexer_.peek().kind == Token::Kind::caret) {
            throw SyntaxError("'^' is nonassociative; parenthesize", lexer_.peek().offset);
        }
        return node;
    }

    ExprPtr parse_base() {
        const Token t = lexer_.take();
        switch (t.kind) {
            case Token::Kind::integer: {
                if (lexer_.peek().kind == Token::Kind::slash) {
                    lexer_.take();
                    const Token den = lexer_.take();
                    if (den.kind != Token::Kind::integer) {
                        throw SyntaxError("expected an integer denominator after '/'", den.offset);
                    }
                    ExprPtr node = make(Expr::Kind::rational_literal);
                    node->numerator = t.value;
                    node->denominator = den.value;
                    return node;
                }
                ExprPtr node = make(Expr::Kind::int_literal);
                node->int_value = t.value;
                return node;
            }
            case Token::Kind::ident: {
                ExprPtr node = make(Expr::Kind::variable);
                node->var_index = resolve_variable(t);
                return node;
            }
            case Token::Kind::lparen: {
                ExprPtr inner = parse_expr();
                const Token close = lexer_.take();
                if (close.kind != Token::Kind::rparen) {
                    throw SyntaxError("expected ')'", close.offset);
                }
                return inner;
            }
            case Token::Kind::minus: {
                ExprPtr node = make(Expr::Kind::negate);
                node->lhs = parse_base();
                return node;
            }
            default:
                throw SyntaxError("expected a literal, variable or '('", t.offset);
        }
    }

    int resolve_variable(const Token& t) const {
        const std::string& name = t.text;
        const int gens = 2 * n_ + m_;
        if (name.size() >= 2 && (name[0] == 'x' || name[0] == 'y') &&
            name.find_first_not_of("0123456789", 1) == std::string::npos && name.size() <= 10) {
            const long idx = std::stol(name.substr(1));
            if (name[0] == 'x' && idx >= 1 && idx <= gens) return static_cast<int>(idx);
            if (name[0] == 'y' && idx >= 1 && idx <= n_) return static_cast<int>(n_ + idx);
        }
        throw UnknownVariable("unknown variable '" + name + "' (have x1..x" +
                              std::to_string(gens) + (n_ > 0 ? ", aliases y1..y" + std::to_string(n_) : "") +
                              ")");
    }

    Lexer lexer_;
    int n_;
    int m_;
};

template <class Ring>
typename Ring::coeff_type rational_literal_coeff(const Ring& ring, const BigInt& num,
                                                 const BigInt& den) {
    if (den == 0) throw DivisionByZero("rational literal with zero denominator");
    if constexpr (std::is_same_v<Ring, RationalRing>) {
        return BigRat(num, den);
    } else if constexpr (std::is_same_v<Ring, IntegerRing>) {
        return ring.div(num, den);  // NonInvertible unless exact
    } else {
        return ring.div(ring.from_int(num), ring.from_int(den));
    }
}

}  // namespace detail

/// Parse an expression against the given variable counts without evaluating.
inline ExprPtr parse_expression(const std::string& text, int n, int m) {
    return detail::Parser(text, n, m).run();
}

template <class Ring>
Element<Ring> evaluate(const Expr& e, const Signature<Ring>& sig) {
    switch (e.kind) {
        case Expr::Kind::int_literal:
            return Element<Ring>::constant(sig, sig.ring.from_int(e.int_value));
        case Expr::Kind::rational_literal:
            return Element<Ring>::constant(
                sig, detail::rational_literal_coeff(sig.ring, e.numerator, e.denominator));
        case Expr::Kind::variable:
            return Element<Ring>::generator(sig, e.var_index);
        case Expr::Kind::negate:
            return neg(evaluate(*e.lhs, sig));
        case Expr::Kind::sum:
            return add(evaluate(*e.lhs, sig), evaluate(*e.rhs, sig));
        case Expr::Kind::difference:
            return sub(evaluate(*e.lhs, sig), evaluate(*e.rhs, sig));
        case Expr::Kind::product:
            return mul(evaluate(*e.lhs, sig), evaluate(*e.rhs, sig));
        case Expr::Kind::power:
            return pow(evaluate(*e.lhs, sig), e.exponent);
    }
    throw Error("evaluate: corrupt expression node");
}

/// Parse straight into the algebra: the returned element is the
/// normal-ordered value of the expression.
template <class Ring>
Element<Ring> parse_element(const std::string& text, const Signature<Ring>& sig) {
    const ExprPtr ast = parse_expression(text, sig.n, sig.m);
    return evaluate(*ast, sig);
}

}  // namespace weyl
