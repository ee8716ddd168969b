#pragma once

// Expression grammar shared by the CLI and the data files. Explicit '*'
// everywhere (no juxtaposition), so noncommutative order is unambiguous:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' exponent)?
//   atom   := INT | IDENT | '(' expr ')'
//   exponent := INT | '-' INT | '(' '-'? INT '/' INT ')'
//
// IDENT is a name with an optional bracket index: t[1,2], A[1], lambda, q.
// Scalar atoms: q (with integer or half-integer powers), lambda, omega.
// Division only by scalar-valued subexpressions. g^-1 resolves to the
// declared inverse symbol of an invertible generator.

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "qgauss/ncpoly.hpp"

namespace qg {

struct Ast {
    enum class Kind { number, symbol, add, sub, mul, div, neg, pow };
    Kind kind;
    std::string text;         // number literal or symbol name
    long exp_num = 0;         // for pow
    long exp_den = 1;         // 1 or 2
    std::vector<Ast> kids;
};

namespace detail {

struct Token {
    enum class Kind { integer, ident, plus, minus, star, slash, caret, lparen, rparen, end };
    Kind kind;
    std::string text;
    std::size_t pos;
};

class Lexer {
public:
    explicit Lexer(const std::string& s) : s_(s) {}

    Token next() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
        std::size_t start = i_;
        if (i_ >= s_.size()) return {Token::Kind::end, "", start};
        char c = s_[i_];
        switch (c) {
            case '+': ++i_; return {Token::Kind::plus, "+", start};
            case '-': ++i_; return {Token::Kind::minus, "-", start};
            case '*': ++i_; return {Token::Kind::star, "*", start};
            case '/': ++i_; return {Token::Kind::slash, "/", start};
            case '^': ++i_; return {Token::Kind::caret, "^", start};
            case '(': ++i_; return {Token::Kind::lparen, "(", start};
            case ')': ++i_; return {Token::Kind::rparen, ")", start};
            default: break;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string t;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t += s_[i_++];
            return {Token::Kind::integer, t, start};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string t;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                t += s_[i_++];
            if (i_ < s_.size() && s_[i_] == '[') {
                t += s_[i_++];
                while (i_ < s_.size() && s_[i_] != ']') {
                    char b = s_[i_];
                    if (!std::isdigit(static_cast<unsigned char>(b)) && b != ',')
                        throw parse_error("bad bracket index", i_);
                    t += s_[i_++];
                }
                if (i_ >= s_.size()) throw parse_error("unterminated bracket index", start);
                t += s_[i_++];
            }
            return {Token::Kind::ident, t, start};
        }
        throw parse_error(std::string("unexpected character '") + c + "'", start);
    }

private:
    const std::string& s_;
    std::size_t i_ = 0;
};

class Parser {
public:
    explicit Parser(const std::string& s) : lex_(s) { advance(); }

    Ast parse() {
        Ast e = expr();
        expect(Token::Kind::end, "end of input");
        return e;
    }

private:
    void advance() { tok_ = lex_.next(); }

    void expect(Token::Kind k, const std::string& what) {
        if (tok_.kind != k) throw parse_error("expected " + what, tok_.pos);
        if (k != Token::Kind::end) advance();
    }

    Ast expr() {
        Ast left = term();
        while (tok_.kind == Token::Kind::plus || tok_.kind == Token::Kind::minus) {
            Ast::Kind k = tok_.kind == Token::Kind::plus ? Ast::Kind::add : Ast::Kind::sub;
            advance();
            Ast right = term();
            Ast node{k, "", 0, 1, {}};
            node.kids.push_back(std::move(left));
            node.kids.push_back(std::move(right));
            left = std::move(node);
        }
        return left;
    }

    Ast term() {
        Ast left = factor();
        while (tok_.kind == Token::Kind::star || tok_.kind == Token::Kind::slash) {
            Ast::Kind k = tok_.kind == Token::Kind::star ? Ast::Kind::mul : Ast::Kind::div;
            advance();
            Ast right = factor();
            Ast node{k, "", 0, 1, {}};
            node.kids.push_back(std::move(left));
            node.kids.push_back(std::move(right));
            left = std::move(node);
        }
        return left;
    }

    Ast factor() {
        if (tok_.kind == Token::Kind::minus) {
            advance();
            Ast node{Ast::Kind::neg, "", 0, 1, {}};
            node.kids.push_back(factor());
            return node;
        }
        Ast a = atom();
        if (tok_.kind == Token::Kind::caret) {
            advance();
            auto [num, den] = exponent();
            Ast node{Ast::Kind::pow, "", num, den, {}};
            node.kids.push_back(std::move(a));
            return node;
        }
        return a;
    }

    std::pair<long, long> exponent() {
        bool neg = false;
        if (tok_.kind == Token::Kind::minus) {
            neg = true;
            advance();
        }
        if (tok_.kind == Token::Kind::integer) {
            long v = std::stol(tok_.text);
            advance();
            return {neg ? -v : v, 1};
        }
        if (!neg && tok_.kind == Token::Kind::lparen) {
            advance();
            bool inner_neg = false;
            if (tok_.kind == Token::Kind::minus) {
                inner_neg = true;
                advance();
            }
            if (tok_.kind != Token::Kind::integer) throw parse_error("expected integer", tok_.pos);
            long num = std::stol(tok_.text);
            advance();
            expect(Token::Kind::slash, "'/'");
            if (tok_.kind != Token::Kind::integer) throw parse_error("expected integer", tok_.pos);
            long den = std::stol(tok_.text);
            advance();
            expect(Token::Kind::rparen, "')'");
            if (den != 1 && den != 2) throw parse_error("exponent denominator must be 1 or 2", tok_.pos);
            return {inner_neg ? -num : num, den};
        }
        throw parse_error("expected exponent", tok_.pos);
    }

    Ast atom() {
        if (tok_.kind == Token::Kind::integer) {
            Ast a{Ast::Kind::number, tok_.text, 0, 1, {}};
            advance();
            return a;
        }
        if (tok_.kind == Token::Kind::ident) {
            Ast a{Ast::Kind::symbol, tok_.text, 0, 1, {}};
            advance();
            return a;
        }
        if (tok_.kind == Token::Kind::lparen) {
            advance();
            Ast e = expr();
            expect(Token::Kind::rparen, "')'");
            return e;
        }
        throw parse_error("expected a number, name or '('", tok_.pos);
    }

    Lexer lex_;
    Token tok_{Token::Kind::end, "", 0};
};

inline int precedence(Ast::Kind k) {
    switch (k) {
        case Ast::Kind::add:
        case Ast::Kind::sub: return 1;
        case Ast::Kind::mul:
        case Ast::Kind::div: return 2;
        case Ast::Kind::neg: return 3;
        case Ast::Kind::pow: return 4;
        default: return 5;
    }
}

}  // namespace detail

inline Ast parse_expression(const std::string& text) { return detail::Parser(text).parse(); }

inline std::string ast_str(const Ast& a) {
    using K = Ast::Kind;
    auto wrap = [](const Ast& kid, int parent_prec, bool strict) {
        std::string s = ast_str(kid);
        int p = detail::precedence(kid.kind);
        if (p < parent_prec || (strict && p == parent_prec)) return "(" + s + ")";
        return s;
    };
    switch (a.kind) {
        case K::number: return a.text;
        case K::symbol: return a.text;
        case K::add: return wrap(a.kids[0], 1, false) + " + " + wrap(a.kids[1], 1, true);
        case K::sub: return wrap(a.kids[0], 1, false) + " - " + wrap(a.kids[1], 1, true);
        case K::mul: return wrap(a.kids[0], 2, false) + "*" + wrap(a.kids[1], 2, true);
        case K::div: return wrap(a.kids[0], 2, false) + "/" + wrap(a.kids[1], 2, true);
        case K::neg: return "-" + wrap(a.kids[0], 3, false);
        case K::pow: {
            std::string e;
            if (a.exp_den == 1) {
                e = std::to_string(a.exp_num);
            } else {
                e = "(" + std::to_string(a.exp_num) + "/" + std::to_string(a.exp_den) + ")";
            }
            return wrap(a.kids[0], 4, true) + "^" + e;
        }
    }
    return "";
}

// ---- evaluation ----------------------------------------------------------

// Resolves names during evaluation. The default resolves only the scalar
// constants; algebra-aware callers supply the symbol table.
class ExpressionContext {
public:
    explicit ExpressionContext(const SymbolTable* syms = nullptr) : syms_(syms) {}

    const SymbolTable* syms() const { return syms_; }

    SymbolId find_symbol(const std::string& label) const {
        return syms_ ? syms_->find(label) : no_symbol;
    }

    // Inverse symbol of `base`, if one was declared.
    SymbolId find_inverse(SymbolId base) const {
        if (!syms_) return no_symbol;
        for (SymbolId i = 0; i < syms_->size(); ++i)
            if ((*syms_)[i].inverse_of == base) return i;
        return no_symbol;
    }

private:
    const SymbolTable* syms_;
};

inline NcPolynomial eval_expression(const Ast& a, const ExpressionContext& ctx) {
    using K = Ast::Kind;
    switch (a.kind) {
        case K::number: return NcPolynomial::constant(QCoeff::of(Rational(a.text)));
        case K::symbol: {
            if (a.text == "q") return NcPolynomial::constant(QCoeff::q());
            if (a.text == "lambda") return NcPolynomial::constant(QCoeff::lambda());
            if (a.text == "omega") return NcPolynomial::constant(QCoeff::omega());
            SymbolId s = ctx.find_symbol(a.text);
            if (s == no_symbol) throw parse_error("unknown name '" + a.text + "'", 0);
            return NcPolynomial::symbol(s);
        }
        case K::add: return eval_expression(a.kids[0], ctx) + eval_expression(a.kids[1], ctx);
        case K::sub: return eval_expression(a.kids[0], ctx) - eval_expression(a.kids[1], ctx);
        case K::mul: return eval_expression(a.kids[0], ctx) * eval_expression(a.kids[1], ctx);
        case K::div: {
            NcPolynomial num = eval_expression(a.kids[0], ctx);
            NcPolynomial den = eval_expression(a.kids[1], ctx);
            if (!den.is_constant()) throw parse_error("division by a non-scalar expression", 0);
            if (den.is_zero()) throw division_by_zero();
            QCoeff inv = den.terms()[0].coeff.inverse();
            return inv * num;
        }
        case K::neg: return -eval_expression(a.kids[0], ctx);
        case K::pow: {
            const Ast& base = a.kids[0];
            // q admits half-integer exponents
            if (base.kind == K::symbol && base.text == "q") {
                long s_exp = a.exp_den == 2 ? a.exp_num : 2 * a.exp_num;
                return NcPolynomial::constant(QCoeff::s_pow(static_cast<int>(s_exp)));
            }
            if (a.exp_den != 1)
                throw parse_error("fractional exponent only allowed on q", 0);
            if (base.kind == K::symbol && ctx.find_symbol(base.text) != no_symbol &&
                a.exp_num < 0) {
                SymbolId b = ctx.find_symbol(base.text);
                if (!(*ctx.syms())[b].invertible)
                    throw parse_error("'" + base.text + "' is not invertible", 0);
                SymbolId inv = ctx.find_inverse(b);
                if (inv == no_symbol)
                    throw parse_error("no inverse declared for '" + base.text + "'", 0);
                Word w(static_cast<std::size_t>(-a.exp_num), inv);
                return NcPolynomial::word(std::move(w));
            }
            NcPolynomial b = eval_expression(base, ctx);
            if (a.exp_num < 0) {
                if (!b.is_constant())
                    throw parse_error("negative power of a non-scalar expression", 0);
                if (b.is_zero()) throw division_by_zero();
                return NcPolynomial::constant(
                    b.terms().empty() ? QCoeff::zero()
                                      : b.terms()[0].coeff.pow(static_cast<int>(a.exp_num)));
            }
            return b.pow(static_cast<int>(a.exp_num));
        }
    }
    return NcPolynomial::zero();
}

inline NcPolynomial parse_poly(const std::string& text, const ExpressionContext& ctx) {
    return eval_expression(parse_expression(text), ctx);
}

inline QCoeff parse_coeff(const std::string& text) {
    NcPolynomial p = parse_poly(text, ExpressionContext{});
    if (!p.is_constant()) throw parse_error("expected a scalar expression", 0);
    return p.is_zero() ? QCoeff::zero() : p.terms()[0].coeff;
}

}  // namespace qg
