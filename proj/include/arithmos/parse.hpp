// parse.hpp - lexer and recursive-descent parser for the constant-expression language.
//
//   expr    := term (('+'|'-') term)*
//   term    := unary (('*'|'/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?
//   atom    := INTEGER | 'pi' | 'e' | 'i' | FUNC '(' expr ')' | '(' expr ')'
//
// Subtraction and division are desugared during parsing (a-b = a + (-1)*b,
// a/b = a * b^-1); rational literals like "3/4" come out of the exact
// folding pass. parse() returns the canonicalized AST.
#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "arithmos/canonical.hpp"
#include "arithmos/errors.hpp"
#include "arithmos/expr.hpp"

namespace arithmos {

namespace detail {

enum class Tok { Integer, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
    Tok kind;
    std::size_t offset;
    std::string text;
};

inline const char* tok_spelling(Tok t) {
    switch (t) {
        case Tok::Integer: return "INTEGER";
        case Tok::Ident: return "IDENT";
        case Tok::Plus: return "'+'";
        case Tok::Minus: return "'-'";
        case Tok::Star: return "'*'";
        case Tok::Slash: return "'/'";
        case Tok::Caret: return "'^'";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return cur_; }

    Token take() {
        Token t = cur_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::size_t start = pos_;
        if (pos_ >= text_.size()) {
            cur_ = {Tok::End, start, ""};
            return;
        }
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            cur_ = {Tok::Integer, start, std::string(text_.substr(start, pos_ - start))};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
            cur_ = {Tok::Ident, start, std::string(text_.substr(start, pos_ - start))};
            return;
        }
        ++pos_;
        Tok k;
        switch (c) {
            case '+': k = Tok::Plus; break;
            case '-': k = Tok::Minus; break;
            case '*': k = Tok::Star; break;
            case '/': k = Tok::Slash; break;
            case '^': k = Tok::Caret; break;
            case '(': k = Tok::LParen; break;
            case ')': k = Tok::RParen; break;
            default:
                throw ParseError("unexpected character '" + std::string(1, c) + "'", start,
                                 {"INTEGER", "IDENT", "'('"});
        }
        cur_ = {k, start, std::string(1, c)};
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    Token cur_{Tok::End, 0, ""};
};

struct FuncEntry {
    NodeKind kind;
    TrigKind trig;
    HypKind hyp;
};

inline const std::map<std::string, FuncEntry, std::less<>>& func_table() {
    static const std::map<std::string, FuncEntry, std::less<>> table = {
        {"sqrt", {NodeKind::Sqrt, TrigKind::Sin, HypKind::Sinh}},
        {"exp", {NodeKind::Exp, TrigKind::Sin, HypKind::Sinh}},
        {"ln", {NodeKind::Ln, TrigKind::Sin, HypKind::Sinh}},
        {"sin", {NodeKind::Trig, TrigKind::Sin, HypKind::Sinh}},
        {"cos", {NodeKind::Trig, TrigKind::Cos, HypKind::Sinh}},
        {"tan", {NodeKind::Trig, TrigKind::Tan, HypKind::Sinh}},
        {"sec", {NodeKind::Trig, TrigKind::Sec, HypKind::Sinh}},
        {"csc", {NodeKind::Trig, TrigKind::Csc, HypKind::Sinh}},
        {"cot", {NodeKind::Trig, TrigKind::Cot, HypKind::Sinh}},
        {"asin", {NodeKind::ArcTrig, TrigKind::Sin, HypKind::Sinh}},
        {"acos", {NodeKind::ArcTrig, TrigKind::Cos, HypKind::Sinh}},
        {"atan", {NodeKind::ArcTrig, TrigKind::Tan, HypKind::Sinh}},
        {"asec", {NodeKind::ArcTrig, TrigKind::Sec, HypKind::Sinh}},
        {"acsc", {NodeKind::ArcTrig, TrigKind::Csc, HypKind::Sinh}},
        {"acot", {NodeKind::ArcTrig, TrigKind::Cot, HypKind::Sinh}},
        {"arcsin", {NodeKind::ArcTrig, TrigKind::Sin, HypKind::Sinh}},
        {"arccos", {NodeKind::ArcTrig, TrigKind::Cos, HypKind::Sinh}},
        {"arctan", {NodeKind::ArcTrig, TrigKind::Tan, HypKind::Sinh}},
        {"sinh", {NodeKind::Hyp, TrigKind::Sin, HypKind::Sinh}},
        {"cosh", {NodeKind::Hyp, TrigKind::Sin, HypKind::Cosh}},
        {"tanh", {NodeKind::Hyp, TrigKind::Sin, HypKind::Tanh}},
    };
    return table;
}

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Expr parse_expr() {
        Expr lhs = parse_term();
        while (peek_is(Tok::Plus) || peek_is(Tok::Minus)) {
            bool minus = lex_.take().kind == Tok::Minus;
            Expr rhs = parse_term();
            if (minus) rhs = Expr::mul({Expr::integer(-1), std::move(rhs)});
            lhs = Expr::add({std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    void expect_end() {
        if (!peek_is(Tok::End))
            throw ParseError("trailing input", lex_.peek().offset, {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    }

private:
    bool peek_is(Tok k) const { return lex_.peek().kind == k; }

    Expr parse_term() {
        Expr lhs = parse_unary();
        while (peek_is(Tok::Star) || peek_is(Tok::Slash)) {
            bool div = lex_.take().kind == Tok::Slash;
            Expr rhs = parse_unary();
            if (div) rhs = Expr::pow(std::move(rhs), Expr::integer(-1));
            lhs = Expr::mul({std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Expr parse_unary() {
        if (peek_is(Tok::Minus)) {
            lex_.take();
            return Expr::mul({Expr::integer(-1), parse_unary()});
        }
        return parse_power();
    }

    Expr parse_power() {
        Expr base = parse_atom();
        if (peek_is(Tok::Caret)) {
            lex_.take();
            Expr exp = parse_unary();
            return Expr::pow(std::move(base), std::move(exp));
        }
        return base;
    }

    Token expect(Tok k, std::set<std::string> expected) {
        if (!peek_is(k)) {
            const Token& t = lex_.peek();
            // An out-of-vocabulary name is reported as such wherever it shows up.
            if (t.kind == Tok::Ident && !is_known_ident(t.text))
                throw UnknownIdentifierError(t.text, t.offset);
            throw ParseError("expected " + *expected.begin() + ", got " + tok_spelling(t.kind), t.offset,
                             std::move(expected));
        }
        return lex_.take();
    }

    static bool is_known_ident(const std::string& name) {
        if (name == "pi" || name == "e" || name == "i") return true;
        return func_table().count(name) > 0;
    }

    Expr parse_atom() {
        const Token& t = lex_.peek();
        switch (t.kind) {
            case Tok::Integer: {
                Token tok = lex_.take();
                return Expr::rational(Rational(Integer(tok.text, 10)));
            }
            case Tok::Ident: {
                Token tok = lex_.take();
                if (tok.text == "pi") return Expr::constant(ConstKind::Pi);
                if (tok.text == "e") return Expr::constant(ConstKind::E);
                if (tok.text == "i") return Expr::constant(ConstKind::I);
                auto it = func_table().find(tok.text);
                if (it == func_table().end()) throw UnknownIdentifierError(tok.text, tok.offset);
                expect(Tok::LParen, {"'('"});
                Expr arg = parse_expr();
                expect(Tok::RParen, {"')'"});
                const FuncEntry& f = it->second;
                switch (f.kind) {
                    case NodeKind::Sqrt: return Expr::sqrt(std::move(arg));
                    case NodeKind::Exp: return Expr::exp(std::move(arg));
                    case NodeKind::Ln: return Expr::ln(std::move(arg));
                    case NodeKind::Trig: return Expr::trig(f.trig, std::move(arg));
                    case NodeKind::ArcTrig: return Expr::arctrig(f.trig, std::move(arg));
                    case NodeKind::Hyp: return Expr::hyp(f.hyp, std::move(arg));
                    default: throw Error("unreachable function kind");
                }
            }
            case Tok::LParen: {
                lex_.take();
                Expr inner = parse_expr();
                expect(Tok::RParen, {"')'"});
                return inner;
            }
            default:
                throw ParseError(std::string("expected an atom, got ") + tok_spelling(t.kind), t.offset,
                                 {"INTEGER", "IDENT", "'('", "'-'"});
        }
    }

    Lexer lex_;
};

}  // namespace detail

// Parses and canonicalizes. Total on grammatical inputs; throws ParseError,
// UnknownIdentifierError, or DomainError (from canonicalization of literal
// domain violations such as ln(0)).
inline Expr parse(std::string_view text) {
    detail::Parser p(text);
    Expr raw = p.parse_expr();
    p.expect_end();
    return canonicalize(raw);
}

}  // namespace arithmos
