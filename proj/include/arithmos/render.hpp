// render.hpp - human-readable text for Expr such that parse(render(e)) == e
// for canonical e.
#pragma once

#include <string>
#include <vector>

#include "arithmos/expr.hpp"

namespace arithmos {

namespace detail {

struct RenderStyle {
    const char* plus;
    const char* minus;
};

inline std::string render_node(const Expr& e, const RenderStyle& st);

inline bool is_atom_like(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Constant:
        case NodeKind::Exp:
        case NodeKind::Ln:
        case NodeKind::Sqrt:
        case NodeKind::Trig:
        case NodeKind::ArcTrig:
        case NodeKind::Hyp: return true;
        case NodeKind::Rational: return e.rat() >= 0 && is_integer(e.rat());
        default: return false;
    }
}

inline std::string parens(const std::string& s) { return "(" + s + ")"; }

inline std::string render_pow_base(const Expr& b, const RenderStyle& st) {
    std::string s = render_node(b, st);
    if (is_atom_like(b)) return s;
    return parens(s);
}

inline std::string render_pow_exponent(const Expr& x, const RenderStyle& st) {
    // Right-associativity makes a chained Pow exponent safe without parens.
    if (is_atom_like(x) || x.kind() == NodeKind::Pow) return render_node(x, st);
    return parens(render_node(x, st));
}

// Renders a Mul node, optionally with its rational coefficient replaced
// (used by Add to fold a leading minus into " - ").
inline std::string render_mul(const std::vector<Expr>& kids, const Rational& coeff, const RenderStyle& st) {
    std::string num;
    std::string den;
    for (const auto& k : kids) {
        if (k.kind() == NodeKind::Pow && k.kid(1).is_rational_value(-1)) {
            const Expr& b = k.kid(0);
            std::string s = render_node(b, st);
            bool safe = is_atom_like(b) || b.kind() == NodeKind::Pow;
            den += "/";
            den += safe ? s : parens(s);
            continue;
        }
        std::string s = render_node(k, st);
        bool safe = is_atom_like(k) || k.kind() == NodeKind::Pow;
        if (!num.empty()) num += "*";
        num += safe ? s : parens(s);
    }
    std::string lead;
    Rational c = coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (c != 1 || num.empty()) {
        lead = c.get_str();
        if (!num.empty()) lead += "*";
    }
    std::string out = (negative ? "-" : "") + lead + num + den;
    return out;
}

inline std::string render_node(const Expr& e, const RenderStyle& st) {
    switch (e.kind()) {
        case NodeKind::Rational: return e.rat().get_str();
        case NodeKind::Constant:
            switch (e.const_kind()) {
                case ConstKind::E: return "e";
                case ConstKind::Pi: return "pi";
                case ConstKind::I: return "i";
            }
            break;
        case NodeKind::Add: {
            std::string out;
            bool first = true;
            for (const auto& k : e.kids()) {
                if (first) {
                    out = render_node(k, st);
                    first = false;
                    continue;
                }
                // Canonical sorting puts the (single, folded) rational first,
                // so later children are never bare rationals.
                if (k.kind() == NodeKind::Mul && k.kid(0).is_rational() && k.kid(0).rat() < 0) {
                    std::vector<Expr> rest(k.kids().begin() + 1, k.kids().end());
                    out += st.minus + render_mul(rest, -k.kid(0).rat(), st);
                } else {
                    out += st.plus + render_node(k, st);
                }
            }
            return out;
        }
        case NodeKind::Mul: {
            const auto& kids = e.kids();
            if (!kids.empty() && kids[0].is_rational()) {
                std::vector<Expr> rest(kids.begin() + 1, kids.end());
                return render_mul(rest, kids[0].rat(), st);
            }
            return render_mul(kids, Rational(1), st);
        }
        case NodeKind::Pow: {
            const Expr& base = e.kid(0);
            const Expr& ex = e.kid(1);
            if (ex.is_rational_value(-1)) return "1/" + render_pow_base(base, st);
            return render_pow_base(base, st) + "^" + render_pow_exponent(ex, st);
        }
        case NodeKind::Exp: return "exp(" + render_node(e.kid(0), st) + ")";
        case NodeKind::Ln: return "ln(" + render_node(e.kid(0), st) + ")";
        case NodeKind::Sqrt: return "sqrt(" + render_node(e.kid(0), st) + ")";
        case NodeKind::Trig: return std::string(trig_name(e.trig_kind())) + "(" + render_node(e.kid(0), st) + ")";
        case NodeKind::ArcTrig:
            return std::string(arctrig_name(e.trig_kind())) + "(" + render_node(e.kid(0), st) + ")";
        case NodeKind::Hyp: return std::string(hyp_name(e.hyp_kind())) + "(" + render_node(e.kid(0), st) + ")";
    }
    return "?";
}

}  // namespace detail

inline std::string render(const Expr& e) {
    return detail::render_node(e, {" + ", " - "});
}

inline std::string render_compact(const Expr& e) {
    return detail::render_node(e, {"+", "-"});
}

}  // namespace arithmos
