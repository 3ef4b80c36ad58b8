// canonical.hpp - canonical form for Expr trees.
//
// Canonicalization is idempotent and purely structural: it folds rational
// arithmetic exactly, applies the identity folds that are exact for
// principal branches, flattens and sorts Add/Mul, and desugars nothing
// else. Rule pattern matching elsewhere assumes inputs in this form.
#pragma once

#include <algorithm>
#include <vector>

#include "arithmos/errors.hpp"
#include "arithmos/expr.hpp"

namespace arithmos {

Expr canonicalize(const Expr& e);

namespace detail {

// Folding 2^e style literal powers is capped so canonicalization stays cheap;
// larger powers are kept symbolic.
inline bool pow_fold_within_caps(const Rational& base, long e) {
    unsigned long mag = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    if (mag > 1024) return false;
    return bit_size(base) * mag <= 8192;
}

inline Expr canonical_add(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    Rational acc(0);
    for (auto& k : kids) {
        if (k.kind() == NodeKind::Add) {
            for (const auto& g : k.kids()) {
                if (g.is_rational()) acc += g.rat();
                else flat.push_back(g);
            }
        } else if (k.is_rational()) {
            acc += k.rat();
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (acc != 0 || flat.empty()) flat.push_back(Expr::rational(acc));
    std::sort(flat.begin(), flat.end());
    if (flat.size() == 1) return flat[0];
    return Expr::add(std::move(flat));
}

inline Expr canonical_mul(std::vector<Expr> kids) {
    std::vector<Expr> flat;
    Rational acc(1);
    for (auto& k : kids) {
        if (k.kind() == NodeKind::Mul) {
            for (const auto& g : k.kids()) {
                if (g.is_rational()) acc *= g.rat();
                else flat.push_back(g);
            }
        } else if (k.is_rational()) {
            acc *= k.rat();
        } else {
            flat.push_back(std::move(k));
        }
    }
    if (acc == 0) return Expr::rational(Rational(0));
    if (acc != 1 || flat.empty()) flat.push_back(Expr::rational(acc));
    std::sort(flat.begin(), flat.end());
    if (flat.size() == 1) return flat[0];
    return Expr::mul(std::move(flat));
}

inline Expr canonical_pow(Expr base, Expr exp) {
    // e^u is exp(u) on the principal branch (ln e = 1).
    if (base.is_const(ConstKind::E)) return Expr::exp(std::move(exp));
    if (exp.is_rational()) {
        const Rational& r = exp.rat();
        if (r == 1) return base;
        if (r == 0) {
            // z^0 folds only for provably nonzero bases.
            if (base.is_rational() && base.rat() != 0) return Expr::integer(1);
            return Expr::pow(std::move(base), std::move(exp));
        }
        if (r == make_rational(1, 2)) return Expr::sqrt(std::move(base));
        if (base.is_rational() && is_integer(r) && r.get_num().fits_slong_p()) {
            long n = r.get_num().get_si();
            if (base.rat() == 0) {
                if (n < 0) throw DomainError("0 raised to a negative power");
                return Expr::rational(Rational(0));  // n >= 2 here
            }
            if (pow_fold_within_caps(base.rat(), n)) return Expr::rational(pow_rational(base.rat(), n));
        }
    }
    return Expr::pow(std::move(base), std::move(exp));
}

inline Expr canonical_trig(TrigKind k, Expr arg) {
    if (arg.is_rational_value(0)) {
        switch (k) {
            case TrigKind::Sin: return Expr::integer(0);
            case TrigKind::Cos: return Expr::integer(1);
            case TrigKind::Tan: return Expr::integer(0);
            case TrigKind::Sec: return Expr::integer(1);
            case TrigKind::Csc: throw DomainError("csc(0) is undefined");
            case TrigKind::Cot: throw DomainError("cot(0) is undefined");
        }
    }
    return Expr::trig(k, std::move(arg));
}

inline Expr canonical_hyp(HypKind k, Expr arg) {
    if (arg.is_rational_value(0)) {
        switch (k) {
            case HypKind::Sinh: return Expr::integer(0);
            case HypKind::Cosh: return Expr::integer(1);
            case HypKind::Tanh: return Expr::integer(0);
        }
    }
    return Expr::hyp(k, std::move(arg));
}

}  // namespace detail

inline Expr canonicalize(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Rational:
        case NodeKind::Constant: return e;
        case NodeKind::Add: {
            std::vector<Expr> kids;
            kids.reserve(e.arity());
            for (const auto& k : e.kids()) kids.push_back(canonicalize(k));
            return detail::canonical_add(std::move(kids));
        }
        case NodeKind::Mul: {
            std::vector<Expr> kids;
            kids.reserve(e.arity());
            for (const auto& k : e.kids()) kids.push_back(canonicalize(k));
            return detail::canonical_mul(std::move(kids));
        }
        case NodeKind::Pow: return detail::canonical_pow(canonicalize(e.kid(0)), canonicalize(e.kid(1)));
        case NodeKind::Exp: {
            Expr a = canonicalize(e.kid(0));
            if (a.is_rational_value(0)) return Expr::integer(1);
            return Expr::exp(std::move(a));
        }
        case NodeKind::Ln: {
            Expr a = canonicalize(e.kid(0));
            if (a.is_rational_value(0)) throw DomainError("ln(0) is undefined");
            if (a.is_rational_value(1)) return Expr::integer(0);
            return Expr::ln(std::move(a));
        }
        case NodeKind::Sqrt: return Expr::sqrt(canonicalize(e.kid(0)));
        case NodeKind::Trig: return detail::canonical_trig(e.trig_kind(), canonicalize(e.kid(0)));
        case NodeKind::ArcTrig: return Expr::arctrig(e.trig_kind(), canonicalize(e.kid(0)));
        case NodeKind::Hyp: return detail::canonical_hyp(e.hyp_kind(), canonicalize(e.kid(0)));
    }
    throw Error("unreachable node kind");
}

// Convenience constructors for synthesized expressions (already-canonical inputs).
inline Expr c_add(const Expr& a, const Expr& b) { return canonicalize(Expr::add({a, b})); }
inline Expr c_mul(const Expr& a, const Expr& b) { return canonicalize(Expr::mul({a, b})); }
inline Expr c_neg(const Expr& a) { return c_mul(Expr::integer(-1), a); }
inline Expr c_sub(const Expr& a, const Expr& b) { return c_add(a, c_neg(b)); }
inline Expr c_div(const Expr& a, const Expr& b) {
    return canonicalize(Expr::mul({a, Expr::pow(b, Expr::integer(-1))}));
}

}  // namespace arithmos
