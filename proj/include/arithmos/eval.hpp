// eval.hpp - rigorous evaluation of Expr over complex rectangles/balls,
// plus sound nonvanishing certification with geometric precision escalation.
#pragma once

#include <optional>

#include "arithmos/ball.hpp"
#include "arithmos/canonical.hpp"
#include "arithmos/expr.hpp"

namespace arithmos {

inline ComplexRect eval_rect(const Expr& e, mpfr_prec_t prec) {
    switch (e.kind()) {
        case NodeKind::Rational: return ComplexRect::from_rational(e.rat(), prec);
        case NodeKind::Constant:
            switch (e.const_kind()) {
                case ConstKind::E: return ComplexRect::real(RealInterval::from_long(1, prec).exp());
                case ConstKind::Pi: return ComplexRect::real(RealInterval::pi(prec));
                case ConstKind::I: return ComplexRect::imaginary_unit(prec);
            }
            break;
        case NodeKind::Add: {
            ComplexRect acc = eval_rect(e.kid(0), prec);
            for (std::size_t i = 1; i < e.arity(); ++i) acc = acc.add(eval_rect(e.kid(i), prec));
            return acc;
        }
        case NodeKind::Mul: {
            ComplexRect acc = eval_rect(e.kid(0), prec);
            for (std::size_t i = 1; i < e.arity(); ++i) acc = acc.mul(eval_rect(e.kid(i), prec));
            return acc;
        }
        case NodeKind::Pow: {
            ComplexRect base = eval_rect(e.kid(0), prec);
            const Expr& ex = e.kid(1);
            if (ex.is_rational()) {
                const Rational& r = ex.rat();
                if (base.is_exact_zero()) {
                    if (r > 0) return ComplexRect::from_long(0, prec);
                    throw DomainError("0 raised to a non-positive power");
                }
                if (is_integer(r) && r.get_num().fits_slong_p()) return base.pow_int(r.get_num().get_si());
                if (base.is_exact_real() && base.re().strictly_positive()) {
                    // Positive real base, rational exponent: stay on the real line.
                    RealInterval ri = RealInterval::from_rational(r, prec);
                    return ComplexRect::real(base.re().log().mul(ri).exp());
                }
                return base.pow(ComplexRect::from_rational(r, prec));
            }
            return base.pow(eval_rect(ex, prec));
        }
        case NodeKind::Exp: return eval_rect(e.kid(0), prec).exp();
        case NodeKind::Ln: {
            ComplexRect a = eval_rect(e.kid(0), prec);
            if (a.is_exact_real() && a.re().strictly_positive())
                return ComplexRect::real(a.re().log());
            return a.log();
        }
        case NodeKind::Sqrt: return eval_rect(e.kid(0), prec).sqrt();
        case NodeKind::Trig: {
            ComplexRect a = eval_rect(e.kid(0), prec);
            switch (e.trig_kind()) {
                case TrigKind::Sin: return a.sin();
                case TrigKind::Cos: return a.cos();
                case TrigKind::Tan: return a.sin().div(a.cos());
                case TrigKind::Sec: return a.cos().recip();
                case TrigKind::Csc: return a.sin().recip();
                case TrigKind::Cot: return a.cos().div(a.sin());
            }
            break;
        }
        case NodeKind::ArcTrig: {
            ComplexRect a = eval_rect(e.kid(0), prec);
            switch (e.trig_kind()) {
                case TrigKind::Sin: return a.asin();
                case TrigKind::Cos: return a.acos();
                case TrigKind::Tan: return a.atan();
                case TrigKind::Sec: return a.asec();
                case TrigKind::Csc: return a.acsc();
                case TrigKind::Cot: return a.acot();
            }
            break;
        }
        case NodeKind::Hyp: {
            ComplexRect a = eval_rect(e.kid(0), prec);
            switch (e.hyp_kind()) {
                case HypKind::Sinh: return a.sinh();
                case HypKind::Cosh: return a.cosh();
                case HypKind::Tanh: return a.tanh();
            }
            break;
        }
    }
    throw Error("unreachable node kind in eval");
}

// Rigorous ball containing the value of e, principal branches throughout.
inline ComplexBall eval_ball(const Expr& e, mpfr_prec_t precision_bits) {
    return eval_rect(e, precision_bits).to_ball();
}

constexpr mpfr_prec_t kStartPrecision = 64;
constexpr mpfr_prec_t kMaxPrecision = 65536;  // 2^16

struct NonzeroCertification {
    bool nonzero = false;
    mpfr_prec_t precision_bits = 0;  // precision at which zero was excluded
};

// NONZERO iff some enclosure at precision <= max excludes 0. Never claims
// zero; exact zeros always come back INCONCLUSIVE (nonzero == false).
inline NonzeroCertification certify_nonzero(const Expr& e, mpfr_prec_t max_precision_bits = kMaxPrecision) {
    for (mpfr_prec_t p = kStartPrecision; p <= max_precision_bits; p *= 2) {
        try {
            ComplexRect r = eval_rect(e, p);
            if (!r.re().contains_zero() || !r.im().contains_zero()) return {true, p};
        } catch (const PrecisionExhausted&) {
            // widen and retry
        }
    }
    return {false, 0};
}

// Escalates precision until the enclosure radius drops below 2^-target_bits
// (or the ceiling is hit).
inline ComplexRect eval_rect_to_radius(const Expr& e, long target_bits,
                                       mpfr_prec_t max_precision_bits = kMaxPrecision) {
    for (mpfr_prec_t p = kStartPrecision; p <= max_precision_bits; p *= 2) {
        try {
            ComplexRect r = eval_rect(e, p);
            Mpfr wr = r.re().width(), wi = r.im().width();
            Mpfr bound(p);
            mpfr_set_ui_2exp(bound.get(), 1, -target_bits, MPFR_RNDN);
            if (mpfr_cmp(wr.get(), bound.get()) <= 0 && mpfr_cmp(wi.get(), bound.get()) <= 0) return r;
        } catch (const PrecisionExhausted&) {
        }
    }
    throw PrecisionExhausted("could not reach requested enclosure radius");
}

}  // namespace arithmos
