// ball.hpp - rigorous complex arithmetic: rectangles internally, balls at the API.
//
// A ComplexRect is a pair of real intervals (re, im). Exact-real
// subexpressions keep im == [0,0] through every operation, which is what
// lets principal-branch decisions on the cut (ln of a negative rational,
// principal sqrt of a negative real) come out exact. ComplexBall is the
// published center+radius view, produced by outward conversion.
#pragma once

#include <utility>

#include "arithmos/interval.hpp"

namespace arithmos {

struct ComplexBall {
    Mpfr center_re, center_im, radius;

    bool contains_zero_excluded() const {
        // |center| > radius, all rounded against the claim.
        mpfr_prec_t p = center_re.prec();
        Mpfr a(p), b(p), n(p);
        mpfr_sqr(a.get(), center_re.get(), MPFR_RNDD);
        mpfr_sqr(b.get(), center_im.get(), MPFR_RNDD);
        mpfr_add(n.get(), a.get(), b.get(), MPFR_RNDD);
        mpfr_sqrt(n.get(), n.get(), MPFR_RNDD);
        return mpfr_cmp(n.get(), radius.get()) > 0;
    }
};

class ComplexRect {
public:
    ComplexRect(RealInterval re, RealInterval im) : re_(std::move(re)), im_(std::move(im)) {}

    static ComplexRect from_rational(const Rational& q, mpfr_prec_t prec) {
        return {RealInterval::from_rational(q, prec), RealInterval::exact_zero(prec)};
    }
    static ComplexRect from_long(long v, mpfr_prec_t prec) {
        return {RealInterval::from_long(v, prec), RealInterval::exact_zero(prec)};
    }
    static ComplexRect real(RealInterval re) {
        mpfr_prec_t p = re.prec();
        return {std::move(re), RealInterval::exact_zero(p)};
    }
    static ComplexRect imaginary_unit(mpfr_prec_t prec) {
        return {RealInterval::exact_zero(prec), RealInterval::from_long(1, prec)};
    }

    const RealInterval& re() const { return re_; }
    const RealInterval& im() const { return im_; }
    mpfr_prec_t prec() const { return re_.prec(); }

    bool is_exact_real() const { return im_.is_exact_zero(); }
    bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
    bool is_exact_zero() const { return re_.is_exact_zero() && im_.is_exact_zero(); }

    ComplexRect neg() const { return {re_.neg(), im_.neg()}; }
    ComplexRect add(const ComplexRect& o) const { return {re_.add(o.re_), im_.add(o.im_)}; }
    ComplexRect sub(const ComplexRect& o) const { return {re_.sub(o.re_), im_.sub(o.im_)}; }

    ComplexRect mul(const ComplexRect& o) const {
        return {re_.mul(o.re_).sub(im_.mul(o.im_)), re_.mul(o.im_).add(im_.mul(o.re_))};
    }

    ComplexRect mul_i() const { return {im_.neg(), re_}; }

    ComplexRect div(const ComplexRect& o) const {
        RealInterval n = o.re_.sqr().add(o.im_.sqr());
        if (n.contains_zero()) throw PrecisionExhausted("complex division by a rectangle containing zero");
        RealInterval rr = re_.mul(o.re_).add(im_.mul(o.im_)).div(n);
        RealInterval ii = im_.mul(o.re_).sub(re_.mul(o.im_)).div(n);
        return {std::move(rr), std::move(ii)};
    }

    ComplexRect recip() const { return from_long(1, prec()).div(*this); }

    // |z| as a real interval.
    RealInterval abs() const { return re_.sqr().add(im_.sqr()).sqrt(); }

    ComplexRect exp() const {
        RealInterval ex = re_.exp();
        return {ex.mul(im_.cos()), ex.mul(im_.sin())};
    }

    // Principal argument, in [-pi, pi]. Exact-real negative inputs give the
    // branch value +pi; rectangles containing 0 are rejected.
    RealInterval arg() const {
        mpfr_prec_t p = prec();
        if (im_.is_exact_zero()) {
            if (re_.strictly_positive()) return RealInterval::exact_zero(p);
            if (re_.strictly_negative()) return RealInterval::pi(p);
            throw PrecisionExhausted("argument of a rectangle containing zero");
        }
        if (re_.strictly_positive()) return im_.div(re_).atan();
        if (im_.strictly_positive()) {
            RealInterval half = half_pi(p);
            return half.sub(re_.div(im_).atan());
        }
        if (im_.strictly_negative()) {
            RealInterval half = half_pi(p);
            return half.neg().sub(re_.div(im_).atan());
        }
        if (re_.strictly_negative()) {
            // Straddles the branch cut without being exactly on it.
            RealInterval wide = RealInterval::pi(p);
            return wide.neg().widen_to(wide);
        }
        throw PrecisionExhausted("argument of a rectangle containing zero");
    }

    ComplexRect log() const {
        if (is_exact_zero()) throw DomainError("ln(0) is undefined");
        RealInterval r = abs();
        if (r.contains_zero()) throw PrecisionExhausted("log of a rectangle containing zero");
        return {r.log(), arg()};
    }

    ComplexRect sqrt() const {
        mpfr_prec_t p = prec();
        if (im_.is_exact_zero()) {
            if (re_.lo().sign() >= 0) return real(re_.sqrt());
            if (re_.hi().sign() <= 0) return {RealInterval::exact_zero(p), re_.neg().sqrt()};
            // Real interval straddling zero: principal values live on both axes.
            Mpfr z(p);
            mpfr_set_zero(z.get(), 1);
            Mpfr pos(p), negp(p);
            mpfr_sqrt(pos.get(), re_.hi().get(), MPFR_RNDU);
            Mpfr nlo(p);
            mpfr_neg(nlo.get(), re_.lo().get(), MPFR_RNDU);
            mpfr_sqrt(negp.get(), nlo.get(), MPFR_RNDU);
            return {RealInterval::from_endpoints(z, pos, p),
                    RealInterval::from_endpoints(Mpfr(p), negp, p)};
        }
        if (contains_zero()) {
            // Enclose by the principal-quadrant square of radius sqrt(sup|z|).
            Mpfr m = abs().abs_upper();
            Mpfr s(p);
            mpfr_sqrt(s.get(), m.get(), MPFR_RNDU);
            Mpfr ns(p), z(p);
            mpfr_neg(ns.get(), s.get(), MPFR_RNDD);
            mpfr_set_zero(z.get(), 1);
            return {RealInterval::from_endpoints(z, s, p),
                    RealInterval::from_endpoints(std::move(ns), std::move(s), p)};
        }
        ComplexRect half_log = log();
        return ComplexRect(half_log.re_.mul(half_i(p)), half_log.im_.mul(half_i(p))).exp();
    }

    ComplexRect sin() const {
        return {re_.sin().mul(im_.cosh()), re_.cos().mul(im_.sinh())};
    }
    ComplexRect cos() const {
        return {re_.cos().mul(im_.cosh()), re_.sin().mul(im_.sinh()).neg()};
    }
    ComplexRect tan() const { return sin().div(cos()); }

    ComplexRect sinh() const {
        return {re_.sinh().mul(im_.cos()), re_.cosh().mul(im_.sin())};
    }
    ComplexRect cosh() const {
        return {re_.cosh().mul(im_.cos()), re_.sinh().mul(im_.sin())};
    }
    ComplexRect tanh() const { return sinh().div(cosh()); }

    // z^n for integer n via binary powering.
    ComplexRect pow_int(long n) const {
        mpfr_prec_t p = prec();
        if (n == 0) return from_long(1, p);
        bool inv = n < 0;
        unsigned long m = inv ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
        ComplexRect acc = from_long(1, p);
        ComplexRect base = *this;
        while (m) {
            if (m & 1) acc = acc.mul(base);
            base = base.mul(base);
            m >>= 1;
        }
        return inv ? acc.recip() : acc;
    }

    ComplexRect pow(const ComplexRect& w) const { return log().mul(w).exp(); }

    // Principal inverse trigonometric/hyperbolic family. Real arguments in
    // the real domain take exact real paths; the rest go through the
    // standard principal log formulas.
    ComplexRect asin() const {
        mpfr_prec_t p = prec();
        if (im_.is_exact_zero() && re_.within_unit_domain()) return real(re_.asin());
        ComplexRect one = from_long(1, p);
        ComplexRect root = one.sub(mul(*this)).sqrt();
        return mul_i().add(root).log().mul_i().neg();
    }

    ComplexRect acos() const {
        mpfr_prec_t p = prec();
        if (im_.is_exact_zero() && re_.within_unit_domain()) return real(re_.acos());
        RealInterval half = half_pi(p);
        return real(half).sub(asin());
    }

    ComplexRect atan() const {
        mpfr_prec_t p = prec();
        if (im_.is_exact_zero()) return real(re_.atan());
        ComplexRect one = from_long(1, p);
        ComplexRect iz = mul_i();
        // (i/2) * (ln(1 - iz) - ln(1 + iz))
        ComplexRect diff = one.sub(iz).log().sub(one.add(iz).log());
        ComplexRect half(RealInterval::exact_zero(p), half_i(p));
        return diff.mul(half);
    }

    ComplexRect asec() const { return recip().acos(); }
    ComplexRect acsc() const { return recip().asin(); }

    ComplexRect acot() const {
        mpfr_prec_t p = prec();
        if (im_.is_exact_zero() && re_.is_exact_zero()) return real(half_pi(p));
        return recip().atan();
    }

    ComplexBall to_ball() const {
        mpfr_prec_t p = prec();
        ComplexBall b{Mpfr(p), Mpfr(p), Mpfr(p)};
        b.center_re = re_.midpoint();
        b.center_im = im_.midpoint();
        Mpfr dr(p), di(p), t(p);
        // Half-widths measured from the rounded midpoints, rounded up.
        mpfr_sub(dr.get(), re_.hi().get(), b.center_re.get(), MPFR_RNDU);
        mpfr_sub(t.get(), b.center_re.get(), re_.lo().get(), MPFR_RNDU);
        mpfr_max(dr.get(), dr.get(), t.get(), MPFR_RNDU);
        mpfr_sub(di.get(), im_.hi().get(), b.center_im.get(), MPFR_RNDU);
        mpfr_sub(t.get(), b.center_im.get(), im_.lo().get(), MPFR_RNDU);
        mpfr_max(di.get(), di.get(), t.get(), MPFR_RNDU);
        mpfr_sqr(dr.get(), dr.get(), MPFR_RNDU);
        mpfr_sqr(di.get(), di.get(), MPFR_RNDU);
        mpfr_add(t.get(), dr.get(), di.get(), MPFR_RNDU);
        mpfr_sqrt(b.radius.get(), t.get(), MPFR_RNDU);
        return b;
    }

private:
    static RealInterval half_pi(mpfr_prec_t p) {
        RealInterval pi_iv = RealInterval::pi(p);
        Mpfr lo(p), hi(p);
        mpfr_div_2ui(lo.get(), pi_iv.lo().get(), 1, MPFR_RNDD);
        mpfr_div_2ui(hi.get(), pi_iv.hi().get(), 1, MPFR_RNDU);
        return RealInterval::from_endpoints(std::move(lo), std::move(hi), p);
    }

    static RealInterval half_i(mpfr_prec_t p) {
        return RealInterval::from_rational(make_rational(1, 2), p);
    }

    RealInterval re_, im_;
};

}  // namespace arithmos
