// interval.hpp - arbitrary-precision real intervals with outward rounding.
//
// The enclosure contract: every operation returns an interval that contains
// the exact mathematical image of its argument intervals. MPFR supplies
// correctly rounded elementary functions with directed rounding; the case
// analysis here (monotonicity, extrema of sin/cos, zero exclusion for
// division) turns those into rigorous interval versions.
#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "arithmos/errors.hpp"
#include "arithmos/rational.hpp"

namespace arithmos {

// Minimal RAII value wrapper over mpfr_t.
class Mpfr {
public:
    explicit Mpfr(mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    Mpfr(const Mpfr& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Mpfr(Mpfr&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Mpfr& operator=(const Mpfr& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Mpfr& operator=(Mpfr&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Mpfr() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }

    // Exact: every finite MPFR number is a dyadic rational.
    Rational to_rational() const {
        mpq_t q;
        mpq_init(q);
        mpfr_get_q(q, v_);
        Rational r(q);
        mpq_clear(q);
        return r;
    }

    std::string str(std::size_t digits = 30) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", static_cast<int>(digits), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    mpfr_t v_;
};

inline int cmp(const Mpfr& a, const Mpfr& b) { return mpfr_cmp(a.get(), b.get()); }

class RealInterval {
public:
    explicit RealInterval(mpfr_prec_t prec = 64) : lo_(prec), hi_(prec), prec_(prec) {}

    static RealInterval exact_zero(mpfr_prec_t prec) { return from_long(0, prec); }

    static RealInterval from_long(long v, mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_set_si(r.lo_.get(), v, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), v, MPFR_RNDU);
        return r;
    }

    static RealInterval from_rational(const Rational& q, mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static RealInterval from_endpoints(Mpfr lo, Mpfr hi, mpfr_prec_t prec) {
        RealInterval r(prec);
        r.lo_ = std::move(lo);
        r.hi_ = std::move(hi);
        r.check();
        return r;
    }

    static RealInterval pi(mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_const_pi(r.lo_.get(), MPFR_RNDD);
        mpfr_const_pi(r.hi_.get(), MPFR_RNDU);
        return r;
    }

    const Mpfr& lo() const { return lo_; }
    const Mpfr& hi() const { return hi_; }
    mpfr_prec_t prec() const { return prec_; }

    bool is_exact() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }
    bool is_exact_zero() const { return is_exact() && mpfr_zero_p(lo_.get()); }
    bool contains_zero() const { return lo_.sign() <= 0 && hi_.sign() >= 0; }
    bool strictly_positive() const { return lo_.sign() > 0; }
    bool strictly_negative() const { return hi_.sign() < 0; }

    bool contains(const Rational& q) const {
        return mpfr_cmp_q(lo_.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), q.get_mpq_t()) >= 0;
    }

    Mpfr width() const {
        Mpfr w(prec_);
        mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
        return w;
    }

    Mpfr midpoint() const {
        Mpfr m(prec_);
        mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
        mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
        return m;
    }

    // Upper bound of |x| over the interval.
    Mpfr abs_upper() const {
        Mpfr a(prec_), b(prec_);
        mpfr_abs(a.get(), lo_.get(), MPFR_RNDU);
        mpfr_abs(b.get(), hi_.get(), MPFR_RNDU);
        if (mpfr_cmp(a.get(), b.get()) < 0) return b;
        return a;
    }

    // Lower bound of |x| over the interval (0 if it straddles zero).
    Mpfr abs_lower() const {
        Mpfr r(prec_);
        if (contains_zero()) {
            mpfr_set_zero(r.get(), 1);
            return r;
        }
        if (lo_.sign() > 0) mpfr_set(r.get(), lo_.get(), MPFR_RNDD);
        else mpfr_abs(r.get(), hi_.get(), MPFR_RNDD);
        return r;
    }

    RealInterval neg() const {
        RealInterval r(prec_);
        mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
        return r;
    }

    RealInterval add(const RealInterval& o) const {
        RealInterval r(prec_);
        mpfr_add(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_add(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        r.check();
        return r;
    }

    RealInterval sub(const RealInterval& o) const { return add(o.neg()); }

    RealInterval mul(const RealInterval& o) const {
        // Exact zero absorbs, keeping exact-real paths exact.
        if (is_exact_zero() || o.is_exact_zero()) return exact_zero(prec_);
        RealInterval r(prec_);
        Mpfr t(prec_);
        bool first = true;
        auto consider = [&](mpfr_srcptr a, mpfr_srcptr b) {
            mpfr_mul(t.get(), a, b, MPFR_RNDD);
            if (first || mpfr_cmp(t.get(), r.lo_.get()) < 0) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), a, b, MPFR_RNDU);
            if (first || mpfr_cmp(t.get(), r.hi_.get()) > 0) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
            first = false;
        };
        consider(lo_.get(), o.lo_.get());
        consider(lo_.get(), o.hi_.get());
        consider(hi_.get(), o.lo_.get());
        consider(hi_.get(), o.hi_.get());
        r.check();
        return r;
    }

    RealInterval recip() const {
        if (contains_zero()) throw PrecisionExhausted("interval reciprocal across zero");
        RealInterval r(prec_);
        mpfr_ui_div(r.lo_.get(), 1, hi_.get(), MPFR_RNDD);
        mpfr_ui_div(r.hi_.get(), 1, lo_.get(), MPFR_RNDU);
        r.check();
        return r;
    }

    RealInterval div(const RealInterval& o) const { return mul(o.recip()); }

    RealInterval sqr() const {
        RealInterval m = mul(*this);
        // x^2 >= 0 even when the interval straddles zero.
        if (contains_zero()) mpfr_set_zero(m.lo_.get(), 1);
        return m;
    }

    RealInterval sqrt() const {
        if (lo_.sign() < 0) throw DomainError("sqrt of a negative real interval");
        RealInterval r(prec_);
        mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
        mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
        r.check();
        return r;
    }

    RealInterval exp() const { return monotone_inc(mpfr_exp); }

    RealInterval log() const {
        if (lo_.sign() <= 0) throw PrecisionExhausted("log of an interval touching (-inf, 0]");
        return monotone_inc(mpfr_log);
    }

    RealInterval atan() const { return monotone_inc(mpfr_atan); }
    RealInterval sinh() const { return monotone_inc(mpfr_sinh); }
    RealInterval tanh() const { return monotone_inc(mpfr_tanh); }
    RealInterval asinh() const { return monotone_inc(mpfr_asinh); }

    RealInterval cosh() const {
        // Even, minimum at 0.
        RealInterval r(prec_);
        Mpfr a = abs_lower(), b = abs_upper();
        mpfr_cosh(r.lo_.get(), a.get(), MPFR_RNDD);
        mpfr_cosh(r.hi_.get(), b.get(), MPFR_RNDU);
        r.check();
        return r;
    }

    RealInterval asin() const {
        require_unit_domain("asin");
        return monotone_inc(mpfr_asin);
    }

    RealInterval acos() const {
        require_unit_domain("acos");
        RealInterval r(prec_);
        mpfr_acos(r.lo_.get(), hi_.get(), MPFR_RNDD);
        mpfr_acos(r.hi_.get(), lo_.get(), MPFR_RNDU);
        r.check();
        return r;
    }

    bool within_unit_domain() const {
        return mpfr_cmp_si(lo_.get(), -1) >= 0 && mpfr_cmp_si(hi_.get(), 1) <= 0;
    }

    RealInterval sin() const;
    RealInterval cos() const;

    // Binary powering; n may be negative (interval must then exclude zero).
    RealInterval pow_int(long n) const {
        if (n == 0) return from_long(1, prec_);
        bool inv = n < 0;
        unsigned long m = inv ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
        RealInterval acc = from_long(1, prec_);
        RealInterval base = *this;
        while (m) {
            if (m & 1) acc = acc.mul(base);
            base = base.sqr();
            m >>= 1;
        }
        return inv ? acc.recip() : acc;
    }

    RealInterval widen_to(const RealInterval& o) const {
        RealInterval r(prec_);
        mpfr_min(r.lo_.get(), lo_.get(), o.lo_.get(), MPFR_RNDD);
        mpfr_max(r.hi_.get(), hi_.get(), o.hi_.get(), MPFR_RNDU);
        return r;
    }

    bool intersects(const RealInterval& o) const {
        return mpfr_cmp(lo_.get(), o.hi_.get()) <= 0 && mpfr_cmp(o.lo_.get(), hi_.get()) <= 0;
    }

    bool contains_interval(const RealInterval& o) const {
        return mpfr_cmp(lo_.get(), o.lo_.get()) <= 0 && mpfr_cmp(o.hi_.get(), hi_.get()) <= 0;
    }

private:
    using MpfrUnary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

    RealInterval monotone_inc(MpfrUnary f) const {
        RealInterval r(prec_);
        f(r.lo_.get(), lo_.get(), MPFR_RNDD);
        f(r.hi_.get(), hi_.get(), MPFR_RNDU);
        r.check();
        return r;
    }

    void require_unit_domain(const char* what) const {
        if (!within_unit_domain()) throw DomainError(std::string(what) + " outside [-1, 1]");
    }

    void check() const {
        if (!lo_.is_finite() || !hi_.is_finite())
            throw PrecisionExhausted("interval endpoint overflowed");
        if (mpfr_cmp(lo_.get(), hi_.get()) > 0) throw Error("interval invariant violated");
    }

    Mpfr lo_, hi_;
    mpfr_prec_t prec_;
};

// cos over an interval: endpoint values plus +/-1 whenever a multiple of pi
// may fall inside. The multiple check is conservative, which only widens.
inline RealInterval RealInterval::cos() const {
    RealInterval r(prec_);
    Mpfr a(prec_), b(prec_), t(prec_);
    mpfr_cos(a.get(), lo_.get(), MPFR_RNDD);
    mpfr_cos(t.get(), hi_.get(), MPFR_RNDD);
    mpfr_min(r.lo_.get(), a.get(), t.get(), MPFR_RNDD);
    mpfr_cos(b.get(), lo_.get(), MPFR_RNDU);
    mpfr_cos(t.get(), hi_.get(), MPFR_RNDU);
    mpfr_max(r.hi_.get(), b.get(), t.get(), MPFR_RNDU);

    RealInterval q = div(pi(prec_));  // x / pi
    Mpfr qlo(prec_), qhi(prec_);
    mpfr_floor(qlo.get(), q.lo().get());
    mpfr_ceil(qhi.get(), q.hi().get());
    double span = mpfr_get_d(qhi.get(), MPFR_RNDU) - mpfr_get_d(qlo.get(), MPFR_RNDD);
    if (!q.lo().is_finite() || !q.hi().is_finite() || span > 8) {
        mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
        mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
        return r;
    }
    Mpfr n(prec_);
    mpfr_set(n.get(), qlo.get(), MPFR_RNDN);
    while (mpfr_cmp(n.get(), qhi.get()) <= 0) {
        // If n*pi may intersect [lo, hi], include the extremum for n's parity.
        if (mpfr_cmp(n.get(), q.lo().get()) >= 0 && mpfr_cmp(n.get(), q.hi().get()) <= 0) {
            Mpfr half(prec_);
            mpfr_div_2ui(half.get(), n.get(), 1, MPFR_RNDN);
            mpfr_floor(t.get(), half.get());
            bool even = mpfr_cmp(t.get(), half.get()) == 0;
            if (even) mpfr_set_si(r.hi_.get(), 1, MPFR_RNDU);
            else mpfr_set_si(r.lo_.get(), -1, MPFR_RNDD);
        }
        mpfr_add_si(n.get(), n.get(), 1, MPFR_RNDN);
    }
    r.check();
    return r;
}

inline RealInterval RealInterval::sin() const {
    if (is_exact_zero()) return exact_zero(prec_);
    // sin x = cos(x - pi/2); the pi/2 enclosure keeps this rigorous.
    RealInterval half_pi = pi(prec_);
    Mpfr hlo(prec_), hhi(prec_);
    mpfr_div_2ui(hlo.get(), half_pi.lo().get(), 1, MPFR_RNDD);
    mpfr_div_2ui(hhi.get(), half_pi.hi().get(), 1, MPFR_RNDU);
    return sub(RealInterval::from_endpoints(std::move(hlo), std::move(hhi), prec_)).cos();
}

}  // namespace arithmos
