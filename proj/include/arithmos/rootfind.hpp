// rootfind.hpp - numeric root approximation (Aberth-Ehrlich + Newton) and
// the outward-rounded Taylor-shift used by box certification. Nothing here
// is trusted on its own: every approximation is later certified exactly
// (Sturm counts on the real line, a Rouche-style disk test off it).
#pragma once

#include <cmath>
#include <vector>

#include "arithmos/ball.hpp"
#include "arithmos/interval.hpp"
#include "arithmos/polynomial.hpp"

namespace arithmos {

struct MpfrComplex {
    Mpfr re, im;

    explicit MpfrComplex(mpfr_prec_t p = 64) : re(p), im(p) {}

    static MpfrComplex from_doubles(double r, double i, mpfr_prec_t p) {
        MpfrComplex z(p);
        mpfr_set_d(z.re.get(), r, MPFR_RNDN);
        mpfr_set_d(z.im.get(), i, MPFR_RNDN);
        return z;
    }
};

namespace detail {

inline MpfrComplex cadd(const MpfrComplex& a, const MpfrComplex& b, mpfr_prec_t p) {
    MpfrComplex r(p);
    mpfr_add(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

inline MpfrComplex csub(const MpfrComplex& a, const MpfrComplex& b, mpfr_prec_t p) {
    MpfrComplex r(p);
    mpfr_sub(r.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_sub(r.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    return r;
}

inline MpfrComplex cmul(const MpfrComplex& a, const MpfrComplex& b, mpfr_prec_t p) {
    MpfrComplex r(p);
    Mpfr t1(p), t2(p);
    mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
    mpfr_sub(r.re.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
    mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
    mpfr_add(r.im.get(), t1.get(), t2.get(), MPFR_RNDN);
    return r;
}

inline Mpfr cabs2(const MpfrComplex& a, mpfr_prec_t p) {
    Mpfr t1(p), t2(p);
    mpfr_sqr(t1.get(), a.re.get(), MPFR_RNDN);
    mpfr_sqr(t2.get(), a.im.get(), MPFR_RNDN);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    return t1;
}

inline MpfrComplex cdiv(const MpfrComplex& a, const MpfrComplex& b, mpfr_prec_t p) {
    Mpfr n = cabs2(b, p);
    MpfrComplex conj(p);
    mpfr_set(conj.re.get(), b.re.get(), MPFR_RNDN);
    mpfr_neg(conj.im.get(), b.im.get(), MPFR_RNDN);
    MpfrComplex num = cmul(a, conj, p);
    MpfrComplex r(p);
    mpfr_div(r.re.get(), num.re.get(), n.get(), MPFR_RNDN);
    mpfr_div(r.im.get(), num.im.get(), n.get(), MPFR_RNDN);
    return r;
}

}  // namespace detail

// P(z) and P'(z) by a joint Horner pass.
inline std::pair<MpfrComplex, MpfrComplex> eval_with_derivative(const ZPoly& f, const MpfrComplex& z,
                                                                mpfr_prec_t p) {
    MpfrComplex v(p), d(p);
    for (std::size_t i = f.c.size(); i-- > 0;) {
        d = detail::cadd(detail::cmul(d, z, p), v, p);
        MpfrComplex ci(p);
        mpfr_set_z(ci.re.get(), f.c[i].get_mpz_t(), MPFR_RNDN);
        v = detail::cadd(detail::cmul(v, z, p), ci, p);
    }
    return {v, d};
}

// Simultaneous root approximation for a squarefree polynomial. Returns
// deg(f) points; accuracy is best-effort (certification happens elsewhere).
inline std::vector<MpfrComplex> aberth_roots(const ZPoly& f, mpfr_prec_t p) {
    int n = f.degree();
    std::vector<MpfrComplex> z;
    if (n <= 0) return z;
    if (n == 1) {
        MpfrComplex r(p);
        Rational root = make_rational(Integer(-f.c[0]), f.c[1]);
        mpfr_set_q(r.re.get(), root.get_mpq_t(), MPFR_RNDN);
        return {r};
    }
    double radius = mpq_get_d(cauchy_bound(f).get_mpq_t());
    if (!(radius > 0) || radius > 1e280) radius = 1e280;
    z.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double th = 6.283185307179586 * k / n + 0.43;
        z.push_back(MpfrComplex::from_doubles(0.7 * radius * std::cos(th), 0.7 * radius * std::sin(th), p));
    }
    Mpfr eps(p), t(p);
    mpfr_set_ui_2exp(eps.get(), 1, -(p - 12), MPFR_RNDN);
    int max_iter = 80 + 6 * n;
    for (int iter = 0; iter < max_iter; ++iter) {
        bool done = true;
        for (int i = 0; i < n; ++i) {
            auto [v, d] = eval_with_derivative(f, z[static_cast<std::size_t>(i)], p);
            if (mpfr_zero_p(v.re.get()) && mpfr_zero_p(v.im.get())) continue;
            MpfrComplex newton = detail::cdiv(v, d, p);
            MpfrComplex s(p);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                MpfrComplex diff = detail::csub(z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)], p);
                Mpfr d2 = detail::cabs2(diff, p);
                if (mpfr_zero_p(d2.get())) {
                    // Collided points: nudge.
                    mpfr_set_d(diff.re.get(), 1e-3 * (i + 1), MPFR_RNDN);
                    mpfr_set_d(diff.im.get(), 1e-3, MPFR_RNDN);
                }
                MpfrComplex one(p);
                mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
                s = detail::cadd(s, detail::cdiv(one, diff, p), p);
            }
            MpfrComplex one(p);
            mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
            MpfrComplex denom = detail::csub(one, detail::cmul(newton, s, p), p);
            Mpfr dn = detail::cabs2(denom, p);
            MpfrComplex w = mpfr_zero_p(dn.get()) ? newton : detail::cdiv(newton, denom, p);
            z[static_cast<std::size_t>(i)] = detail::csub(z[static_cast<std::size_t>(i)], w, p);
            // Relative step size check.
            Mpfr wn = detail::cabs2(w, p);
            Mpfr zn = detail::cabs2(z[static_cast<std::size_t>(i)], p);
            mpfr_add_ui(zn.get(), zn.get(), 1, MPFR_RNDN);
            mpfr_mul(t.get(), eps.get(), eps.get(), MPFR_RNDN);
            mpfr_mul(t.get(), t.get(), zn.get(), MPFR_RNDN);
            if (mpfr_cmp(wn.get(), t.get()) > 0) done = false;
        }
        if (done) break;
    }
    return z;
}

// Newton polish keeping the iterate complex.
inline MpfrComplex newton_polish(const ZPoly& f, const MpfrComplex& start, mpfr_prec_t p, int iters) {
    MpfrComplex z(p);
    mpfr_set(z.re.get(), start.re.get(), MPFR_RNDN);
    mpfr_set(z.im.get(), start.im.get(), MPFR_RNDN);
    for (int k = 0; k < iters; ++k) {
        auto [v, d] = eval_with_derivative(f, z, p);
        Mpfr dn = detail::cabs2(d, p);
        if (mpfr_zero_p(dn.get())) break;
        z = detail::csub(z, detail::cdiv(v, d, p), p);
    }
    return z;
}

// Newton polish constrained to the real axis.
inline Mpfr newton_polish_real(const ZPoly& f, const Mpfr& start, mpfr_prec_t p, int iters) {
    Mpfr x(p);
    mpfr_set(x.get(), start.get(), MPFR_RNDN);
    Mpfr v(p), d(p), t(p);
    for (int k = 0; k < iters; ++k) {
        mpfr_set_zero(v.get(), 1);
        mpfr_set_zero(d.get(), 1);
        for (std::size_t i = f.c.size(); i-- > 0;) {
            mpfr_mul(d.get(), d.get(), x.get(), MPFR_RNDN);
            mpfr_add(d.get(), d.get(), v.get(), MPFR_RNDN);
            mpfr_mul(v.get(), v.get(), x.get(), MPFR_RNDN);
            mpfr_set_z(t.get(), f.c[i].get_mpz_t(), MPFR_RNDN);
            mpfr_add(v.get(), v.get(), t.get(), MPFR_RNDN);
        }
        if (mpfr_zero_p(d.get())) break;
        mpfr_div(t.get(), v.get(), d.get(), MPFR_RNDN);
        mpfr_sub(x.get(), x.get(), t.get(), MPFR_RNDN);
    }
    return x;
}

// Outward-rounded Taylor coefficients of f at the rational point c:
// returns enclosures of f(c + t)'s coefficients in t.
inline std::vector<ComplexRect> taylor_coefficients(const ZPoly& f, const Rational& c_re, const Rational& c_im,
                                                    mpfr_prec_t p) {
    std::size_t n = f.c.size();
    ComplexRect c(RealInterval::from_rational(c_re, p), RealInterval::from_rational(c_im, p));
    std::vector<ComplexRect> b;
    b.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational ci(f.c[i]);
        b.push_back(ComplexRect::from_rational(ci, p));
    }
    // In-place synthetic shifts.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        for (std::size_t j = n - 1; j-- > k;) {
            b[j] = b[j].add(c.mul(b[j + 1]));
        }
    }
    return b;
}

}  // namespace arithmos
