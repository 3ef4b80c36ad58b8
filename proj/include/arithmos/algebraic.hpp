// algebraic.hpp - exact algebraic numbers: primitive irreducible integer
// minimal polynomial plus a certified isolating box.
//
// Box invariants:
//   * the box contains exactly one root of the minimal polynomial;
//   * that root lies within halfwidth/2 of the box center (margin used by
//     the equality protocol);
//   * real roots carry degenerate im == [0,0] boxes (certified by Sturm
//     counts), so downstream rectangle evaluation keeps exact branch cuts.
//
// Composite operations (sum/product/sqrt/rational powers) go through:
// resultant or transform composition -> squarefree part -> certified
// isolation of all roots -> enclosure-driven selection -> minimal integer
// factor reconstruction (conjugate clusters + exact division). Values built
// from rationals, i, and square roots of rationals additionally carry exact
// multiquadratic coordinates, which both speeds the common tower cases and
// feeds the Q-linear-independence guard.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithmos/ball.hpp"
#include "arithmos/expr.hpp"
#include "arithmos/multiquad.hpp"
#include "arithmos/polynomial.hpp"
#include "arithmos/relation.hpp"
#include "arithmos/rootfind.hpp"

namespace arithmos {

struct DegreeCapConfig {
    int max_degree = 24;
    std::size_t max_coeff_bits = 4096;
};

// Work bound for intermediate compositions (before factoring back down).
constexpr int kComposeDegreeBound = 64;

struct Box {
    Rational re_lo, re_hi, im_lo, im_hi;

    static Box point(const Rational& re, const Rational& im) { return {re, re, im, im}; }

    Rational center_re() const { return (re_lo + re_hi) / 2; }
    Rational center_im() const { return (im_lo + im_hi) / 2; }
    Rational halfwidth() const {
        Rational wr = (re_hi - re_lo) / 2, wi = (im_hi - im_lo) / 2;
        return wr > wi ? wr : wi;
    }
    bool is_point() const { return re_lo == re_hi && im_lo == im_hi; }
    bool is_real_line() const { return im_lo == 0 && im_hi == 0; }
    bool contains_zero() const { return re_lo <= 0 && re_hi >= 0 && im_lo <= 0 && im_hi >= 0; }

    bool disjoint(const Box& o) const {
        return re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo;
    }
    bool contains(const Box& o) const {
        return re_lo <= o.re_lo && o.re_hi <= re_hi && im_lo <= o.im_lo && o.im_hi <= im_hi;
    }
    bool intersects(const Box& o) const { return !disjoint(o); }

    ComplexRect to_rect(mpfr_prec_t p) const {
        Mpfr rlo(p), rhi(p), ilo(p), ihi(p);
        mpfr_set_q(rlo.get(), re_lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(rhi.get(), re_hi.get_mpq_t(), MPFR_RNDU);
        mpfr_set_q(ilo.get(), im_lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(ihi.get(), im_hi.get_mpq_t(), MPFR_RNDU);
        return {RealInterval::from_endpoints(std::move(rlo), std::move(rhi), p),
                RealInterval::from_endpoints(std::move(ilo), std::move(ihi), p)};
    }

    static Box from_rect(const ComplexRect& r) {
        return {r.re().lo().to_rational(), r.re().hi().to_rational(),
                r.im().lo().to_rational(), r.im().hi().to_rational()};
    }

    // Exact complex rectangle arithmetic over rationals.
    static Box add(const Box& a, const Box& b) {
        return {a.re_lo + b.re_lo, a.re_hi + b.re_hi, a.im_lo + b.im_lo, a.im_hi + b.im_hi};
    }
    static Box negate(const Box& a) { return {-a.re_hi, -a.re_lo, -a.im_hi, -a.im_lo}; }
    static Box shift(const Box& a, const Rational& r) {
        return {a.re_lo + r, a.re_hi + r, a.im_lo, a.im_hi};
    }
    static Box scale(const Box& a, const Rational& r) {
        if (r >= 0) return {a.re_lo * r, a.re_hi * r, a.im_lo * r, a.im_hi * r};
        return {a.re_hi * r, a.re_lo * r, a.im_hi * r, a.im_lo * r};
    }
    static Box mul(const Box& a, const Box& b) {
        auto mm = [](const Rational& lo1, const Rational& hi1, const Rational& lo2, const Rational& hi2) {
            Rational v1 = lo1 * lo2, v2 = lo1 * hi2, v3 = hi1 * lo2, v4 = hi1 * hi2;
            Rational lo = std::min(std::min(v1, v2), std::min(v3, v4));
            Rational hi = std::max(std::max(v1, v2), std::max(v3, v4));
            return std::make_pair(lo, hi);
        };
        auto [ac_lo, ac_hi] = mm(a.re_lo, a.re_hi, b.re_lo, b.re_hi);
        auto [bd_lo, bd_hi] = mm(a.im_lo, a.im_hi, b.im_lo, b.im_hi);
        auto [ad_lo, ad_hi] = mm(a.re_lo, a.re_hi, b.im_lo, b.im_hi);
        auto [bc_lo, bc_hi] = mm(a.im_lo, a.im_hi, b.re_lo, b.re_hi);
        return {ac_lo - bd_hi, ac_hi - bd_lo, ad_lo + bc_lo, ad_hi + bc_hi};
    }
    static Box recip(const Box& a) {
        // 1/z = conj(z) / |z|^2; requires the box to exclude zero.
        auto sqr_iv = [](const Rational& lo, const Rational& hi) {
            Rational l2 = lo * lo, h2 = hi * hi;
            Rational mx = std::max(l2, h2);
            Rational mn = (lo <= 0 && hi >= 0) ? Rational(0) : std::min(l2, h2);
            return std::make_pair(mn, mx);
        };
        auto [x2_lo, x2_hi] = sqr_iv(a.re_lo, a.re_hi);
        auto [y2_lo, y2_hi] = sqr_iv(a.im_lo, a.im_hi);
        Rational n_lo = x2_lo + y2_lo, n_hi = x2_hi + y2_hi;
        if (n_lo <= 0) throw PrecisionExhausted("reciprocal of a box touching zero");
        auto div_iv = [&](const Rational& lo, const Rational& hi) {
            Rational v1 = lo / n_lo, v2 = lo / n_hi, v3 = hi / n_lo, v4 = hi / n_hi;
            return std::make_pair(std::min(std::min(v1, v2), std::min(v3, v4)),
                                  std::max(std::max(v1, v2), std::max(v3, v4)));
        };
        auto [r_lo, r_hi] = div_iv(a.re_lo, a.re_hi);
        auto [i_lo, i_hi] = div_iv(-a.im_hi, -a.im_lo);
        return {r_lo, r_hi, i_lo, i_hi};
    }
};

class AlgebraicNumber {
public:
    AlgebraicNumber(ZPoly minpoly, Box box, std::optional<MultiQuad> mq = std::nullopt)
        : minpoly_(std::move(minpoly)), box_(std::move(box)), mq_(std::move(mq)) {}

    const ZPoly& minpoly() const { return minpoly_; }
    const Box& box() const { return box_; }
    const std::optional<MultiQuad>& multiquad() const { return mq_; }

    int degree() const { return minpoly_.degree(); }
    bool is_quadratic() const { return degree() <= 2; }

    bool is_zero() const { return minpoly_.c.size() == 2 && minpoly_.c[0] == 0 && minpoly_.c[1] == 1; }
    bool is_one() const { return minpoly_.c.size() == 2 && minpoly_.c[0] == -1 && minpoly_.c[1] == 1; }

    std::optional<Rational> as_rational() const {
        if (degree() != 1) return std::nullopt;
        return make_rational(Integer(-minpoly_.c[0]), minpoly_.c[1]);
    }

    bool is_real() const {
        if (box_.is_real_line()) return true;
        if (box_.im_lo > 0 || box_.im_hi < 0) return false;
        return count_real_roots(minpoly_, box_.re_lo, box_.re_hi) >= 1;
    }

private:
    ZPoly minpoly_;
    Box box_;
    std::optional<MultiQuad> mq_;
};

// ---- construction -----------------------------------------------------

inline AlgebraicNumber from_rational(const Rational& q) {
    ZPoly mp(std::vector<Integer>{Integer(-q.get_num()), Integer(q.get_den())});
    return AlgebraicNumber(std::move(mp), Box::point(q, Rational(0)), MultiQuad::from_rational(q));
}

inline AlgebraicNumber from_rational(long p, long q) { return from_rational(make_rational(p, q)); }

inline AlgebraicNumber imaginary_unit() {
    return AlgebraicNumber(ZPoly::from_longs({1, 0, 1}), Box::point(Rational(0), Rational(1)),
                           MultiQuad::imaginary_unit());
}

// ---- certified root isolation ------------------------------------------

namespace detail {

inline Rational dyadic_halfwidth(double log2w) {
    long e = static_cast<long>(std::floor(log2w));
    if (e > 20) e = 20;
    if (e < -(1 << 18)) throw PrecisionExhausted("isolation width underflow");
    Rational w(1);
    if (e >= 0) {
        mpz_mul_2exp(w.get_num_mpz_t(), w.get_num().get_mpz_t(), static_cast<unsigned long>(e));
    } else {
        mpz_mul_2exp(w.get_den_mpz_t(), w.get_den().get_mpz_t(), static_cast<unsigned long>(-e));
    }
    w.canonicalize();
    return w;
}

// Rouche-style test: f has exactly one root in the disk |z - c| <= 3w/2 and
// that root lies within w/2 of c. Sound for any precision; may fail and ask
// for more.
inline bool certify_complex_box(const ZPoly& f, const Rational& c_re, const Rational& c_im,
                                const Rational& w, mpfr_prec_t p) {
    int n = f.degree();
    if (n < 1) return false;
    std::vector<ComplexRect> taylor = taylor_coefficients(f, c_re, c_im, p);
    Mpfr a0u = taylor[0].abs().abs_upper();
    Mpfr a1l = taylor[1].abs().abs_lower();
    if (a1l.sign() <= 0) return false;
    // Root location bound: some root lies within n * |f(c)/f'(c)|.
    Mpfr r1(p);
    mpfr_div(r1.get(), a0u.get(), a1l.get(), MPFR_RNDU);
    mpfr_mul_ui(r1.get(), r1.get(), static_cast<unsigned long>(n), MPFR_RNDU);
    Rational half_w = w / 2;
    if (mpfr_cmp_q(r1.get(), half_w.get_mpq_t()) > 0) return false;
    // Uniqueness in the disk of radius R = 3w/2 (covers the box).
    Rational R = w * make_rational(3, 2);
    Mpfr Ru(p), Rpow(p), term(p), lhs(p);
    mpfr_set_q(Ru.get(), R.get_mpq_t(), MPFR_RNDU);
    mpfr_set(lhs.get(), a0u.get(), MPFR_RNDU);
    mpfr_set(Rpow.get(), Ru.get(), MPFR_RNDU);
    for (std::size_t k = 2; k < taylor.size(); ++k) {
        mpfr_mul(Rpow.get(), Rpow.get(), Ru.get(), MPFR_RNDU);
        Mpfr aku = taylor[k].abs().abs_upper();
        mpfr_mul(term.get(), aku.get(), Rpow.get(), MPFR_RNDU);
        mpfr_add(lhs.get(), lhs.get(), term.get(), MPFR_RNDU);
    }
    Mpfr rhs(p), Rd(p);
    mpfr_set_q(Rd.get(), R.get_mpq_t(), MPFR_RNDD);
    mpfr_mul(rhs.get(), a1l.get(), Rd.get(), MPFR_RNDD);
    return mpfr_cmp(lhs.get(), rhs.get()) < 0;
}

struct IsolatedRoot {
    Box box;
    bool real = false;
};

// Certified pairwise-disjoint boxes around every root of the squarefree
// polynomial sf; nullopt when this precision was not enough.
inline std::optional<std::vector<IsolatedRoot>> isolate_roots(const ZPoly& sf, mpfr_prec_t p) {
    int n = sf.degree();
    std::vector<IsolatedRoot> out;
    if (n <= 0) return out;
    if (n == 1) {
        Rational r = make_rational(Integer(-sf.c[0]), sf.c[1]);
        out.push_back({Box::point(r, Rational(0)), true});
        return out;
    }
    std::vector<MpfrComplex> roots = aberth_roots(sf, p);
    for (auto& z : roots) z = newton_polish(sf, z, p, 10);

    auto seq = sturm_sequence(sf);
    for (int i = 0; i < n; ++i) {
        const MpfrComplex& zi = roots[static_cast<std::size_t>(i)];
        // Distance to the nearest other approximation sets the box scale.
        double gap = 1e300;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            Mpfr dre(p), dim(p);
            mpfr_sub(dre.get(), zi.re.get(), roots[static_cast<std::size_t>(j)].re.get(), MPFR_RNDN);
            mpfr_sub(dim.get(), zi.im.get(), roots[static_cast<std::size_t>(j)].im.get(), MPFR_RNDN);
            double d = std::hypot(dre.to_double(), dim.to_double());
            if (d < gap) gap = d;
        }
        if (!(gap > 0)) return std::nullopt;
        // Tight enough to keep factor reconstruction roundable, and shrinking
        // with precision so escalation actually helps.
        double wlog = std::min(std::log2(gap) - 3.0, -static_cast<double>(p) / 4);
        Rational w = dyadic_halfwidth(wlog);
        double im_mag = std::abs(zi.im.to_double());
        bool certified = false;
        if (im_mag < gap / 8) {
            // Real candidate: certify with exact Sturm counts on a segment.
            Mpfr xr = newton_polish_real(sf, zi.re, p, 8);
            Rational c = xr.to_rational();
            if (sign_variations(seq, c - w) - sign_variations(seq, c + w) == 1 &&
                sign_variations(seq, c - w / 2) - sign_variations(seq, c + w / 2) == 1) {
                out.push_back({Box{c - w, c + w, Rational(0), Rational(0)}, true});
                certified = true;
            }
        }
        if (!certified) {
            Rational cre = Mpfr(zi.re).to_rational();
            Rational cim = Mpfr(zi.im).to_rational();
            if (!certify_complex_box(sf, cre, cim, w, p)) return std::nullopt;
            out.push_back({Box{cre - w, cre + w, cim - w, cim + w}, false});
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = i + 1; j < out.size(); ++j)
            if (!out[i].box.disjoint(out[j].box)) return std::nullopt;
    return out;
}

// Minimal integer factor of sf having the root isolated by `target`:
// conjugate-closed subsets in increasing degree, outward-rounded products,
// exact division check. nullopt asks the caller to escalate precision.
inline std::optional<ZPoly> minimal_factor(const ZPoly& sf, const std::vector<IsolatedRoot>& roots,
                                           std::size_t target, mpfr_prec_t p, long* budget) {
    std::size_t n = roots.size();
    // Conjugate units: a real root is its own unit; complex roots pair up.
    std::vector<std::vector<std::size_t>> units;
    std::vector<int> unit_of(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (unit_of[i] >= 0) continue;
        if (roots[i].real) {
            unit_of[i] = static_cast<int>(units.size());
            units.push_back({i});
            continue;
        }
        Box conj{roots[i].box.re_lo, roots[i].box.re_hi, -roots[i].box.im_hi, -roots[i].box.im_lo};
        std::size_t mate = n;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || roots[j].real) continue;
            if (roots[j].box.intersects(conj)) {
                if (mate != n) return std::nullopt;
                mate = j;
            }
        }
        if (mate == n || unit_of[mate] >= 0) return std::nullopt;
        unit_of[i] = unit_of[mate] = static_cast<int>(units.size());
        units.push_back({i, mate});
    }
    std::size_t tu = static_cast<std::size_t>(unit_of[target]);

    std::vector<ComplexRect> linear;  // (x - z_j) constant terms, by root index
    linear.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexRect z = roots[j].box.to_rect(p);
        linear.push_back(z.neg());
    }
    ComplexRect one = ComplexRect::from_long(1, p);

    auto mul_in_unit = [&](std::vector<ComplexRect> poly, std::size_t u) {
        for (std::size_t j : units[u]) {
            std::vector<ComplexRect> next(poly.size() + 1, ComplexRect::from_long(0, p));
            for (std::size_t d = 0; d < poly.size(); ++d) {
                next[d + 1] = next[d + 1].add(poly[d]);
                next[d] = next[d].add(poly[d].mul(linear[j]));
            }
            poly = std::move(next);
        }
        return poly;
    };

    // Base product: the target unit is always included.
    std::vector<ComplexRect> base = mul_in_unit({one}, tu);

    std::vector<std::size_t> others;
    for (std::size_t u = 0; u < units.size(); ++u)
        if (u != tu) others.push_back(u);

    std::optional<ZPoly> found;
    bool imprecise = false;

    auto try_candidate = [&](const std::vector<ComplexRect>& poly) -> bool {
        // Multiply by the leading coefficient and round to integers.
        std::vector<Integer> cand(poly.size());
        RealInterval lead = RealInterval::from_rational(Rational(sf.lc()), p);
        for (std::size_t d = 0; d < poly.size(); ++d) {
            RealInterval re = poly[d].re().mul(lead);
            const RealInterval& im = poly[d].im();
            if (!im.contains_zero()) return false;
            Mpfr width = re.width();
            if (mpfr_cmp_ui(width.get(), 1) >= 0) {
                imprecise = true;
                return false;
            }
            Mpfr mid = re.midpoint();
            Mpfr rounded(p);
            mpfr_round(rounded.get(), mid.get());
            Integer z;
            mpfr_get_z(z.get_mpz_t(), rounded.get(), MPFR_RNDN);
            if (!re.contains(Rational(z))) return false;
            cand[d] = z;
        }
        ZPoly candidate = primitive_part(ZPoly(std::move(cand)));
        if (candidate.degree() < 1) return false;
        if (divide_exact(sf, candidate)) {
            found = candidate;
            return true;
        }
        return false;
    };

    // Subsets of the remaining units in increasing total degree.
    std::size_t base_deg = units[tu].size();
    for (std::size_t want = base_deg; want <= static_cast<std::size_t>(sf.degree()); ++want) {
        std::function<bool(std::size_t, std::size_t, const std::vector<ComplexRect>&)> dfs =
            [&](std::size_t idx, std::size_t have, const std::vector<ComplexRect>& poly) -> bool {
            if (--(*budget) < 0) throw CapExceeded("factor search budget exhausted");
            if (have == want) return try_candidate(poly);
            if (idx >= others.size()) return false;
            std::size_t u = others[idx];
            std::size_t sz = units[u].size();
            if (have + sz <= want) {
                if (dfs(idx + 1, have + sz, mul_in_unit(poly, u))) return true;
            }
            return dfs(idx + 1, have, poly);
        };
        if (dfs(0, base_deg, base)) return found;
    }
    if (imprecise) return std::nullopt;  // escalate
    // A divisor must exist (sf divides itself); reaching here means the
    // enclosures were too wide to round anywhere.
    return std::nullopt;
}

// Full pipeline: isolate the value of `composite` selected by `enclosure`
// and reconstruct its minimal polynomial.
inline AlgebraicNumber isolate_value(const ZPoly& composite,
                                     const std::function<Box(mpfr_prec_t)>& enclosure,
                                     std::optional<MultiQuad> mq, const DegreeCapConfig& caps,
                                     bool known_irreducible) {
    ZPoly sf = known_irreducible ? primitive_part(composite) : squarefree_part(composite);
    long budget = 500000;
    for (mpfr_prec_t p = 192; p <= (1 << 16); p *= 2) {
        try {
            auto roots = isolate_roots(sf, p);
            if (!roots) continue;
            Box e = enclosure(p);
            std::size_t hit = roots->size();
            bool ambiguous = false;
            for (std::size_t i = 0; i < roots->size(); ++i) {
                if ((*roots)[i].box.intersects(e)) {
                    if (hit != roots->size()) {
                        ambiguous = true;
                        break;
                    }
                    hit = i;
                }
            }
            if (ambiguous || hit == roots->size()) continue;
            ZPoly f = sf;
            if (!known_irreducible) {
                auto fopt = minimal_factor(sf, *roots, hit, p, &budget);
                if (!fopt) continue;
                f = *fopt;
            }
            if (f.degree() > caps.max_degree)
                throw CapExceeded("result degree " + std::to_string(f.degree()) + " exceeds cap");
            if (max_coeff_bits(f) > caps.max_coeff_bits)
                throw CapExceeded("result coefficient size exceeds cap");
            return AlgebraicNumber(std::move(f), (*roots)[hit].box, std::move(mq));
        } catch (const PrecisionExhausted&) {
            // enclosure construction needed a tighter precision round
        }
    }
    throw PrecisionExhausted("could not isolate algebraic value within precision ceiling");
}

}  // namespace detail

// ---- box refinement and equality ----------------------------------------

// A box for the same root with halfwidth <= target. Pure; the refined box
// is certified to isolate the same root (it is contained in the old box).
inline Box refine_box(const AlgebraicNumber& a, const Rational& target) {
    Box cur = a.box();
    if (cur.is_point() || cur.halfwidth() <= target) return cur;
    if (auto r = a.as_rational()) return Box::point(*r, Rational(0));
    const ZPoly& f = a.minpoly();
    auto seq = sturm_sequence(f);
    while (cur.halfwidth() > target) {
        Rational coarse = cur.halfwidth() / 1024;
        Rational quarter = cur.halfwidth() / 4;
        Rational goal = target > coarse ? target : coarse;
        Rational w = goal < quarter ? goal : quarter;
        bool done = false;
        for (mpfr_prec_t p = 256; p <= (1 << 16) && !done; p *= 2) {
            if (cur.is_real_line()) {
                Mpfr x0(p);
                mpfr_set_q(x0.get(), cur.center_re().get_mpq_t(), MPFR_RNDN);
                Mpfr x = newton_polish_real(f, x0, p, 24);
                Rational c = x.to_rational();
                Box nb{c - w, c + w, Rational(0), Rational(0)};
                if (cur.contains(nb) &&
                    sign_variations(seq, c - w) - sign_variations(seq, c + w) == 1 &&
                    sign_variations(seq, c - w / 2) - sign_variations(seq, c + w / 2) == 1) {
                    cur = nb;
                    done = true;
                }
            } else {
                MpfrComplex z0(p);
                mpfr_set_q(z0.re.get(), cur.center_re().get_mpq_t(), MPFR_RNDN);
                mpfr_set_q(z0.im.get(), cur.center_im().get_mpq_t(), MPFR_RNDN);
                MpfrComplex z = newton_polish(f, z0, p, 24);
                Rational cre = Mpfr(z.re).to_rational(), cim = Mpfr(z.im).to_rational();
                Box nb{cre - w, cre + w, cim - w, cim + w};
                if (cur.contains(nb) && detail::certify_complex_box(f, cre, cim, w, p)) {
                    cur = nb;
                    done = true;
                }
            }
        }
        if (!done) throw PrecisionExhausted("box refinement stalled");
    }
    return cur;
}

inline bool equals(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!(a.minpoly() == b.minpoly())) return false;
    if (a.degree() == 1) return true;  // same degree-1 minpoly pins the value
    Box ba = a.box(), bb = b.box();
    for (int round = 0; round < 128; ++round) {
        if (ba.disjoint(bb)) return false;
        if (ba.contains(bb) || bb.contains(ba)) return true;
        if (ba.halfwidth() >= bb.halfwidth()) {
            AlgebraicNumber tmp(a.minpoly(), ba);
            ba = refine_box(tmp, ba.halfwidth() / 4);
        } else {
            AlgebraicNumber tmp(b.minpoly(), bb);
            bb = refine_box(tmp, bb.halfwidth() / 4);
        }
    }
    throw PrecisionExhausted("equality test did not separate boxes");
}

// ---- field operations ----------------------------------------------------

enum class FieldOpKind { Add, Mul, Neg, Inv };

namespace detail {

inline std::optional<MultiQuad> mq_add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.multiquad() && b.multiquad()) return a.multiquad()->add(*b.multiquad());
    return std::nullopt;
}

inline std::optional<MultiQuad> mq_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (a.multiquad() && b.multiquad()) return a.multiquad()->mul(*b.multiquad());
    return std::nullopt;
}

// Builds an AlgebraicNumber straight from exact tower coordinates.
inline std::optional<AlgebraicNumber> from_multiquad(const MultiQuad& v, const DegreeCapConfig& caps) {
    if (auto r = v.as_rational()) return from_rational(*r);
    auto mp = v.minimal_polynomial();
    if (!mp || mp->degree() < 1) return std::nullopt;
    if (mp->degree() > caps.max_degree || max_coeff_bits(*mp) > caps.max_coeff_bits)
        throw CapExceeded("multiquad value exceeds degree/coefficient caps");
    auto enclosure = [&v](mpfr_prec_t p) {
        auto [re, im] = v.eval_intervals(p);
        return Box{re.lo().to_rational(), re.hi().to_rational(), im.lo().to_rational(),
                   im.hi().to_rational()};
    };
    return detail::isolate_value(*mp, enclosure, v, caps, true);
}

inline Box refined_operand_box(const AlgebraicNumber& x, mpfr_prec_t p) {
    Rational target(1);
    mpz_mul_2exp(target.get_den_mpz_t(), target.get_den().get_mpz_t(),
                 static_cast<unsigned long>(64 + p / 8));
    target.canonicalize();
    return refine_box(x, target);
}

}  // namespace detail

inline AlgebraicNumber field_op(FieldOpKind op, const AlgebraicNumber& a,
                                const AlgebraicNumber* b = nullptr,
                                const DegreeCapConfig& caps = {}) {
    switch (op) {
        case FieldOpKind::Neg: {
            std::optional<MultiQuad> mq;
            if (a.multiquad()) mq = a.multiquad()->neg();
            return AlgebraicNumber(transform_neg(a.minpoly()), Box::negate(a.box()), std::move(mq));
        }
        case FieldOpKind::Inv: {
            if (a.is_zero()) throw DivisionByZero("inverse of zero");
            if (auto r = a.as_rational()) return from_rational(Rational(1) / *r);
            std::optional<MultiQuad> mq;
            if (a.multiquad()) mq = a.multiquad()->inverse();
            ZPoly inv = transform_recip(a.minpoly());
            auto enclosure = [&a](mpfr_prec_t p) {
                Box ref = detail::refined_operand_box(a, p);
                return Box::recip(ref);
            };
            return detail::isolate_value(inv, enclosure, std::move(mq), caps, true);
        }
        case FieldOpKind::Add: {
            if (!b) throw Error("field_op ADD needs two operands");
            if (auto ra = a.as_rational()) {
                if (auto rb = b->as_rational()) return from_rational(*ra + *rb);
                std::optional<MultiQuad> mq = detail::mq_add(a, *b);
                return AlgebraicNumber(transform_shift(b->minpoly(), *ra), Box::shift(b->box(), *ra),
                                       std::move(mq));
            }
            if (auto rb = b->as_rational()) {
                std::optional<MultiQuad> mq = detail::mq_add(a, *b);
                return AlgebraicNumber(transform_shift(a.minpoly(), *rb), Box::shift(a.box(), *rb),
                                       std::move(mq));
            }
            if (auto mq = detail::mq_add(a, *b)) {
                if (auto v = detail::from_multiquad(*mq, caps)) return *v;
            }
            if (a.degree() * b->degree() > kComposeDegreeBound)
                throw CapExceeded("sum composition degree exceeds work bound");
            ZPoly comp = resultant_sum(a.minpoly(), b->minpoly());
            auto enclosure = [&a, b](mpfr_prec_t p) {
                return Box::add(detail::refined_operand_box(a, p), detail::refined_operand_box(*b, p));
            };
            return detail::isolate_value(comp, enclosure, std::nullopt, caps, false);
        }
        case FieldOpKind::Mul: {
            if (!b) throw Error("field_op MUL needs two operands");
            if (a.is_zero() || b->is_zero()) return from_rational(Rational(0));
            if (auto ra = a.as_rational()) {
                if (auto rb = b->as_rational()) return from_rational(*ra * *rb);
                std::optional<MultiQuad> mq = detail::mq_mul(a, *b);
                return AlgebraicNumber(transform_scale(b->minpoly(), *ra), Box::scale(b->box(), *ra),
                                       std::move(mq));
            }
            if (auto rb = b->as_rational()) {
                std::optional<MultiQuad> mq = detail::mq_mul(a, *b);
                return AlgebraicNumber(transform_scale(a.minpoly(), *rb), Box::scale(a.box(), *rb),
                                       std::move(mq));
            }
            if (auto mq = detail::mq_mul(a, *b)) {
                if (auto v = detail::from_multiquad(*mq, caps)) return *v;
            }
            if (a.degree() * b->degree() > kComposeDegreeBound)
                throw CapExceeded("product composition degree exceeds work bound");
            ZPoly comp = resultant_prod(a.minpoly(), b->minpoly());
            auto enclosure = [&a, b](mpfr_prec_t p) {
                return Box::mul(detail::refined_operand_box(a, p), detail::refined_operand_box(*b, p));
            };
            return detail::isolate_value(comp, enclosure, std::nullopt, caps, false);
        }
    }
    throw Error("unreachable field op");
}

// Principal square root: nonnegative real part; on the imaginary axis the
// nonnegative imaginary branch.
inline AlgebraicNumber sqrt_principal(const AlgebraicNumber& a, const DegreeCapConfig& caps = {}) {
    if (a.is_zero()) return from_rational(Rational(0));
    if (a.multiquad() && a.multiquad()->is_rational()) {
        if (auto s = MultiQuad::sqrt_of_rational(*a.multiquad()->as_rational())) {
            if (auto v = detail::from_multiquad(*s, caps)) return *v;
        }
    }
    if (2 * a.degree() > kComposeDegreeBound) throw CapExceeded("sqrt composition exceeds work bound");
    ZPoly comp = compose_x_pow(a.minpoly(), 2);
    auto enclosure = [&a](mpfr_prec_t p) {
        Box ref = detail::refined_operand_box(a, p);
        for (int tries = 0; ref.contains_zero() && tries < 30; ++tries) {
            AlgebraicNumber tmp(a.minpoly(), ref, std::nullopt);
            ref = refine_box(tmp, ref.halfwidth() / 16);
        }
        if (ref.contains_zero()) throw PrecisionExhausted("sqrt operand box touches zero");
        return Box::from_rect(ref.to_rect(p).sqrt());
    };
    return detail::isolate_value(comp, enclosure, std::nullopt, caps, false);
}

// a^(p/q) with the principal q-th root; exponent must be in lowest terms.
inline AlgebraicNumber pow_rational(const AlgebraicNumber& a, const Rational& r,
                                    const DegreeCapConfig& caps = {}) {
    if (a.is_zero()) {
        if (r > 0) return from_rational(Rational(0));
        throw DomainError(r == 0 ? "0^0 is undefined" : "0 raised to a negative power");
    }
    if (r == 0) return from_rational(Rational(1));
    Integer num = r.get_num(), den = r.get_den();
    // Integer power by square-and-multiply over field_op.
    auto ipow = [&caps](const AlgebraicNumber& base, Integer e) {
        bool inv = e < 0;
        if (inv) e = -e;
        AlgebraicNumber acc = from_rational(Rational(1));
        AlgebraicNumber cur = base;
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) acc = field_op(FieldOpKind::Mul, acc, &cur, caps);
            e >>= 1;
            if (e > 0) cur = field_op(FieldOpKind::Mul, cur, &cur, caps);
        }
        return inv ? field_op(FieldOpKind::Inv, acc, nullptr, caps) : acc;
    };
    if (!fits_long(num) || !fits_long(den) || abs(num) > 64 || den > 16)
        throw CapExceeded("rational exponent too large");
    AlgebraicNumber powered = ipow(a, num);
    unsigned long q = den.get_ui();
    if (q == 1) return powered;
    if (q == 2 && num == 1) return sqrt_principal(a, caps);
    if (static_cast<long>(q) * powered.degree() > kComposeDegreeBound)
        throw CapExceeded("root composition exceeds work bound");
    // The principal value exp(r * Log a) is one of the q-th roots of a^p;
    // the enclosure must come from a's own principal logarithm, not from
    // a^p's (they can differ by a branch).
    ZPoly comp = compose_x_pow(powered.minpoly(), static_cast<unsigned>(q));
    auto enclosure = [&a, &r](mpfr_prec_t p) {
        Box ref = detail::refined_operand_box(a, p);
        for (int tries = 0; ref.contains_zero() && tries < 30; ++tries) {
            AlgebraicNumber tmp(a.minpoly(), ref, std::nullopt);
            ref = refine_box(tmp, ref.halfwidth() / 16);
        }
        if (ref.contains_zero()) throw PrecisionExhausted("root operand box touches zero");
        ComplexRect rect = ref.to_rect(p);
        ComplexRect lg = rect.log();
        RealInterval expo = RealInterval::from_rational(r, p);
        ComplexRect scaled(lg.re().mul(expo), lg.im().mul(expo));
        return Box::from_rect(scaled.exp());
    };
    return detail::isolate_value(comp, enclosure, std::nullopt, caps, false);
}

}  // namespace arithmos
