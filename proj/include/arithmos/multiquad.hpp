// multiquad.hpp - exact arithmetic in multiquadratic towers Q(sqrt(d1), ..., sqrt(dk)).
//
// An element is a finite sum  sum_m  c_m * sqrt(m)  over squarefree integer
// radicands m (m = 1 is the rational part, negative m means i*sqrt(|m|)).
// Square roots of distinct squarefree integers are linearly independent
// over Q, so the representation is canonical: zero iff all coefficients
// vanish. This is the "common extension tower" used for exact Q-linear
// algebra on algebraic numbers built from rationals, i, and square roots.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "arithmos/interval.hpp"
#include "arithmos/polynomial.hpp"
#include "arithmos/rational.hpp"

namespace arithmos {

namespace detail {

// Pollard-Brent rho; returns a nontrivial factor of composite n, or 0 on
// iteration-budget exhaustion.
inline Integer pollard_brent(const Integer& n, unsigned long seed, long budget) {
    if (n % 2 == 0) return Integer(2);
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    Integer y = rng.get_z_range(n - 1) + 1;
    Integer c = rng.get_z_range(n - 1) + 1;
    Integer m(128), g(1), r(1), q(1), x, ys;
    while (g == 1 && budget > 0) {
        x = y;
        for (Integer i(0); i < r; ++i) y = (y * y + c) % n;
        Integer k(0);
        while (k < r && g == 1 && budget > 0) {
            ys = y;
            Integer lim = m < r - k ? m : r - k;
            for (Integer i(0); i < lim; ++i) {
                y = (y * y + c) % n;
                Integer d = x - y;
                q = q * abs(d) % n;
                --budget;
            }
            mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        // Backtrack one step at a time.
        do {
            ys = (ys * ys + c) % n;
            Integer d = abs(Integer(x - ys));
            mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
        } while (g == 1);
    }
    if (g == n || g == 1) return Integer(0);
    return g;
}

// Full prime factorization of n > 0 (trial division, then rho).
// nullopt if the budget runs out.
inline std::optional<std::map<Integer, unsigned>> factorize(Integer n) {
    std::map<Integer, unsigned> out;
    if (n <= 0) return std::nullopt;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) {
        while (n % p == 0) {
            ++out[Integer(p)];
            n /= p;
        }
    }
    Integer d(41);
    while (d * d <= n && d < 100000) {
        while (n % d == 0) {
            ++out[d];
            n /= d;
        }
        d += 2;
    }
    std::vector<Integer> stack;
    if (n > 1) stack.push_back(n);
    int rounds = 0;
    while (!stack.empty()) {
        if (++rounds > 64) return std::nullopt;
        Integer m = stack.back();
        stack.pop_back();
        if (mpz_probab_prime_p(m.get_mpz_t(), 30)) {
            ++out[m];
            continue;
        }
        if (mpz_perfect_square_p(m.get_mpz_t())) {
            Integer r;
            mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
            stack.push_back(r);
            stack.push_back(r);
            continue;
        }
        Integer f(0);
        for (unsigned long seed = 1; seed <= 8 && f == 0; ++seed)
            f = pollard_brent(m, seed, 2000000);
        if (f == 0) return std::nullopt;
        stack.push_back(f);
        stack.push_back(m / f);
    }
    return out;
}

// n = k^2 * s with s squarefree (n > 0).
inline std::optional<std::pair<Integer, Integer>> square_decompose(const Integer& n) {
    auto fac = factorize(n);
    if (!fac) return std::nullopt;
    Integer k(1), s(1);
    for (const auto& [p, e] : *fac) {
        for (unsigned i = 0; i + 1 < e; i += 2) k *= p;
        if (e % 2) s *= p;
    }
    return std::make_pair(k, s);
}

}  // namespace detail

class MultiQuad {
public:
    MultiQuad() = default;

    static MultiQuad from_rational(const Rational& q) {
        MultiQuad v;
        v.set(Integer(1), q);
        return v;
    }

    static MultiQuad imaginary_unit() {
        MultiQuad v;
        v.set(Integer(-1), Rational(1));
        return v;
    }

    // Principal square root of a rational; needs the radicand's squarefree
    // decomposition, so it can fail on hard-to-factor inputs.
    static std::optional<MultiQuad> sqrt_of_rational(const Rational& q) {
        if (q == 0) return from_rational(Rational(0));
        bool negative = q < 0;
        Rational a = negative ? Rational(-q) : q;
        // sqrt(p/r) = sqrt(p*r)/r
        Integer rad = a.get_num() * a.get_den();
        auto dec = detail::square_decompose(rad);
        if (!dec) return std::nullopt;
        auto [k, s] = *dec;
        Rational coeff = Rational(k) / Rational(a.get_den());
        MultiQuad v;
        v.set(negative ? Integer(-s) : s, coeff);
        return v;
    }

    bool is_zero() const { return terms_.empty(); }

    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
    }

    std::optional<Rational> as_rational() const {
        if (terms_.empty()) return Rational(0);
        if (is_rational()) return terms_.begin()->second;
        return std::nullopt;
    }

    const std::map<Integer, Rational>& terms() const { return terms_; }

    MultiQuad neg() const {
        MultiQuad v;
        for (const auto& [m, c] : terms_) v.terms_.emplace(m, -c);
        return v;
    }

    MultiQuad add(const MultiQuad& o) const {
        MultiQuad v = *this;
        for (const auto& [m, c] : o.terms_) v.set(m, v.coeff(m) + c);
        return v;
    }

    MultiQuad mul(const MultiQuad& o) const {
        MultiQuad v;
        for (const auto& [m1, c1] : terms_) {
            for (const auto& [m2, c2] : o.terms_) {
                Integer a1 = abs(m1), a2 = abs(m2);
                Integer g;
                mpz_gcd(g.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
                Integer s = (a1 / g) * (a2 / g);
                if (m1 < 0 != m2 < 0) s = -s;
                Rational c = c1 * c2 * Rational(g);
                if (m1 < 0 && m2 < 0) c = -c;
                v.set(s, v.coeff(s) + c);
            }
        }
        return v;
    }

    // Sign-flip conjugation: chi maps each prime in `flips` (and the sign
    // marker -1 when flips contains -1) to its negative square root.
    MultiQuad apply_character(const std::set<Integer>& flips) const {
        MultiQuad v;
        for (const auto& [m, c] : terms_) {
            int parity = 0;
            if (m < 0 && flips.count(Integer(-1))) parity ^= 1;
            Integer am = abs(m);
            for (const auto& f : flips) {
                if (f > 1 && am % f == 0) parity ^= 1;
            }
            v.set(m, parity ? -c : c);
        }
        return v;
    }

    // Prime support of the representation (plus -1 when any radicand is
    // negative); nullopt when a radicand refuses to factor.
    std::optional<std::vector<Integer>> support() const {
        std::set<Integer> gens;
        for (const auto& [m, c] : terms_) {
            if (m == 1) continue;
            if (m < 0) gens.insert(Integer(-1));
            auto fac = detail::factorize(abs(m));
            if (!fac) return std::nullopt;
            for (const auto& [p, e] : *fac) gens.insert(p);
        }
        return std::vector<Integer>(gens.begin(), gens.end());
    }

    std::optional<MultiQuad> inverse() const {
        if (is_zero()) return std::nullopt;
        if (auto r = as_rational()) return from_rational(Rational(1) / *r);
        auto gens = support();
        if (!gens || gens->size() > 6) return std::nullopt;
        // x^-1 = (prod of proper conjugates) / norm
        MultiQuad prod = from_rational(Rational(1));
        std::size_t k = gens->size();
        for (std::size_t mask = 1; mask < (1u << k); ++mask) {
            std::set<Integer> flips;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) flips.insert((*gens)[i]);
            prod = prod.mul(apply_character(flips));
        }
        MultiQuad full = prod.mul(*this);
        auto norm = full.as_rational();
        if (!norm || *norm == 0) return std::nullopt;  // cannot happen for nonzero x
        MultiQuad v;
        for (const auto& [m, c] : prod.terms_) v.set(m, c / *norm);
        return v;
    }

    // Minimal polynomial via the full character orbit: the product of
    // (x - chi(v)) over all characters is minpoly^(orbit multiplicity);
    // its squarefree part is the minimal polynomial itself.
    std::optional<ZPoly> minimal_polynomial() const {
        auto gens = support();
        if (!gens || gens->size() > 6) return std::nullopt;
        std::size_t k = gens->size();
        std::vector<MultiQuad> poly{neg(), from_rational(Rational(1))};  // x - v
        for (std::size_t mask = 1; mask < (1u << k); ++mask) {
            std::set<Integer> flips;
            for (std::size_t i = 0; i < k; ++i)
                if (mask & (1u << i)) flips.insert((*gens)[i]);
            MultiQuad conj = apply_character(flips);
            // poly *= (x - conj)
            std::vector<MultiQuad> next(poly.size() + 1);
            for (std::size_t d = 0; d < poly.size(); ++d) {
                next[d + 1] = next[d + 1].add(poly[d]);
                next[d] = next[d].add(poly[d].mul(conj.neg()));
            }
            poly = std::move(next);
        }
        std::vector<Rational> coeffs;
        coeffs.reserve(poly.size());
        for (const auto& c : poly) {
            auto r = c.as_rational();
            if (!r) return std::nullopt;  // character orbit must close over Q
            coeffs.push_back(*r);
        }
        ZPoly z = clear_denominators(QPoly(std::move(coeffs)));
        return squarefree_part(z);
    }

    // Rigorous enclosure; real and imaginary parts separately exact-zero
    // when structurally absent.
    std::pair<RealInterval, RealInterval> eval_intervals(mpfr_prec_t prec) const {
        RealInterval re = RealInterval::exact_zero(prec);
        RealInterval im = RealInterval::exact_zero(prec);
        for (const auto& [m, c] : terms_) {
            RealInterval coeff = RealInterval::from_rational(c, prec);
            Integer am = abs(m);
            RealInterval root = RealInterval::from_rational(Rational(am), prec).sqrt();
            if (m > 0) re = re.add(coeff.mul(root));
            else im = im.add(coeff.mul(root));
        }
        return {re, im};
    }

    bool operator==(const MultiQuad& o) const { return terms_ == o.terms_; }

private:
    Rational coeff(const Integer& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void set(const Integer& m, const Rational& c) {
        if (c == 0) terms_.erase(m);
        else terms_[m] = c;
    }

    std::map<Integer, Rational> terms_;
};

}  // namespace arithmos
