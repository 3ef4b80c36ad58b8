// polynomial.hpp - exact integer/rational univariate polynomial algebra:
// arithmetic, primitive parts, gcd and squarefree decomposition, Sturm
// counts, Sylvester resultants (Bareiss), and the root-transform /
// resultant-composition kernels behind algebraic-number arithmetic.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "arithmos/errors.hpp"
#include "arithmos/rational.hpp"

namespace arithmos {

// Integer polynomial, coefficients lowest degree first; empty vector == 0.
struct ZPoly {
    std::vector<Integer> c;

    ZPoly() = default;
    explicit ZPoly(std::vector<Integer> coeffs) : c(std::move(coeffs)) { normalize(); }
    static ZPoly from_longs(std::initializer_list<long> v) {
        std::vector<Integer> c;
        for (long x : v) c.emplace_back(x);
        return ZPoly(std::move(c));
    }

    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Integer& lc() const { return c.back(); }
    Integer coeff(std::size_t i) const { return i < c.size() ? c[i] : Integer(0); }

    bool operator==(const ZPoly& o) const { return c == o.c; }
};

inline ZPoly add(const ZPoly& a, const ZPoly& b) {
    std::vector<Integer> r(std::max(a.c.size(), b.c.size()), Integer(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return ZPoly(std::move(r));
}

inline ZPoly neg(const ZPoly& a) {
    std::vector<Integer> r = a.c;
    for (auto& x : r) x = -x;
    return ZPoly(std::move(r));
}

inline ZPoly sub(const ZPoly& a, const ZPoly& b) { return add(a, neg(b)); }

inline ZPoly mul(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> r(a.c.size() + b.c.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return ZPoly(std::move(r));
}

inline ZPoly scale(const ZPoly& a, const Integer& k) {
    if (k == 0) return {};
    std::vector<Integer> r = a.c;
    for (auto& x : r) x *= k;
    return ZPoly(std::move(r));
}

inline Integer content(const ZPoly& a) {
    Integer g(0);
    for (const auto& x : a.c) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

// Content removed, leading coefficient made positive.
inline ZPoly primitive_part(const ZPoly& a) {
    if (a.is_zero()) return {};
    Integer g = content(a);
    if (a.lc() < 0) g = -g;
    std::vector<Integer> r = a.c;
    for (auto& x : r) x /= g;
    return ZPoly(std::move(r));
}

inline ZPoly derivative(const ZPoly& a) {
    if (a.c.size() <= 1) return {};
    std::vector<Integer> r(a.c.size() - 1);
    for (std::size_t i = 1; i < a.c.size(); ++i) r[i - 1] = a.c[i] * static_cast<long>(i);
    return ZPoly(std::move(r));
}

inline Rational eval_at(const ZPoly& a, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = a.c.size(); i-- > 0;) acc = acc * x + Rational(a.c[i]);
    return acc;
}

inline std::size_t max_coeff_bits(const ZPoly& a) {
    std::size_t m = 0;
    for (const auto& x : a.c) m = std::max(m, bit_size(x));
    return m;
}

// ---- rational-coefficient helpers for gcd / Sturm ----

struct QPoly {
    std::vector<Rational> c;

    explicit QPoly(std::vector<Rational> coeffs = {}) : c(std::move(coeffs)) { normalize(); }
    explicit QPoly(const ZPoly& z) {
        c.reserve(z.c.size());
        for (const auto& x : z.c) c.emplace_back(x);
    }
    void normalize() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
};

// Remainder of a by b over Q.
inline QPoly qrem(QPoly a, const QPoly& b) {
    while (!a.is_zero() && a.degree() >= b.degree()) {
        Rational q = a.c.back() / b.c.back();
        std::size_t shift = a.c.size() - b.c.size();
        for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i + shift] -= q * b.c[i];
        a.c.pop_back();
        a.normalize();
    }
    return a;
}

// Scales a QPoly to a primitive ZPoly (positive leading coefficient).
inline ZPoly clear_denominators(const QPoly& a) {
    if (a.is_zero()) return {};
    Integer den(1);
    for (const auto& q : a.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<Integer> r;
    r.reserve(a.c.size());
    for (const auto& q : a.c) {
        Rational s = q * Rational(den);
        r.emplace_back(s.get_num());
    }
    return primitive_part(ZPoly(std::move(r)));
}

inline ZPoly gcd_primitive(const ZPoly& a, const ZPoly& b) {
    QPoly x(a), y(b);
    if (x.is_zero()) return primitive_part(b);
    if (y.is_zero()) return primitive_part(a);
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
        QPoly r = qrem(x, y);
        // Renormalize each step to keep coefficient growth in check.
        x = std::move(y);
        y = QPoly(clear_denominators(r));
    }
    return clear_denominators(x);
}

inline ZPoly squarefree_part(const ZPoly& a) {
    if (a.degree() <= 1) return primitive_part(a);
    ZPoly g = gcd_primitive(a, derivative(a));
    if (g.degree() == 0) return primitive_part(a);
    // Exact division a / g over Q, cleared back to a primitive ZPoly.
    QPoly x(a), y(g);
    std::vector<Rational> quot(x.c.size() - y.c.size() + 1, Rational(0));
    while (!x.is_zero() && x.degree() >= y.degree()) {
        Rational q = x.c.back() / y.c.back();
        std::size_t shift = x.c.size() - y.c.size();
        quot[shift] = q;
        for (std::size_t i = 0; i < y.c.size(); ++i) x.c[i + shift] -= q * y.c[i];
        x.c.pop_back();
        x.normalize();
    }
    return clear_denominators(QPoly(std::move(quot)));
}

// Exact division over Z: returns a/b when b divides a with integer
// quotient, nullopt otherwise.
inline std::optional<ZPoly> divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) return std::nullopt;
    if (a.is_zero()) return ZPoly{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Rational> quot(a.c.size() - b.c.size() + 1, Rational(0));
    QPoly x(a), y(b);
    while (!x.is_zero() && x.degree() >= y.degree()) {
        Rational q = x.c.back() / y.c.back();
        std::size_t shift = x.c.size() - y.c.size();
        quot[shift] = q;
        for (std::size_t i = 0; i < y.c.size(); ++i) x.c[i + shift] -= q * y.c[i];
        x.c.pop_back();
        x.normalize();
    }
    if (!x.is_zero()) return std::nullopt;
    std::vector<Integer> zq;
    zq.reserve(quot.size());
    for (const auto& q : quot) {
        if (!is_integer(q)) return std::nullopt;
        zq.emplace_back(q.get_num());
    }
    return ZPoly(std::move(zq));
}

// ---- root transforms ----

// Roots negated: a(-x), sign-normalized.
inline ZPoly transform_neg(const ZPoly& a) {
    std::vector<Integer> r = a.c;
    for (std::size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
    return primitive_part(ZPoly(std::move(r)));
}

// Roots inverted: x^n a(1/x); requires a(0) != 0.
inline ZPoly transform_recip(const ZPoly& a) {
    std::vector<Integer> r(a.c.rbegin(), a.c.rend());
    return primitive_part(ZPoly(std::move(r)));
}

// Roots shifted by +p/q: result(x) = q^n * a((q x - p)/q) via Horner in Z[x].
inline ZPoly transform_shift(const ZPoly& a, const Rational& r) {
    const Integer p = r.get_num(), q = r.get_den();
    int n = a.degree();
    ZPoly lin(std::vector<Integer>{-p, q});  // q x - p
    ZPoly acc(std::vector<Integer>{a.c[static_cast<std::size_t>(n)]});
    Integer qpow(1);
    for (int i = n - 1; i >= 0; --i) {
        qpow *= q;
        acc = add(mul(acc, lin), ZPoly(std::vector<Integer>{a.c[static_cast<std::size_t>(i)] * qpow}));
    }
    return primitive_part(acc);
}

// Roots scaled by p/q (p, q nonzero): result(x) = sum a_i q^i p^(n-i) x^i.
inline ZPoly transform_scale(const ZPoly& a, const Rational& r) {
    const Integer p = r.get_num(), q = r.get_den();
    int n = a.degree();
    std::vector<Integer> out(a.c.size());
    Integer qpow(1);
    for (int i = 0; i <= n; ++i) {
        Integer ppow(1);
        mpz_pow_ui(ppow.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(n - i));
        out[static_cast<std::size_t>(i)] = a.c[static_cast<std::size_t>(i)] * qpow * ppow;
        qpow *= q;
    }
    return primitive_part(ZPoly(std::move(out)));
}

// a(x^k): roots are the k-th roots of a's roots.
inline ZPoly compose_x_pow(const ZPoly& a, unsigned k) {
    if (a.is_zero() || k == 0) return a;
    std::vector<Integer> r(static_cast<std::size_t>(a.degree()) * k + 1, Integer(0));
    for (std::size_t i = 0; i < a.c.size(); ++i) r[i * k] = a.c[i];
    return ZPoly(std::move(r));
}

// ---- determinants and resultants ----

// Bareiss fraction-free determinant; consumes the matrix.
inline Integer bareiss_det(std::vector<std::vector<Integer>>& m) {
    std::size_t n = m.size();
    if (n == 0) return Integer(1);
    Integer denom(1);
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return Integer(0);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / denom;
            }
            m[i][k] = 0;
        }
        denom = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : Integer(-m[n - 1][n - 1]);
}

// Sylvester resultant of integer polynomials.
inline Integer resultant(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return Integer(0);
    std::size_t n = static_cast<std::size_t>(a.degree());
    std::size_t m = static_cast<std::size_t>(b.degree());
    if (n == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), a.c[0].get_mpz_t(), static_cast<unsigned long>(m));
        return r;
    }
    if (m == 0) {
        Integer r;
        mpz_pow_ui(r.get_mpz_t(), b.c[0].get_mpz_t(), static_cast<unsigned long>(n));
        return r;
    }
    std::size_t dim = n + m;
    std::vector<std::vector<Integer>> s(dim, std::vector<Integer>(dim, Integer(0)));
    for (std::size_t row = 0; row < m; ++row)
        for (std::size_t j = 0; j <= n; ++j) s[row][row + j] = a.c[n - j];
    for (std::size_t row = 0; row < n; ++row)
        for (std::size_t j = 0; j <= m; ++j) s[m + row][row + j] = b.c[m - j];
    return bareiss_det(s);
}

namespace detail {

// Lagrange interpolation through (x_i, y_i); result must have integer
// coefficients (resultants of integer polynomials do).
inline ZPoly interpolate_integer(const std::vector<long>& xs, const std::vector<Integer>& ys) {
    std::size_t n = xs.size();
    std::vector<Rational> acc(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        // basis_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j)
        std::vector<Rational> basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis.push_back(Rational(0));
            for (std::size_t k = basis.size() - 1; k > 0; --k)
                basis[k] = basis[k - 1] - Rational(xs[j]) * basis[k];
            basis[0] = -Rational(xs[j]) * basis[0];
            denom *= Rational(xs[i] - xs[j]);
        }
        Rational w = Rational(ys[i]) / denom;
        for (std::size_t k = 0; k < basis.size(); ++k) acc[k] += basis[k] * w;
    }
    std::vector<Integer> out;
    out.reserve(n);
    for (auto& q : acc) {
        q.canonicalize();
        if (!is_integer(q)) throw Error("resultant interpolation produced a non-integer");
        out.emplace_back(q.get_num());
    }
    return ZPoly(std::move(out));
}

}  // namespace detail

// Res_y(a(y), b(x - y)): vanishes exactly at sums alpha_i + beta_j.
inline ZPoly resultant_sum(const ZPoly& a, const ZPoly& b) {
    std::size_t n = static_cast<std::size_t>(a.degree());
    std::size_t m = static_cast<std::size_t>(b.degree());
    std::size_t pts = n * m + 1;
    std::vector<long> xs(pts);
    std::vector<Integer> ys(pts);
    for (std::size_t k = 0; k < pts; ++k) {
        long s = static_cast<long>(k) - static_cast<long>(pts / 2);
        xs[k] = s;
        // b(s - y) as a polynomial in y via the shift transform machinery:
        // evaluate coefficients directly.
        std::vector<Integer> bs(m + 1, Integer(0));
        // b(s - y) = sum_j b_j (s - y)^j ; expand with a running binomial row.
        std::vector<Integer> pow{Integer(1)};  // (s - y)^j coefficients in y
        for (std::size_t j = 0; j <= m; ++j) {
            for (std::size_t t = 0; t < pow.size(); ++t) bs[t] += b.c[j] * pow[t];
            // multiply pow by (s - y)
            std::vector<Integer> next(pow.size() + 1, Integer(0));
            for (std::size_t t = 0; t < pow.size(); ++t) {
                next[t] += pow[t] * s;
                next[t + 1] -= pow[t];
            }
            pow = std::move(next);
        }
        ys[k] = resultant(a, ZPoly(std::move(bs)));
    }
    return detail::interpolate_integer(xs, ys);
}

// Res_y(a(y), y^m b(x / y)): vanishes exactly at products alpha_i * beta_j.
// Requires b(0) != 0.
inline ZPoly resultant_prod(const ZPoly& a, const ZPoly& b) {
    std::size_t n = static_cast<std::size_t>(a.degree());
    std::size_t m = static_cast<std::size_t>(b.degree());
    std::size_t pts = n * m + 1;
    std::vector<long> xs(pts);
    std::vector<Integer> ys(pts);
    for (std::size_t k = 0; k < pts; ++k) {
        long s = static_cast<long>(k) - static_cast<long>(pts / 2);
        xs[k] = s;
        std::vector<Integer> bs(m + 1, Integer(0));
        Integer spow(1);
        for (std::size_t j = 0; j <= m; ++j) {
            bs[m - j] = b.c[j] * spow;
            spow *= s;
        }
        ys[k] = resultant(a, ZPoly(std::move(bs)));
    }
    return detail::interpolate_integer(xs, ys);
}

// ---- Sturm sequences ----

inline std::vector<QPoly> sturm_sequence(const ZPoly& squarefree) {
    std::vector<QPoly> seq;
    seq.emplace_back(squarefree);
    seq.emplace_back(derivative(squarefree));
    while (!seq.back().is_zero() && seq.back().degree() > 0) {
        QPoly r = qrem(seq[seq.size() - 2], seq.back());
        if (r.is_zero()) break;
        for (auto& q : r.c) q = -q;
        // Renormalize by a positive factor only: Sturm needs the signs intact.
        QPoly normd(clear_denominators(r));
        if (r.c.back() < 0) {
            for (auto& q : normd.c) q = -q;
        }
        seq.push_back(std::move(normd));
    }
    return seq;
}

inline int sign_of(const Rational& q) { return q < 0 ? -1 : (q > 0 ? 1 : 0); }

inline Rational eval_q(const QPoly& p, const Rational& x) {
    Rational acc(0);
    for (std::size_t i = p.c.size(); i-- > 0;) acc = acc * x + p.c[i];
    return acc;
}

inline int sign_variations(const std::vector<QPoly>& seq, const Rational& x) {
    int vars = 0, prev = 0;
    for (const auto& p : seq) {
        int s = sign_of(eval_q(p, x));
        if (s != 0) {
            if (prev != 0 && s != prev) ++vars;
            prev = s;
        }
    }
    return vars;
}

// Number of distinct real roots of the squarefree polynomial in (a, b].
inline int count_real_roots(const ZPoly& squarefree, const Rational& a, const Rational& b) {
    if (squarefree.degree() <= 0) return 0;
    auto seq = sturm_sequence(squarefree);
    return sign_variations(seq, a) - sign_variations(seq, b);
}

// Upper bound on the modulus of all complex roots (Cauchy bound).
inline Rational cauchy_bound(const ZPoly& a) {
    Rational m(0);
    Rational lc_abs = Rational(abs(a.lc()));
    for (std::size_t i = 0; i + 1 < a.c.size(); ++i) {
        Rational t = Rational(abs(a.c[i])) / lc_abs;
        if (t > m) m = t;
    }
    return m + 1;
}

}  // namespace arithmos
