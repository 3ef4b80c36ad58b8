// independence.hpp - exact multiplicative-dependence decisions for positive
// rationals (gcd-refined coprime base, no factoring) and the Q-linear
// independence guard over algebraic numbers (exact tower coordinates when
// available, exactly-verified relation guesses otherwise).
#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "arithmos/algebraic.hpp"
#include "arithmos/relation.hpp"

namespace arithmos {

namespace detail {

// Pairwise-coprime base for a set of positive integers via gcd splitting.
inline std::vector<Integer> coprime_base(std::vector<Integer> xs) {
    std::vector<Integer> base;
    for (auto& x : xs)
        if (x > 1) base.push_back(x);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < base.size() && !changed; ++i) {
            for (std::size_t j = i + 1; j < base.size() && !changed; ++j) {
                Integer g;
                mpz_gcd(g.get_mpz_t(), base[i].get_mpz_t(), base[j].get_mpz_t());
                if (g == 1) continue;
                Integer a = base[i] / g, b = base[j] / g;
                base.erase(base.begin() + static_cast<long>(j));
                base.erase(base.begin() + static_cast<long>(i));
                if (a > 1) base.push_back(a);
                if (b > 1) base.push_back(b);
                base.push_back(g);
                changed = true;
            }
        }
    }
    return base;
}

// Exponent of b in n (b > 1); n must factor completely over the base.
inline long remove_all(Integer& n, const Integer& b) {
    long e = 0;
    while (n % b == 0) {
        n /= b;
        ++e;
    }
    return e;
}

}  // namespace detail

// Exponent vectors of positive rationals over a shared coprime base.
// Row i satisfies q_i = prod base_j ^ M[i][j].
inline std::pair<std::vector<Integer>, std::vector<std::vector<long>>> exponent_vectors(
    const std::vector<Rational>& qs) {
    std::vector<Integer> nums;
    for (const auto& q : qs) {
        nums.push_back(Integer(q.get_num()));
        nums.push_back(Integer(q.get_den()));
    }
    std::vector<Integer> base = detail::coprime_base(nums);
    std::vector<std::vector<long>> rows;
    for (const auto& q : qs) {
        Integer num = q.get_num(), den = q.get_den();
        std::vector<long> row(base.size(), 0);
        for (std::size_t j = 0; j < base.size(); ++j) {
            row[j] = detail::remove_all(num, base[j]) - detail::remove_all(den, base[j]);
        }
        if (num != 1 || den != 1) throw Error("coprime base failed to factor input");
        rows.push_back(std::move(row));
    }
    return {std::move(base), std::move(rows)};
}

// Some(m, n) with (m, n) != (0, 0) and p^m == q^n when the exponent vectors
// of p and q are parallel; None when they are Q-linearly independent.
inline std::optional<std::pair<Integer, Integer>> multiplicative_dependence(const Rational& p,
                                                                            const Rational& q) {
    if (p <= 0 || q <= 0) throw DomainError("multiplicative dependence needs positive rationals");
    if (p == 1) return std::make_pair(Integer(1), Integer(0));
    if (q == 1) return std::make_pair(Integer(0), Integer(1));
    auto [base, rows] = exponent_vectors({p, q});
    const auto& vp = rows[0];
    const auto& vq = rows[1];
    // Parallel iff vp[i] * vq[j] == vp[j] * vq[i] for all i, j; solve m/n.
    std::size_t pivot = base.size();
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (vp[i] != 0) {
            pivot = i;
            break;
        }
    }
    if (pivot == base.size()) throw Error("unreachable: p == 1 was handled");
    if (vq[pivot] == 0) return std::nullopt;
    for (std::size_t i = 0; i < base.size(); ++i) {
        if (Integer(vp[i]) * vq[pivot] != Integer(vq[i]) * vp[pivot]) return std::nullopt;
    }
    Integer m(vq[pivot]), n(vp[pivot]);
    Integer g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    m /= g;
    n /= g;
    if (m < 0) {
        m = -m;
        n = -n;
    }
    // p^m == q^n by construction; keep an exact check against regressions.
    if (!fits_long(m) || !fits_long(n)) return std::make_pair(m, n);
    if (pow_rational(p, m.get_si()) != pow_rational(q, n.get_si()))
        throw Error("multiplicative dependence witness failed verification");
    return std::make_pair(m, n);
}

// Rank over Q of the exponent vectors (fraction-free elimination).
inline int multiplicative_rank(const std::vector<Rational>& qs) {
    auto [base, rows] = exponent_vectors(qs);
    std::vector<std::vector<Rational>> m;
    for (const auto& r : rows) {
        std::vector<Rational> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    int rank = 0;
    std::size_t col = 0;
    while (rank < static_cast<int>(m.size()) && col < base.size()) {
        std::size_t piv = m.size();
        for (std::size_t i = static_cast<std::size_t>(rank); i < m.size(); ++i) {
            if (m[i][col] != 0) {
                piv = i;
                break;
            }
        }
        if (piv == m.size()) {
            ++col;
            continue;
        }
        std::swap(m[static_cast<std::size_t>(rank)], m[piv]);
        for (std::size_t i = static_cast<std::size_t>(rank) + 1; i < m.size(); ++i) {
            if (m[i][col] == 0) continue;
            Rational f = m[i][col] / m[static_cast<std::size_t>(rank)][col];
            for (std::size_t j = col; j < base.size(); ++j)
                m[i][j] -= f * m[static_cast<std::size_t>(rank)][j];
        }
        ++rank;
        ++col;
    }
    return rank;
}

enum class Trilean { True, False, Inconclusive };

// Are 1, beta_1, ..., beta_n linearly independent over Q?
//   * exact coordinates over the multiquadratic tower decide both ways;
//   * otherwise a relation guessed numerically and verified exactly decides
//     False; anything else is Inconclusive (cap overflow contract).
inline Trilean q_linear_independent_with_one(const std::vector<AlgebraicNumber>& betas,
                                             const DegreeCapConfig& caps = {}) {
    if (betas.empty()) return Trilean::Inconclusive;
    for (const auto& b : betas) {
        if (b.as_rational()) return Trilean::False;  // 1 and a rational are dependent
    }
    bool all_mq = true;
    for (const auto& b : betas)
        if (!b.multiquad()) all_mq = false;
    if (all_mq) {
        // Coordinates over the union basis; dependence == rank deficiency.
        std::vector<Integer> basis{Integer(1)};
        for (const auto& b : betas)
            for (const auto& [m, c] : b.multiquad()->terms())
                if (std::find(basis.begin(), basis.end(), m) == basis.end()) basis.push_back(m);
        std::vector<std::vector<Rational>> rows;
        rows.emplace_back(basis.size(), Rational(0));
        rows[0][0] = 1;  // the constant 1
        for (const auto& b : betas) {
            std::vector<Rational> row(basis.size(), Rational(0));
            for (const auto& [m, c] : b.multiquad()->terms()) {
                auto it = std::find(basis.begin(), basis.end(), m);
                row[static_cast<std::size_t>(it - basis.begin())] = c;
            }
            rows.push_back(std::move(row));
        }
        // Gaussian elimination over Q.
        std::size_t rank = 0, col = 0;
        std::size_t nrows = rows.size(), ncols = basis.size();
        while (rank < nrows && col < ncols) {
            std::size_t piv = nrows;
            for (std::size_t i = rank; i < nrows; ++i)
                if (rows[i][col] != 0) {
                    piv = i;
                    break;
                }
            if (piv == nrows) {
                ++col;
                continue;
            }
            std::swap(rows[rank], rows[piv]);
            for (std::size_t i = rank + 1; i < nrows; ++i) {
                if (rows[i][col] == 0) continue;
                Rational f = rows[i][col] / rows[rank][col];
                for (std::size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[rank][j];
            }
            ++rank;
            ++col;
        }
        return rank == nrows ? Trilean::True : Trilean::False;
    }
    // Guess a relation numerically, then verify it exactly.
    try {
        std::vector<RealInterval> vals;
        mpfr_prec_t p = 512;
        Rational tight(1);
        mpz_mul_2exp(tight.get_den_mpz_t(), tight.get_den().get_mpz_t(), 256);
        tight.canonicalize();
        vals.push_back(RealInterval::from_long(1, p));
        for (const auto& b : betas) {
            Box rb = refine_box(b, tight);
            if (!(rb.im_lo == 0 && rb.im_hi == 0)) return Trilean::Inconclusive;
            RealInterval iv = rb.to_rect(p).re();
            vals.push_back(iv);
        }
        auto rel = integer_relation(vals, Integer(1) << 24);
        if (!rel) return Trilean::Inconclusive;
        AlgebraicNumber sum = from_rational(Rational((*rel)[0]));
        for (std::size_t i = 0; i < betas.size(); ++i) {
            AlgebraicNumber c = from_rational(Rational((*rel)[i + 1]));
            AlgebraicNumber term = field_op(FieldOpKind::Mul, c, &betas[i], caps);
            sum = field_op(FieldOpKind::Add, sum, &term, caps);
        }
        if (sum.is_zero()) return Trilean::False;
        return Trilean::Inconclusive;
    } catch (const Error&) {
        return Trilean::Inconclusive;
    }
}

}  // namespace arithmos
