// relation.hpp - integer relation search over real balls (exact-rational LLL
// at desk-scale dimensions). This is a test-time falsifier: a returned
// vector is only "numerically consistent with zero", never a proof, and
// engine verdicts never depend on it.
#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "arithmos/interval.hpp"
#include "arithmos/rational.hpp"

namespace arithmos {

namespace detail {

inline Integer round_to_integer(const Rational& q) {
    // Nearest integer, ties toward +inf; exactness does not matter here.
    Rational shifted = q + make_rational(1, 2);
    Integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
    return fl;
}

class LllReducer {
public:
    explicit LllReducer(std::vector<std::vector<Integer>> basis) : b_(std::move(basis)) {}

    void reduce() {
        std::size_t m = b_.size();
        if (m < 2) return;
        gram_schmidt();
        std::size_t k = 1;
        while (k < m) {
            for (std::size_t j = k; j-- > 0;) size_reduce(k, j);
            // Lovasz condition with delta = 3/4.
            Rational lhs = bstar_norm_[k] + mu_[k][k - 1] * mu_[k][k - 1] * bstar_norm_[k - 1];
            Rational rhs = make_rational(3, 4) * bstar_norm_[k - 1];
            if (lhs >= rhs) {
                ++k;
            } else {
                std::swap(b_[k], b_[k - 1]);
                gram_schmidt();
                k = k > 1 ? k - 1 : 1;
            }
        }
    }

    const std::vector<std::vector<Integer>>& rows() const { return b_; }

private:
    static Rational dot(const std::vector<Integer>& x, const std::vector<Rational>& y) {
        Rational s(0);
        for (std::size_t i = 0; i < x.size(); ++i) s += Rational(x[i]) * y[i];
        return s;
    }

    void gram_schmidt() {
        std::size_t m = b_.size(), n = b_[0].size();
        star_.assign(m, std::vector<Rational>(n, Rational(0)));
        mu_.assign(m, std::vector<Rational>(m, Rational(0)));
        bstar_norm_.assign(m, Rational(0));
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t c = 0; c < n; ++c) star_[i][c] = Rational(b_[i][c]);
            for (std::size_t j = 0; j < i; ++j) {
                if (bstar_norm_[j] == 0) continue;
                mu_[i][j] = dot(b_[i], star_[j]) / bstar_norm_[j];
                for (std::size_t c = 0; c < n; ++c) star_[i][c] -= mu_[i][j] * star_[j][c];
            }
            for (std::size_t c = 0; c < n; ++c) bstar_norm_[i] += star_[i][c] * star_[i][c];
        }
    }

    void size_reduce(std::size_t k, std::size_t j) {
        if (abs(mu_[k][j]) <= make_rational(1, 2)) return;
        Integer r = round_to_integer(mu_[k][j]);
        for (std::size_t c = 0; c < b_[k].size(); ++c) b_[k][c] -= r * b_[j][c];
        gram_schmidt();
    }

    std::vector<std::vector<Integer>> b_;
    std::vector<std::vector<Rational>> star_;
    std::vector<std::vector<Rational>> mu_;
    std::vector<Rational> bstar_norm_;
};

}  // namespace detail

// Searches for integers c (not all zero, |c_i| <= max_coeff) with
// sum c_i * v_i numerically consistent with zero. The input balls must be
// tight enough to decide; PrecisionExhausted otherwise. nullopt means "no
// relation with the given bound was found", not independence.
inline std::optional<std::vector<Integer>> integer_relation(const std::vector<RealInterval>& values,
                                                            const Integer& max_coeff) {
    if (values.empty()) return std::nullopt;
    std::size_t n = values.size();

    // Required input sharpness: radii leave at least ~48 usable bits.
    long scale_bits = 1 << 20;
    for (const auto& v : values) {
        Mpfr w = v.width();
        if (mpfr_zero_p(w.get())) continue;
        long e = static_cast<long>(mpfr_get_exp(w.get()));
        scale_bits = std::min(scale_bits, -e - 48);
    }
    if (scale_bits < 16) throw PrecisionExhausted("relation search: input balls too wide");
    if (scale_bits > (1 << 19)) scale_bits = 1 << 19;

    // Lattice rows [e_i | N * v_i].
    std::vector<std::vector<Integer>> basis(n, std::vector<Integer>(n + 1, Integer(0)));
    mpfr_prec_t p = static_cast<mpfr_prec_t>(scale_bits + 64);
    for (std::size_t i = 0; i < n; ++i) {
        basis[i][i] = 1;
        Mpfr scaled(p);
        mpfr_mul_2si(scaled.get(), values[i].midpoint().get(), scale_bits, MPFR_RNDN);
        Integer z;
        mpfr_get_z(z.get_mpz_t(), scaled.get(), MPFR_RNDN);
        basis[i][n] = z;
    }
    detail::LllReducer lll(std::move(basis));
    lll.reduce();

    mpfr_prec_t check_prec = static_cast<mpfr_prec_t>(scale_bits + 128);
    for (const auto& row : lll.rows()) {
        std::vector<Integer> c(row.begin(), row.begin() + static_cast<long>(n));
        bool nonzero = false, bounded = true;
        for (const auto& x : c) {
            if (x != 0) nonzero = true;
            if (abs(x) > max_coeff) bounded = false;
        }
        if (!nonzero || !bounded) continue;
        // Residual must be consistent with zero and decisively small.
        RealInterval sum = RealInterval::exact_zero(check_prec);
        for (std::size_t i = 0; i < n; ++i) {
            RealInterval ci = RealInterval::from_rational(Rational(c[i]), check_prec);
            RealInterval vi = RealInterval::from_endpoints(
                Mpfr(values[i].lo()), Mpfr(values[i].hi()), check_prec);
            sum = sum.add(ci.mul(vi));
        }
        Mpfr mid = sum.midpoint();
        Mpfr thresh(check_prec);
        mpfr_set_ui_2exp(thresh.get(), 1, -(scale_bits / 2), MPFR_RNDN);
        Mpfr mag(check_prec);
        mpfr_abs(mag.get(), mid.get(), MPFR_RNDN);
        if (sum.contains_zero() && mpfr_cmp(mag.get(), thresh.get()) <= 0) return c;
    }
    return std::nullopt;
}

}  // namespace arithmos
