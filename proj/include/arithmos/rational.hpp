// rational.hpp - exact rational scalars (GMP) plus small helpers used everywhere.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "arithmos/errors.hpp"

namespace arithmos {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline bool fits_long(const Integer& z) { return z.fits_slong_p(); }

// Renders "p" or "p/q" with q > 0.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::optional<long> as_long(const Rational& q) {
    if (!is_integer(q) || !q.get_num().fits_slong_p()) return std::nullopt;
    return q.get_num().get_si();
}

// q^e by repeated squaring; e may be negative (q must be nonzero then).
inline Rational pow_rational(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    bool invert = e < 0;
    unsigned long n = invert ? static_cast<unsigned long>(-(e + 1)) + 1 : static_cast<unsigned long>(e);
    if (invert && q == 0) throw DivisionByZero("0 raised to a negative power");
    Rational base = q, acc(1);
    while (n) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    if (invert) acc = Rational(1) / acc;
    acc.canonicalize();
    return acc;
}

inline std::size_t bit_size(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2); }

inline std::size_t bit_size(const Rational& q) {
    return std::max(bit_size(Integer(q.get_num())), bit_size(Integer(q.get_den())));
}

}  // namespace arithmos
