#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace burnside {

/// Exact rational scalar. All kernel entries, polynomial values and
/// eigenvalues are carried in this type; conversion to double happens
/// only at output boundaries.
using Rat = mpq_class;

/// Make a canonical rational p/q.
inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline double to_double(const Rat& q) { return q.get_d(); }

/// True iff q is an integer <= 0 (the terminating / pole-producing cases).
inline bool is_nonpositive_integer(const Rat& q) {
    return q.get_den() == 1 && q.get_num() <= 0;
}

/// Rising factorial (a)_l = a(a+1)...(a+l-1), (a)_0 = 1. Exact.
inline Rat pochhammer(const Rat& a, unsigned long l) {
    Rat result(1);
    Rat factor(a);
    for (unsigned long i = 0; i < l; ++i) {
        result *= factor;
        factor += 1;
    }
    return result;
}

inline mpz_class binomial(unsigned long n, unsigned long k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class factorial(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

/// Canonical "p/q" (or "p" for integers) form; round-trips through
/// parse_rational losslessly.
inline std::string format_rational(const Rat& q) { return q.get_str(); }

/// Parse "p/q", "p", or a decimal string such as "0.25" (decimals are
/// exact: digits after the point become p/10^d).
Rat parse_rational(const std::string& text);

/// Exact dyadic expansion of a finite double.
inline Rat rat_from_double(double x) {
    Rat r(x);
    r.canonicalize();
    return r;
}

}  // namespace burnside
