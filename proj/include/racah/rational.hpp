#pragma once

#include <gmpxx.h>

#include <string>

#include "racah/errors.hpp"

namespace racah {

// Exact rational scalars.  GMP keeps every value canonical: reduced to lowest
// terms with a positive denominator, zero stored as 0/1.  All algebra in this
// library is exact; no floating point anywhere.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw DivisionByZero("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q" with an optional sign on either part.
Rational parse_rational(const std::string& s);

// "p/q", or just "p" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Exact conversion; throws unless r is an integer that fits in long.
long to_long(const Rational& r);

} // namespace racah
