#pragma once

#include <string>

#include <gmpxx.h>

namespace dqi {

// Arbitrary precision rational, always kept canonical (reduced, positive
// denominator). All coefficients in the library are of this type.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational &r) { return r.get_str(); }

// Parses "p", "-p" or "p/q". Throws std::invalid_argument.
Rational parse_rational(const std::string &text);

Rational factorial(unsigned n);
Rational binomial(unsigned n, unsigned k);

} // namespace dqi
