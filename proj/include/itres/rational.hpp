#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace itres {

using Integer = mpz_class;
using Rational = mpq_class;

/// "p/q" in lowest terms, or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Accepts "p", "-p" or "p/q" with decimal integers.
Rational parse_rational(std::string_view text);

Integer binomial(long n, long k);
Integer factorial(long n);

}  // namespace itres
