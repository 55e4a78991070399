#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace frobvir {

/// Exact rational number. GMP keeps every value canonical after arithmetic;
/// the factory functions below canonicalize explicit numerator/denominator pairs.
using Rational = mpq_class;

Rational rational(long numerator, long denominator = 1);

/// Parses "p/q" or "p" (optional sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

Rational binomial(int n, int k);
Rational factorial(int n);

}  // namespace frobvir
