#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace springchain {

// Arbitrary-precision rational, always kept in canonical (reduced) form.
using Rational = mpq_class;

/// Parses "p/q", an integer, or a decimal literal such as "-1.25e-3".
/// Decimals are read as exact decimal fractions, never through a double.
Rational parse_rational(std::string_view text);

/// Exact conversion of a finite double (binary fraction) to a rational.
Rational rational_from_double(double value);

/// Nearest double (ties to even); mpq_class::get_d() truncates instead.
double to_double(const Rational& value);

/// Canonical text: "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

}  // namespace springchain
