#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace rpmc {

/// Exact arbitrary-precision rational, always kept in canonical form.
using Rational = mpq_class;

/// Parses "a/b", an integer, or a decimal with at most 18 fraction digits
/// (".99" and "0.95" are accepted). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Compact form: "n" when the denominator is 1, "n/d" otherwise.
std::string to_string(const Rational& value);

/// Always "n/d", including "0/1" and "1/1".
std::string to_fraction_string(const Rational& value);

/// Length of the binary encoding of n/d: bits(|n|) + bits(d), where a zero
/// numerator counts as one bit.
std::size_t encoding_length(const Rational& value);

}  // namespace rpmc
