#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace blockcomp {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p/q", "p", or a plain decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

/// Canonical "p/q" form; integers are written as "p/1" so every field has the
/// same shape on the wire.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational abs(const Rational& value);

/// Binomial coefficient as an exact integer; zero outside 0 <= k <= n.
Integer binomial(long n, long k);

}  // namespace blockcomp
