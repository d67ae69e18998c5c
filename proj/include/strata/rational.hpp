#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace strata {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "-p", "p/q"; throws std::invalid_argument on malformed input.
Rational parse_rational(const std::string& s);

/// Canonical "p/q" text, or "p" for integers.
std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace strata
