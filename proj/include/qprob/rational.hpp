#pragma once

#include <gmpxx.h>

#include <string>

namespace qp {

using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q" and finite decimals such as "0.25".
Rational parse_rational(const std::string& text);

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// exact binary value of a double
Rational rational_from_double(double x);

double to_double(const Rational& r);

}  // namespace qp
