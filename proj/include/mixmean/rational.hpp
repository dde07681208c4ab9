#pragma once

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mixmean {

// Exact scalar used by the rational backend and the oracles.  mpq_class keeps
// values canonical (reduced, positive denominator), which is all the backend
// needs; helpers below handle exact text conversion.
using Rational = mpq_class;

// Parses a decimal literal ("2.5", "1e-3", "0.125") or a fraction ("5/2")
// into an exact rational.  Decimal literals convert without rounding.
// Throws Error{MalformedInput} on anything else; the sign is preserved so
// callers can detect negative entries themselves.
Rational rational_from_text(std::string_view token);

// Exact double -> rational conversion (every finite double is a rational).
Rational rational_from_double(double x);

// Nearest double (round to even); used for reporting only.
double rational_to_double(const Rational& q);

// Serialization that parses back to the identical rational: a finite decimal
// when the denominator is of the form 2^a * 5^b, otherwise "p/q".
std::string rational_to_text(const Rational& q);

} // namespace mixmean
