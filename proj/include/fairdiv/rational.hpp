#ifndef FAIRDIV_RATIONAL_HPP
#define FAIRDIV_RATIONAL_HPP

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fairdiv {

/// Exact arbitrary-precision rational. Canonical form (reduced, positive
/// denominator) is maintained by GMP for all arithmetic; construct through
/// the helpers below so hand-built values are canonical too.
using Rational = mpq_class;

/// num/den with canonicalization. den must be nonzero.
Rational make_rational(long num, long den = 1);

/// Parses "p" or "p/q" (decimal digits, optional leading minus on p, q >= 1).
/// Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Serializes as "p/q", always with an explicit denominator ("0/1", "-3/4").
std::string to_string(const Rational& value);

/// base^exp for nonnegative integer exponents.
Rational pow_rational(const Rational& base, unsigned long exp);

}  // namespace fairdiv

#endif
