#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace scl {

using ExactInt = mpz_class;
using ExactRational = mpq_class;

ExactInt factorial(std::uint32_t n);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const ExactRational& q);
std::string to_string(const ExactInt& z);
/// Fixed-point decimal rendering for display, e.g. "2.250000".
std::string to_decimal(const ExactRational& q, int digits = 6);
/// Parses "p/q" or "p"; throws std::invalid_argument.
ExactRational parse_rational(const std::string& text);

inline bool is_integer(const ExactRational& q) { return q.get_den() == 1; }

}  // namespace scl
