#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace raptor {

// Exact arithmetic used by every enumerator and kernel. Conversion to
// floating point happens once, at the boundary of the bounds module.
using Int = mpz_class;
using Rat = mpq_class;

// Canonicalized rational num/den.
Rat rat(long num, long den);
Rat rat(const Int& num, const Int& den);

// Parses a plain decimal string ("0.0098", "-1.5e-3") into an exact rational.
Rat parse_decimal(const std::string& text);

// "num/den" with den always present ("3/1" for integers).
std::string fraction_string(const Rat& value);

// Round-to-nearest conversion carrying the full 113-bit mantissa.
__float128 to_f128(const Int& value);
__float128 to_f128(const Rat& value);

// Natural log of a positive value, accurate to f128 precision.
__float128 log_f128(const Int& value);
__float128 log_f128(const Rat& value);

}  // namespace raptor
