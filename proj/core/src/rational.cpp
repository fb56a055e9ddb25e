#include "raptor/rational.hpp"

#include <quadmath.h>

#include <cctype>
#include <cstdlib>

#include "raptor/errors.hpp"

namespace raptor {

Rat rat(long num, long den) { return rat(Int(num), Int(den)); }

Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw ConfigError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_decimal(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ConfigError("empty decimal string");
  bool negative = false;
  size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    negative = s[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  for (; pos < s.size(); ++pos) {
    char c = s[pos];
    if (c == '.') {
      if (seen_dot) throw ConfigError("malformed decimal: " + text);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      throw ConfigError("malformed decimal: " + text);
    }
  }
  if (!seen_digit) throw ConfigError("malformed decimal: " + text);
  long exp10 = 0;
  if (pos < s.size()) {  // exponent part
    char* end = nullptr;
    exp10 = std::strtol(s.c_str() + pos + 1, &end, 10);
    if (end != s.c_str() + s.size()) throw ConfigError("malformed decimal: " + text);
  }
  Int num;
  mpz_set_str(num.get_mpz_t(), digits.empty() ? "0" : digits.c_str(), 10);
  if (negative) num = -num;
  long shift = exp10 - frac_digits;
  Int pow10(1);
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  return shift >= 0 ? rat(num * pow10, Int(1)) : rat(num, pow10);
}

std::string fraction_string(const Rat& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

// Splits |z| into the top <=128 mantissa bits and a power-of-two exponent.
void top_bits(const Int& z, unsigned long long& hi, unsigned long long& lo, long& exp2) {
  size_t bits = mpz_sizeinbase(z.get_mpz_t(), 2);
  Int mant;
  if (bits > 128) {
    exp2 = static_cast<long>(bits - 128);
    mpz_tdiv_q_2exp(mant.get_mpz_t(), z.get_mpz_t(), static_cast<mp_bitcnt_t>(exp2));
  } else {
    exp2 = 0;
    mant = z;
  }
  mpz_abs(mant.get_mpz_t(), mant.get_mpz_t());
  Int low_part, high_part;
  mpz_tdiv_r_2exp(low_part.get_mpz_t(), mant.get_mpz_t(), 64);
  mpz_tdiv_q_2exp(high_part.get_mpz_t(), mant.get_mpz_t(), 64);
  lo = mpz_get_ui(low_part.get_mpz_t());
  hi = mpz_get_ui(high_part.get_mpz_t());
#if GMP_LIMB_BITS < 64
#error "64-bit limbs expected"
#endif
}

}  // namespace

__float128 to_f128(const Int& value) {
  if (value == 0) return 0;
  unsigned long long hi, lo;
  long exp2;
  top_bits(value, hi, lo, exp2);
  __float128 mag = static_cast<__float128>(hi) * 0x1p64Q + static_cast<__float128>(lo);
  mag = ldexpq(mag, static_cast<int>(exp2));
  return sgn(value) < 0 ? -mag : mag;
}

__float128 to_f128(const Rat& value) {
  if (value == 0) return 0;
  return to_f128(Int(value.get_num())) / to_f128(Int(value.get_den()));
}

__float128 log_f128(const Int& value) {
  if (value <= 0) throw ConfigError("log of non-positive integer");
  unsigned long long hi, lo;
  long exp2;
  top_bits(value, hi, lo, exp2);
  __float128 mant = static_cast<__float128>(hi) * 0x1p64Q + static_cast<__float128>(lo);
  return logq(mant) + static_cast<__float128>(exp2) * M_LN2q;
}

__float128 log_f128(const Rat& value) {
  if (value <= 0) throw ConfigError("log of non-positive rational");
  return log_f128(Int(value.get_num())) - log_f128(Int(value.get_den()));
}

}  // namespace raptor
