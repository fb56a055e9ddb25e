#include "raptor/combin.hpp"

#include "raptor/errors.hpp"

namespace raptor {

Int binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Int multinomial(uint64_t h, std::span<const uint32_t> parts) {
  uint64_t sum = 0;
  for (uint32_t p : parts) sum += p;
  if (sum != h) throw ConfigError("multinomial parts do not sum to h");
  Int result(1);
  uint64_t remaining = h;
  for (uint32_t p : parts) {
    result *= binomial(remaining, p);
    remaining -= p;
  }
  return result;
}

Int krawtchouk(uint32_t j, uint32_t x, uint32_t n, uint32_t q) {
  if (j > n || x > n) throw ConfigError("krawtchouk arguments out of range");
  Int sum(0);
  Int qm1_pow;
  for (uint32_t i = 0; i <= j; ++i) {
    Int term = binomial(x, i) * binomial(n - x, j - i);
    if (term == 0) continue;
    mpz_ui_pow_ui(qm1_pow.get_mpz_t(), q - 1, j - i);
    term *= qm1_pow;
    if (i & 1)
      sum -= term;
    else
      sum += term;
  }
  return sum;
}

Int krawtchouk_genfunc(uint32_t j, uint32_t x, uint32_t n, uint32_t q) {
  if (j > n || x > n) throw ConfigError("krawtchouk arguments out of range");
  // expand (1 + (q-1)z)^(n-x) * (1-z)^x up to degree j
  std::vector<Int> a(j + 1, Int(0)), b(j + 1, Int(0));
  Int qm1_pow;
  for (uint32_t i = 0; i <= j && i <= n - x; ++i) {
    mpz_ui_pow_ui(qm1_pow.get_mpz_t(), q - 1, i);
    a[i] = binomial(n - x, i) * qm1_pow;
  }
  for (uint32_t i = 0; i <= j && i <= x; ++i) {
    b[i] = binomial(x, i);
    if (i & 1) b[i] = -b[i];
  }
  Int coeff(0);
  for (uint32_t i = 0; i <= j; ++i) coeff += a[i] * b[j - i];
  return coeff;
}

Int composition_count(uint32_t h, uint32_t n_parts) {
  if (n_parts == 0) return h == 0 ? 1 : 0;
  return binomial(static_cast<uint64_t>(h) + n_parts - 1, n_parts - 1);
}

std::vector<std::vector<uint32_t>> compositions(uint32_t h, uint32_t n_parts) {
  std::vector<std::vector<uint32_t>> out;
  for_each_composition(h, n_parts, [&](std::span<const uint32_t> f) {
    out.emplace_back(f.begin(), f.end());
  });
  return out;
}

BinomialTable::BinomialTable(uint32_t max_n) {
  if (max_n > 130) throw ConfigError("BinomialTable overflows 128 bits beyond n = 130");
  rows_.resize(max_n + 1);
  for (uint32_t n = 0; n <= max_n; ++n) {
    rows_[n].assign(n + 1, 1);
    for (uint32_t k = 1; k < n; ++k) rows_[n][k] = rows_[n - 1][k - 1] + rows_[n - 1][k];
  }
}

}  // namespace raptor
