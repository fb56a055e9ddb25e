#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "raptor/rational.hpp"

namespace raptor {

// C(n, k); zero when k > n.
Int binomial(uint64_t n, uint64_t k);

// h! / (parts[0]! * ... * parts.back()!); parts must sum to h.
Int multinomial(uint64_t h, std::span<const uint32_t> parts);

// Krawtchouk polynomial K_j(x; n, q), exact signed integer.
Int krawtchouk(uint32_t j, uint32_t x, uint32_t n, uint32_t q);

// Independent route for the same value: coefficient of z^j in
// (1 + (q-1)z)^(n-x) * (1 - z)^x. Used as an oracle in tests.
Int krawtchouk_genfunc(uint32_t j, uint32_t x, uint32_t n, uint32_t q);

// Number of compositions of h into n_parts nonnegative parts.
Int composition_count(uint32_t h, uint32_t n_parts);

// All (f_0, ..., f_{n_parts-1}) with sum h, ascending lexicographic order:
// (0,...,0,h) first, (h,0,...,0) last. Runs fn once per composition.
// fn sees a scratch vector it must not retain.
template <typename Fn>
void for_each_composition(uint32_t h, uint32_t n_parts, Fn&& fn) {
  std::vector<uint32_t> f(n_parts, 0);
  if (n_parts == 0) return;
  f.back() = h;
  for (;;) {
    fn(std::span<const uint32_t>(f));
    // successor: bump the rightmost position that has mass to its right,
    // then push the remaining suffix mass into the last slot
    uint32_t suffix = 0;
    size_t i = n_parts;
    bool found = false;
    while (i-- > 1) {
      suffix += f[i];
      if (suffix > 0) {
        f[i - 1] += 1;
        for (size_t j = i; j < n_parts; ++j) f[j] = 0;
        f.back() = suffix - 1;
        found = true;
        break;
      }
    }
    if (!found) return;
  }
}

// Materialized composition list (small h only).
std::vector<std::vector<uint32_t>> compositions(uint32_t h, uint32_t n_parts);

// All q x q nonnegative integer matrices with entry sum j, row-major packed
// as a composition into q^2 parts; same order as for_each_composition.
template <typename Fn>
void for_each_joint_composition(uint32_t j, uint32_t q, Fn&& fn) {
  for_each_composition(j, q * q, fn);
}

// Fast binomials for hot kernels: exact as long as C(n, k) fits 128 bits
// (n <= 130 guaranteed). Values beyond the table must use binomial().
class BinomialTable {
 public:
  explicit BinomialTable(uint32_t max_n);
  unsigned __int128 operator()(uint32_t n, uint32_t k) const {
    if (k > n) return 0;
    return rows_[n][k];
  }
  uint32_t max_n() const { return static_cast<uint32_t>(rows_.size()) - 1; }

 private:
  std::vector<std::vector<unsigned __int128>> rows_;
};

}  // namespace raptor
