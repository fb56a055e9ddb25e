#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "raptor/rational.hpp"

namespace raptor {

struct FieldElement {
  uint32_t value = 0;  // canonical: residue for prime fields, base-p digits packed for extensions
  friend bool operator==(FieldElement a, FieldElement b) { return a.value == b.value; }
  friend bool operator!=(FieldElement a, FieldElement b) { return a.value != b.value; }
};

// GF(q), q = p^m prime power, q <= 2^16. Immutable after construction; a
// FieldSpec is a cheap shared handle, safe to copy and use concurrently.
//
// Nonzero elements are indexed as powers of a distinguished alpha:
// composition index i in {1,...,q-1} maps to alpha^(i-1), index 0 to zero.
// alpha is the residue class of x for extension fields and the smallest
// primitive root for prime fields, so the index maps are bijections.
class FieldSpec {
 public:
  // modulus: packed base-p coefficients of a monic irreducible of degree m
  // (e.g. x^2+x+1 over GF(2) is 0b111 = 7). Only valid (and required to be
  // meaningful) when m > 1; a built-in default is used when omitted.
  static FieldSpec make(uint32_t p, uint32_t m, std::optional<uint64_t> modulus = std::nullopt);

  uint32_t q() const;
  uint32_t p() const;
  uint32_t m() const;
  uint64_t modulus() const;  // 0 when m == 1

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement alpha() const;
  FieldElement element(uint32_t value) const;

  FieldElement add(FieldElement a, FieldElement b) const;
  FieldElement sub(FieldElement a, FieldElement b) const;
  FieldElement neg(FieldElement a) const;
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement inv(FieldElement a) const;  // error on zero
  // n-fold sum of x, i.e. (n mod p) * x.
  FieldElement int_scale(uint64_t n, FieldElement x) const;

  // index 0 <-> zero, index i in 1..q-1 <-> alpha^(i-1)
  uint32_t index_of(FieldElement a) const;
  FieldElement element_of_index(uint32_t index) const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b);

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Probability that l i.i.d. uniform elements of GF(q)\{0} sum to zero:
// (1/q) (1 + (-1)^l / (q-1)^(l-1)); l = 0 gives 1 (empty sum).
Rat phi(uint64_t l, const FieldSpec& field);

// Same probability by exhaustive enumeration. Guard: (q-1)^l <= 1e7 for the
// full odometer; up to (q-1)^(l-1) <= 1e7 the last coordinate is forced and
// only the free coordinates are enumerated.
Rat zero_sum_count_brute(uint32_t l, const FieldSpec& field);

}  // namespace raptor
