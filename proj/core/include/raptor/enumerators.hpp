#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "raptor/combin.hpp"
#include "raptor/galois.hpp"
#include "raptor/rational.hpp"

namespace raptor {

// Counts are exact rationals throughout: ensemble expectations are not
// integers, and the MacWilliams / Krawtchouk sums cancel catastrophically
// in floating point.

struct WeightEnumerator {
  uint32_t h = 0;
  std::vector<Rat> counts;  // A_0 .. A_h

  WeightEnumerator() = default;
  explicit WeightEnumerator(uint32_t h_) : h(h_), counts(h_ + 1, Rat(0)) {}
  Rat total() const;
};

struct BivariateWeightEnumerator {
  uint32_t ha = 0, hb = 0;
  std::vector<Rat> counts;  // (ha+1) x (hb+1), row-major in l

  BivariateWeightEnumerator() = default;
  BivariateWeightEnumerator(uint32_t ha_, uint32_t hb_)
      : ha(ha_), hb(hb_), counts((ha_ + 1) * (hb_ + 1), Rat(0)) {}
  Rat& at(uint32_t l, uint32_t t) { return counts[l * (hb + 1) + t]; }
  const Rat& at(uint32_t l, uint32_t t) const { return counts[l * (hb + 1) + t]; }
  // re-bin by total weight l + t
  WeightEnumerator marginal() const;
};

using Composition = std::vector<uint32_t>;  // (f_0, ..., f_{q-1})

struct CompositionEnumerator {
  uint32_t h = 0, q = 0;
  std::map<Composition, Rat> entries;
  WeightEnumerator weight_marginal() const;
};

struct BivariateCompositionEnumerator {
  uint32_t ha = 0, hb = 0, q = 0;
  std::map<std::pair<Composition, Composition>, Rat> entries;
  BivariateWeightEnumerator weight_marginal() const;
};

// q x q matrix kappa, kappa[s][t] = #positions where r1 = alpha^(s-1)-indexed
// value s and r2 = value t (composition indices; 0 means the zero element).
struct JointComposition {
  uint32_t q = 0;
  std::vector<uint32_t> cells;  // row-major, q*q

  JointComposition() = default;
  explicit JointComposition(uint32_t q_) : q(q_), cells(q_ * q_, 0) {}
  uint32_t& at(uint32_t s, uint32_t t) { return cells[s * q + t]; }
  uint32_t at(uint32_t s, uint32_t t) const { return cells[s * q + t]; }
  uint32_t total() const;
};

using JointWeight = std::array<uint32_t, 4>;  // (tau_0, tau_1, tau_2, tau_3)

struct JointWeightEnumeratorMap {
  uint32_t h = 0;
  std::map<JointWeight, Rat> entries;
  Rat excluded_total;  // pairs whose key fell outside T_{2,h}, when restricted
};

struct JointCompositionEnumeratorMap {
  uint32_t h = 0, q = 0;
  std::map<std::vector<uint32_t>, Rat> entries;  // key: kappa cells row-major
  Rat excluded_total;                            // pairs whose key fell outside K_{q,h}
};

// --- elementary predicates and projections ---------------------------------

// 1 iff sum over i>=1 of f_i copies of alpha^(i-1) vanishes; f_0 is ignored.
bool b_indicator(std::span<const uint32_t> f, const FieldSpec& field);

Composition gamma1(const JointComposition& kappa);  // row sums: composition of r1
Composition gamma2(const JointComposition& kappa);  // column sums: composition of r2
JointWeight tau_of_kappa(const JointComposition& kappa);

// pattern: (q-1) x (q-1) zero/one matrix, row-major. A circulant permutation
// matrix has its ones on a single wrapped diagonal, one per row and column;
// an incomplete one is a nonzero submask of such a matrix.
bool is_circulant_permutation_pattern(std::span<const uint8_t> pattern, uint32_t n,
                                      bool allow_incomplete);

// Joint compositions of pairs of nonzero, linearly independent vectors.
bool in_K_qh(const JointComposition& kappa);
// Binary joint weights with at least two of tau_1, tau_2, tau_3 positive.
bool in_T_2h(const JointWeight& tau);

// --- ensemble enumerators ---------------------------------------------------

// Uniform parity-check ensemble: A_l = C(h,l) (q-1)^l q^-(h-k) for l >= 1.
WeightEnumerator uniform_pc_weight_enum(uint32_t h, uint32_t k, uint32_t q);

// Regular (dv, dc) LDPC ensemble of length h (h*dv divisible by dc).
WeightEnumerator ldpc_weight_enum(uint32_t dv, uint32_t dc, uint32_t h, uint32_t q);

// Q_f = A_l * C(l; f_1..f_{q-1}) (q-1)^-l, l = f_1 + ... + f_{q-1}. Valid for
// ensembles whose codeword-membership probability depends on weight only
// (uniform parity-check, regular/irregular LDPC); the caller asserts this.
CompositionEnumerator composition_from_weight(const WeightEnumerator& a, const FieldSpec& field);
BivariateCompositionEnumerator bivariate_composition_from_weight(
    const BivariateWeightEnumerator& a, const FieldSpec& field);

// Expected bicomposition of the uniform parity-check ensemble, keys in K_{q,h}:
// S_kappa = C(h, kappa) q^-2(h-k).
JointCompositionEnumeratorMap uniform_pc_bicomposition(uint32_t h, uint32_t k,
                                                       const FieldSpec& field);
// Binary specialization over T_{2,h}: J_tau = C(h, tau) 4^-(h-k).
JointWeightEnumeratorMap uniform_pc_joint_weight_binary(uint32_t h, uint32_t k);

// Split a permutation-symmetric ensemble enumerator over an (hA, hB) part
// division: A_{a,b} = C(hA,a) C(hB,b) / C(hA+hB, a+b) * A_{a+b}.
BivariateWeightEnumerator met_split_weight_enum(const WeightEnumerator& a, uint32_t ha,
                                                uint32_t hb);

// --- MacWilliams transforms --------------------------------------------------

// B(x,z) = q^-k (1+(q-1)x)^hA (1+(q-1)z)^hB A((1-x)/(1+(q-1)x), (1-z)/(1+(q-1)z)),
// evaluated by exact polynomial expansion. Errors if the output is not a
// nonnegative-integer enumerator summing to q^(hA+hB-k).
BivariateWeightEnumerator macwilliams_bivariate(const BivariateWeightEnumerator& a, uint32_t k,
                                                uint32_t q);
WeightEnumerator macwilliams_univariate(const WeightEnumerator& a, uint32_t k, uint32_t q);

// Biweight enumerator of a binary (h, k) code from the biweight enumerator of
// its dual (pairs of dual codewords are cheap to enumerate when h - k is
// small). Character-sum transform, exact; errors on non-integer output.
JointWeightEnumeratorMap binary_biweight_from_dual(const JointWeightEnumeratorMap& dual_pairs,
                                                   uint32_t h, uint32_t dual_dim);

// --- CSV export --------------------------------------------------------------
// Header "kind,q,h[,hB]", one row per key, counts as "num/den".

void write_csv(std::ostream& out, const WeightEnumerator& a, uint32_t q);
void write_csv(std::ostream& out, const BivariateWeightEnumerator& a, uint32_t q);
void write_csv(std::ostream& out, const CompositionEnumerator& a);
void write_csv(std::ostream& out, const BivariateCompositionEnumerator& a);
void write_csv(std::ostream& out, const JointWeightEnumeratorMap& a, uint32_t q);
void write_csv(std::ostream& out, const JointCompositionEnumeratorMap& a);

}  // namespace raptor
