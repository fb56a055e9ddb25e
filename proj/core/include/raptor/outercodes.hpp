#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "raptor/enumerators.hpp"
#include "raptor/matrix.hpp"
#include "raptor/rng.hpp"

namespace raptor {

// Immutable (h, k) linear block code over GF(q) with a full-row-rank
// generator and a cached full-rank parity-check matrix.
struct LinearCode {
  FieldSpec field;
  uint32_t h = 0, k = 0;
  Mat generator;  // k x h
  Mat parity;     // (h-k) x h, generator * parity^T = 0

  static LinearCode from_generator(Mat g);
  // Code = nullspace of the given parity-check matrix; its dimension is
  // h - rank(pc) which may exceed h - rows when pc is rank deficient.
  static LinearCode from_parity_check(const Mat& pc);
};

LinearCode dual_code(const LinearCode& code);

struct EnsembleVariant {
  enum Kind { kUniformParityCheck, kRegularLdpc, kExplicit } kind = kUniformParityCheck;
  uint32_t h = 0, k = 0;    // uniform parity check
  uint32_t dv = 0, dc = 0;  // regular LDPC (h from above, k nominal = h(1 - dv/dc))
};

struct OuterEnsembleSpec {
  EnsembleVariant variant;
  FieldSpec field;
  std::shared_ptr<const LinearCode> explicit_code;  // kExplicit only
  // nominal dimension: k for uniform PC, h(1 - dv/dc) for LDPC
  uint32_t nominal_k() const;
};

// Binary Hamming code, h = 2^t - 1, k = h - t. Parity-check columns are the
// nonzero t-bit patterns in increasing numeric order (row r = bit r).
LinearCode hamming_generator(uint32_t t);

// Weight enumerator of the (2^t - 1, 2^t - 1 - t) Hamming code via the
// recursion (i+1) A_(i+1) + A_i + (h-i+1) A_(i-1) = C(h,i), A_0 = 1, A_1 = 0.
WeightEnumerator hamming_weight_enum_recursive(uint32_t h);

// One code drawn from the uniform parity-check ensemble: (h-k) x h i.i.d.
// uniform entries; the realized dimension k_C >= k is LinearCode::k.
LinearCode sample_uniform_pc(uint32_t h, uint32_t k, const FieldSpec& field, Rng& rng);

// Uniform random permutation of the h*dv variable sockets; entry e is the
// variable attached to check socket e (check c owns sockets [c*dc, (c+1)*dc)).
std::vector<uint32_t> ldpc_edge_sockets(uint32_t dv, uint32_t dc, uint32_t h, Rng& rng);

// One code drawn from the regular (dv, dc) LDPC ensemble: uniform permutation
// of the h*dv edge sockets, labels uniform in GF(q)\{0}; parallel edges
// between a variable and a check sum in the field (and may cancel).
LinearCode sample_regular_ldpc(uint32_t dv, uint32_t dc, uint32_t h, const FieldSpec& field,
                               Rng& rng);

// Full codebook as canonical-value vectors; guard q^k <= 2^16.
std::vector<std::vector<uint16_t>> codebook(const LinearCode& code);

// Ground-truth enumerators by full codebook(-pair) iteration.
// Guards: q^k <= 2^16 for single, q^(2k) <= 2^24 for pair enumerators.
WeightEnumerator exhaustive_weight_enum(const LinearCode& code);
CompositionEnumerator exhaustive_composition_enum(const LinearCode& code);
BivariateWeightEnumerator exhaustive_bivariate_weight_enum(const LinearCode& code, uint32_t ha);
BivariateCompositionEnumerator exhaustive_bivariate_composition_enum(const LinearCode& code,
                                                                     uint32_t ha);
// t_restricted: keep keys in T_{2,h} and total the rest in excluded_total.
JointWeightEnumeratorMap exhaustive_biweight_enum(const LinearCode& code,
                                                  bool t_restricted = true);
// Keys in K_{q,h}; pairs outside are totalled in excluded_total.
JointCompositionEnumeratorMap exhaustive_bicomposition_enum(const LinearCode& code);

}  // namespace raptor
