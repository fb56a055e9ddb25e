#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "raptor/bounds.hpp"
#include "raptor/degree.hpp"
#include "raptor/outercodes.hpp"
#include "raptor/rng.hpp"

namespace raptor {

// Inner LT code description: which of the four constructions, over which
// field, with which output degree distribution(s).
struct Construction {
  ConstructionVariant variant = ConstructionVariant::kGfq;
  FieldSpec field;
  DegreeDistribution omega;            // gfq / gfq01
  BivariateDegreeDistribution omega2;  // multi-edge variants
  uint32_t ha = 0, hb = 0;             // multi-edge part sizes, ha + hb = h

  bool is_multi_edge() const {
    return variant == ConstructionVariant::kMultiEdge ||
           variant == ConstructionVariant::kMultiEdge01;
  }
  bool is_zero_one() const {
    return variant == ConstructionVariant::kGfq01 ||
           variant == ConstructionVariant::kMultiEdge01;
  }
  // Degree supports must fit the part sizes (h for flat constructions).
  void validate_for_length(uint32_t h) const;
};

// One column of G_LT: sparse rows with nonzero coefficients. Multi-edge
// part-B rows are stored with their global index (ha + local index).
struct LTColumn {
  std::vector<std::pair<uint32_t, FieldElement>> entries;
};

LTColumn sample_column(const Construction& construction, uint32_t h, Rng& rng);

// Immutable decoding instance; preparation caches the transposed generator
// for the decoders. Safe to share across threads.
class RaptorInstance {
 public:
  RaptorInstance(LinearCode outer, Construction construction);

  const LinearCode& outer() const { return outer_; }
  const Construction& construction() const { return construction_; }

  // ML decoding fails iff rank(G_o * G_LT^rx) < k; the received values are
  // irrelevant to the failure event.
  bool ml_failure(std::span<const LTColumn> columns) const;

  // Inactivation-structured elimination; identical verdict to ml_failure.
  bool inactivation_failure(std::span<const LTColumn> columns) const;

 private:
  LinearCode outer_;
  Construction construction_;
  // generator transposed: row i = outer generator column i
  std::vector<uint64_t> gt_bits_;  // q == 2: h rows of words_ 64-bit words
  size_t words_ = 0;
  std::vector<uint8_t> gt_bytes_;  // q <= 256: h rows of k bytes
  std::vector<uint8_t> inv_table_; // element inverses for the u8 eliminator
};

bool ml_failure(const RaptorInstance& instance, std::span<const LTColumn> columns);
bool inactivation_solve(const RaptorInstance& instance, std::span<const LTColumn> columns);

// Exact failure probability by weighting every m-tuple of distinct column
// realizations; guard: (number of realizations)^m <= 1e7.
Rat exact_pf_tuples(const RaptorInstance& instance, uint32_t m);

// Exact failure probability via inclusion-exclusion over subsets of nonzero
// codewords; guard: q^k <= 16.
Rat exact_pf_inclusion_exclusion(const RaptorInstance& instance, uint32_t m);

}  // namespace raptor
