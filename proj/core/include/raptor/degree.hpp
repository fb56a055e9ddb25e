#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "raptor/rational.hpp"
#include "raptor/rng.hpp"

namespace raptor {

// LT output degree distribution Omega(x) = sum Omega_d x^d, exact rationals
// summing to 1, degrees >= 1 and distinct.
class DegreeDistribution {
 public:
  static DegreeDistribution from_terms(std::vector<std::pair<uint32_t, Rat>> terms);

  const std::vector<std::pair<uint32_t, Rat>>& terms() const { return terms_; }
  uint32_t d_max() const { return terms_.back().first; }

  // Inverse CDF against a 64-bit uniform draw on the fixed 2^-64 grid;
  // ties resolve toward the smaller degree.
  uint32_t sample(Rng& rng) const;

 private:
  std::vector<std::pair<uint32_t, Rat>> terms_;        // sorted by degree
  std::vector<unsigned __int128> thresholds_;          // floor(cdf * 2^64)
};

// Bivariate distribution Omega_{j,s} for multi-edge type constructions.
// The RaptorQ-style convention Omega_{0,0} = Omega_{0,1} = Omega_{1,0} = 0 is
// enforced unless relax_low_degrees is set.
class BivariateDegreeDistribution {
 public:
  struct Term {
    uint32_t j, s;
    Rat p;
  };
  static BivariateDegreeDistribution from_terms(std::vector<Term> terms,
                                                bool relax_low_degrees = false);

  const std::vector<Term>& terms() const { return terms_; }
  uint32_t j_max() const;
  uint32_t s_max() const;

  std::pair<uint32_t, uint32_t> sample(Rng& rng) const;

 private:
  std::vector<Term> terms_;
  std::vector<unsigned __int128> thresholds_;
};

// Output degree distribution of the standardized R10 Raptor code.
DegreeDistribution omega_r10();

// Omega(x) * (z^2 + z^3)/2, the RaptorQ-style multi-edge product form.
BivariateDegreeDistribution omega_rq_bivariate(const DegreeDistribution& base);

// File format: lines "degree probability" ("j s probability" for the
// bivariate form), '#' comments. Probabilities are decimal strings parsed
// exactly; a total within 1e-9 of 1 is renormalized, anything else rejected.
DegreeDistribution parse_degree_file(std::istream& in);
DegreeDistribution load_degree_file(const std::string& path);
BivariateDegreeDistribution parse_bivariate_degree_file(std::istream& in);
BivariateDegreeDistribution load_bivariate_degree_file(const std::string& path);

}  // namespace raptor
