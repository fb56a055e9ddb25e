#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "raptor/degree.hpp"
#include "raptor/enumerators.hpp"
#include "raptor/quad.hpp"

namespace raptor {

enum class ConstructionVariant { kGfq, kMultiEdge, kGfq01, kMultiEdge01 };

// --- pi kernels --------------------------------------------------------------
// Probability that one output symbol evaluates to zero, conditioned on the
// intermediate word's weight / split weight / composition. Computed as exact
// rationals and converted to 113-bit reals only on return from the non-exact
// overloads.

Rat pi_l_exact(uint32_t l, const DegreeDistribution& omega, uint32_t h, uint32_t q);
f128 pi_l(uint32_t l, const DegreeDistribution& omega, uint32_t h, uint32_t q);

Rat pi_lt_exact(uint32_t l, uint32_t t, const BivariateDegreeDistribution& omega2, uint32_t ha,
                uint32_t hb, uint32_t q);
f128 pi_lt(uint32_t l, uint32_t t, const BivariateDegreeDistribution& omega2, uint32_t ha,
           uint32_t hb, uint32_t q);

Rat pi_f_exact(std::span<const uint32_t> f, const DegreeDistribution& omega, uint32_t h,
               const FieldSpec& field);
f128 pi_f(std::span<const uint32_t> f, const DegreeDistribution& omega, uint32_t h,
          const FieldSpec& field);

Rat pi_fafb_exact(std::span<const uint32_t> fa, std::span<const uint32_t> fb,
                  const BivariateDegreeDistribution& omega2, uint32_t ha, uint32_t hb,
                  const FieldSpec& field);
f128 pi_fafb(std::span<const uint32_t> fa, std::span<const uint32_t> fb,
             const BivariateDegreeDistribution& omega2, uint32_t ha, uint32_t hb,
             const FieldSpec& field);

// --- union upper bounds ------------------------------------------------------
// (1/(q-1)) sum over nonzero keys of count * pi^(k+delta), accumulated in the
// log domain. The value is a bound and may exceed 1.

f128 ub_gfq(const WeightEnumerator& a, const DegreeDistribution& omega, uint32_t k,
            uint32_t delta, uint32_t q);
f128 ub_met(const BivariateWeightEnumerator& a, const BivariateDegreeDistribution& omega2,
            uint32_t k, uint32_t delta, uint32_t q);
f128 ub_gfq01(const CompositionEnumerator& qe, const DegreeDistribution& omega, uint32_t k,
              uint32_t delta, const FieldSpec& field);
f128 ub_met01(const BivariateCompositionEnumerator& qe, const BivariateDegreeDistribution& omega2,
              uint32_t k, uint32_t delta, const FieldSpec& field);

// --- second Bonferroni terms -------------------------------------------------
// Keys must already be restricted to K_{q,h} / T_{2,h}.

f128 s2_gfq01(const JointCompositionEnumeratorMap& s, const DegreeDistribution& omega, uint32_t m,
              const FieldSpec& field);
f128 s2_binary(const JointWeightEnumeratorMap& j, const DegreeDistribution& omega, uint32_t m,
               uint32_t h);

// Sharpest lower bound on a union probability from (S1, S2):
// theta = frac(2 S2/S1), theta S1^2/((2-theta)S1 + 2S2) + (1-theta)S1^2/((1-theta)S1 + 2S2).
f128 dawson_sankoff(f128 s1, f128 s2);

// --- suite -------------------------------------------------------------------

struct BoundResult {
  uint32_t delta = 0;
  f128 s1 = 0, s2 = 0;
  bool has_s2 = false;
  f128 upper = 0;
  // raw values straight from the inequalities
  f128 lb_bonferroni_raw = 0, lb_dawson_sankoff_raw = 0;
  // monotonized (running max from the right) and clamped at zero
  f128 lb_bonferroni = 0, lb_dawson_sankoff = 0;
};

struct BoundSuiteConfig {
  ConstructionVariant variant = ConstructionVariant::kGfq;
  FieldSpec field;
  const DegreeDistribution* omega = nullptr;            // gfq / gfq01
  const BivariateDegreeDistribution* omega2 = nullptr;  // multi-edge variants
  uint32_t k = 0;                                       // outer code dimension (nominal for ensembles)
};

// Enumerators of the outer code or ensemble; the variant picks which are
// required (upper bound) and which enable the lower bounds.
struct BoundInputs {
  const WeightEnumerator* weight = nullptr;                    // gfq
  const BivariateWeightEnumerator* biv_weight = nullptr;       // met
  const CompositionEnumerator* composition = nullptr;          // gfq01
  const BivariateCompositionEnumerator* biv_composition = nullptr;  // met01
  // lower-bound inputs (0/1 constructions incl. binary); keys pre-restricted
  const JointWeightEnumeratorMap* joint_weight = nullptr;      // binary
  const JointCompositionEnumeratorMap* bicomposition = nullptr;  // q > 2
};

// Evaluates S1 (and S2 where inputs allow) at m = k + delta for each delta,
// derives upper/lower bounds, and monotonizes the lower bounds.
std::vector<BoundResult> bound_suite(const BoundSuiteConfig& config, const BoundInputs& inputs,
                                     std::span<const uint32_t> deltas);

// CSV: delta,s1,s2,upper,lb_bonferroni,lb_dawson_sankoff
void write_bound_csv(std::ostream& out, std::span<const BoundResult> rows);

}  // namespace raptor
