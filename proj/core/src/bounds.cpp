#include "raptor/bounds.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <ostream>
#include <stdexcept>

#include "raptor/errors.hpp"

namespace raptor {

namespace {

constexpr uint64_t kTermGuard = 10'000'000;
// Each simplex sum of binomial products is bounded by its Vandermonde total
// C(h, d), so u128 accumulators are exact up to the table limit.
constexpr uint32_t kFastPathMaxH = 130;

f128 f128_of_u128(unsigned __int128 v) {
  return static_cast<f128>(static_cast<uint64_t>(v >> 64)) * 0x1p64Q +
         static_cast<f128>(static_cast<uint64_t>(v));
}

f128 clamp01(f128 x) {
  const f128 slack = 1e-30Q;
  if (x < 0 && x > -slack) return 0;
  if (x > 1 && x < 1 + slack) return 1;
  return x;
}

const BinomialTable& shared_binomials() {
  static BinomialTable table(130);
  return table;
}

// ---- composition lists keyed by (field, j), bucketed by field sum ----------

struct FieldKey {
  uint32_t q;
  uint64_t modulus;
  uint32_t j;
  auto operator<=>(const FieldKey&) const = default;
};

// Compositions of j into q parts, grouped by the field value of
// sum_i gamma_i alpha^(i-1); bucket 0 holds exactly the B-true ones.
struct GammaList {
  uint32_t q = 0, j = 0;
  std::vector<uint8_t> parts;            // count * q, grouped by bucket
  std::vector<size_t> bucket_offset;     // q+1 offsets into parts/count space
  size_t count = 0;
  std::span<const uint8_t> bucket(uint32_t value) const {
    return {parts.data() + bucket_offset[value] * q,
            (bucket_offset[value + 1] - bucket_offset[value]) * q};
  }
};

const GammaList& gamma_list(const FieldSpec& field, uint32_t j) {
  static std::mutex mu;
  static std::map<FieldKey, GammaList> cache;
  std::lock_guard<std::mutex> lock(mu);
  FieldKey key{field.q(), field.modulus(), j};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const uint32_t q = field.q();
  Int predicted = composition_count(j, q);
  if (predicted > kTermGuard)
    throw FeasibilityError("composition space for degree too large",
                           predicted.fits_ulong_p() ? predicted.get_ui() : kTermGuard + 1);

  std::vector<std::vector<uint8_t>> buckets(q);
  for_each_composition(j, q, [&](std::span<const uint32_t> g) {
    FieldElement sum = field.zero();
    for (uint32_t i = 1; i < q; ++i)
      sum = field.add(sum, field.int_scale(g[i], field.element_of_index(i)));
    auto& b = buckets[sum.value];
    for (uint32_t i = 0; i < q; ++i) b.push_back(static_cast<uint8_t>(g[i]));
  });

  GammaList list;
  list.q = q;
  list.j = j;
  list.bucket_offset.resize(q + 1, 0);
  for (uint32_t v = 0; v < q; ++v) {
    list.bucket_offset[v + 1] = list.bucket_offset[v] + buckets[v].size() / q;
    list.parts.insert(list.parts.end(), buckets[v].begin(), buckets[v].end());
  }
  list.count = list.parts.size() / q;
  return cache.emplace(key, std::move(list)).first->second;
}

// Joint compositions of j into q x q cells with both projections B-true.
struct UpsilonList {
  uint32_t q = 0, j = 0;
  std::vector<uint8_t> cells;  // count * q * q
  size_t count = 0;
};

const UpsilonList& upsilon_list(const FieldSpec& field, uint32_t j) {
  static std::mutex mu;
  static std::map<FieldKey, UpsilonList> cache;
  std::lock_guard<std::mutex> lock(mu);
  FieldKey key{field.q(), field.modulus(), j};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const uint32_t q = field.q();
  Int predicted = composition_count(j, q * q);
  if (predicted > kTermGuard)
    throw FeasibilityError("joint composition space for degree too large",
                           predicted.fits_ulong_p() ? predicted.get_ui() : kTermGuard + 1);

  UpsilonList list;
  list.q = q;
  list.j = j;
  for_each_joint_composition(j, q, [&](std::span<const uint32_t> cells) {
    FieldElement row_sum = field.zero(), col_sum = field.zero();
    for (uint32_t s = 0; s < q; ++s)
      for (uint32_t t = 0; t < q; ++t) {
        uint32_t c = cells[s * q + t];
        if (!c) continue;
        if (s >= 1) row_sum = field.add(row_sum, field.int_scale(c, field.element_of_index(s)));
        if (t >= 1) col_sum = field.add(col_sum, field.int_scale(c, field.element_of_index(t)));
      }
    if (row_sum != field.zero() || col_sum != field.zero()) return;
    for (uint32_t i = 0; i < q * q; ++i) list.cells.push_back(static_cast<uint8_t>(cells[i]));
  });
  list.count = list.cells.size() / (q * q);
  return cache.emplace(key, std::move(list)).first->second;
}

}  // namespace

// ---- Krawtchouk-ratio kernels -----------------------------------------------

Rat pi_l_exact(uint32_t l, const DegreeDistribution& omega, uint32_t h, uint32_t q) {
  if (l > h) throw ConfigError("weight exceeds block length");
  if (omega.d_max() > h) throw ConfigError("degree distribution d_max exceeds block length");
  Rat mix(0);
  for (const auto& [d, p] : omega.terms()) {
    Rat ratio = rat(krawtchouk(d, l, h, q), krawtchouk(d, 0, h, q));
    mix += p * ratio;
  }
  return rat(1, q) + rat(q - 1, q) * mix;
}

f128 pi_l(uint32_t l, const DegreeDistribution& omega, uint32_t h, uint32_t q) {
  return clamp01(to_f128(pi_l_exact(l, omega, h, q)));
}

Rat pi_lt_exact(uint32_t l, uint32_t t, const BivariateDegreeDistribution& omega2, uint32_t ha,
                uint32_t hb, uint32_t q) {
  if (l > ha || t > hb) throw ConfigError("split weight exceeds part length");
  Rat mix(0);
  for (const auto& term : omega2.terms()) {
    if (term.j > ha || term.s > hb) throw ConfigError("degree exceeds part length");
    Rat ra = rat(krawtchouk(term.j, l, ha, q), krawtchouk(term.j, 0, ha, q));
    Rat rb = rat(krawtchouk(term.s, t, hb, q), krawtchouk(term.s, 0, hb, q));
    mix += term.p * ra * rb;
  }
  return rat(1, q) + rat(q - 1, q) * mix;
}

f128 pi_lt(uint32_t l, uint32_t t, const BivariateDegreeDistribution& omega2, uint32_t ha,
           uint32_t hb, uint32_t q) {
  return clamp01(to_f128(pi_lt_exact(l, t, omega2, ha, hb, q)));
}

// ---- hypergeometric kernels ---------------------------------------------------

namespace {

// sum over the B-true bucket of prod_i C(f_i, gamma_i), u128 fast path
unsigned __int128 bucket_product_sum_u128(std::span<const uint32_t> f,
                                          std::span<const uint8_t> bucket, uint32_t q,
                                          const BinomialTable& bin) {
  unsigned __int128 acc = 0;
  for (size_t off = 0; off < bucket.size(); off += q) {
    unsigned __int128 prod = 1;
    for (uint32_t i = 0; i < q; ++i) {
      uint8_t gi = bucket[off + i];
      if (gi > f[i]) {
        prod = 0;
        break;
      }
      if (gi) prod *= bin(f[i], gi);
    }
    acc += prod;
  }
  return acc;
}

Int bucket_product_sum_exact(std::span<const uint32_t> f, std::span<const uint8_t> bucket,
                             uint32_t q) {
  Int acc(0);
  for (size_t off = 0; off < bucket.size(); off += q) {
    Int prod(1);
    for (uint32_t i = 0; i < q && prod != 0; ++i) {
      uint8_t gi = bucket[off + i];
      if (gi > f[i])
        prod = 0;
      else if (gi)
        prod *= binomial(f[i], gi);
    }
    acc += prod;
  }
  return acc;
}

void check_composition(std::span<const uint32_t> f, uint32_t h, uint32_t q) {
  if (f.size() != q) throw ConfigError("composition length must equal q");
  uint64_t sum = 0;
  for (uint32_t v : f) sum += v;
  if (sum != h) throw ConfigError("composition total must equal block length");
}

}  // namespace

Rat pi_f_exact(std::span<const uint32_t> f, const DegreeDistribution& omega, uint32_t h,
               const FieldSpec& field) {
  const uint32_t q = field.q();
  check_composition(f, h, q);
  if (omega.d_max() > h) throw ConfigError("degree distribution d_max exceeds block length");
  Rat total(0);
  for (const auto& [d, p] : omega.terms()) {
    const GammaList& list = gamma_list(field, d);
    Int num = bucket_product_sum_exact(f, list.bucket(0), q);
    total += p * rat(num, binomial(h, d));
  }
  return total;
}

f128 pi_f(std::span<const uint32_t> f, const DegreeDistribution& omega, uint32_t h,
          const FieldSpec& field) {
  const uint32_t q = field.q();
  check_composition(f, h, q);
  if (omega.d_max() > h) throw ConfigError("degree distribution d_max exceeds block length");
  if (h > kFastPathMaxH) return clamp01(to_f128(pi_f_exact(f, omega, h, field)));
  const BinomialTable& bin = shared_binomials();
  f128 total = 0;
  for (const auto& [d, p] : omega.terms()) {
    const GammaList& list = gamma_list(field, d);
    unsigned __int128 num = bucket_product_sum_u128(f, list.bucket(0), q, bin);
    if (num == 0) continue;
    total += to_f128(p) * (f128_of_u128(num) / f128_of_u128(bin(h, d)));
  }
  return clamp01(total);
}

Rat pi_fafb_exact(std::span<const uint32_t> fa, std::span<const uint32_t> fb,
                  const BivariateDegreeDistribution& omega2, uint32_t ha, uint32_t hb,
                  const FieldSpec& field) {
  const uint32_t q = field.q();
  check_composition(fa, ha, q);
  check_composition(fb, hb, q);
  Rat total(0);
  for (const auto& term : omega2.terms()) {
    if (term.j > ha || term.s > hb) throw ConfigError("degree exceeds part length");
    const GammaList& la = gamma_list(field, term.j);
    const GammaList& lb = gamma_list(field, term.s);
    // B(gamma_a + gamma_b) = 1 iff the field sums of the parts cancel
    Int inner(0);
    for (uint32_t u = 0; u < q; ++u) {
      uint32_t v = field.neg({u}).value;
      Int sa = bucket_product_sum_exact(fa, la.bucket(u), q);
      if (sa == 0) continue;
      inner += sa * bucket_product_sum_exact(fb, lb.bucket(v), q);
    }
    total += term.p * rat(inner, binomial(ha, term.j) * binomial(hb, term.s));
  }
  return total;
}

f128 pi_fafb(std::span<const uint32_t> fa, std::span<const uint32_t> fb,
             const BivariateDegreeDistribution& omega2, uint32_t ha, uint32_t hb,
             const FieldSpec& field) {
  const uint32_t q = field.q();
  check_composition(fa, ha, q);
  check_composition(fb, hb, q);
  if (std::max(ha, hb) > kFastPathMaxH)
    return clamp01(to_f128(pi_fafb_exact(fa, fb, omega2, ha, hb, field)));
  const BinomialTable& bin = shared_binomials();
  f128 total = 0;
  for (const auto& term : omega2.terms()) {
    if (term.j > ha || term.s > hb) throw ConfigError("degree exceeds part length");
    const GammaList& la = gamma_list(field, term.j);
    const GammaList& lb = gamma_list(field, term.s);
    f128 inner = 0;
    for (uint32_t u = 0; u < q; ++u) {
      uint32_t v = field.neg({u}).value;
      unsigned __int128 sa = bucket_product_sum_u128(fa, la.bucket(u), q, bin);
      if (sa == 0) continue;
      unsigned __int128 sb = bucket_product_sum_u128(fb, lb.bucket(v), q, bin);
      if (sb == 0) continue;
      inner += f128_of_u128(sa) * f128_of_u128(sb);
    }
    if (inner == 0) continue;
    total += to_f128(term.p) *
             (inner / (f128_of_u128(bin(ha, term.j)) * f128_of_u128(bin(hb, term.s))));
  }
  return clamp01(total);
}

// ---- log-domain accumulation ---------------------------------------------------

namespace {

struct Terms {
  std::vector<std::array<f128, 2>> entries;  // (log count, log pi)
  f128 log_prefactor = 0;
};

f128 eval_terms(const Terms& terms, uint64_t m) {
  LogSumExp lse;
  for (const auto& [log_count, log_pi] : terms.entries)
    lse.add(log_count + static_cast<f128>(m) * log_pi);
  if (lse.empty()) return 0;
  return expq(lse.log_sum() + terms.log_prefactor);
}

void push_term(Terms& terms, const Rat& count, f128 pi_value) {
  if (count == 0 || pi_value <= 0) return;
  terms.entries.push_back({log_f128(count), logq(pi_value)});
}

void push_term_exact_pi(Terms& terms, const Rat& count, const Rat& pi_value) {
  if (count == 0 || pi_value <= 0) return;
  terms.entries.push_back({log_f128(count), log_f128(pi_value)});
}

Terms terms_gfq(const WeightEnumerator& a, const DegreeDistribution& omega, uint32_t q) {
  Terms terms;
  terms.log_prefactor = -logq(static_cast<f128>(q - 1));
  for (uint32_t l = 1; l <= a.h; ++l)
    if (a.counts[l] != 0) push_term_exact_pi(terms, a.counts[l], pi_l_exact(l, omega, a.h, q));
  return terms;
}

Terms terms_met(const BivariateWeightEnumerator& a, const BivariateDegreeDistribution& omega2,
                uint32_t q) {
  Terms terms;
  terms.log_prefactor = -logq(static_cast<f128>(q - 1));
  for (uint32_t l = 0; l <= a.ha; ++l)
    for (uint32_t t = 0; t <= a.hb; ++t) {
      if (l + t == 0 || a.at(l, t) == 0) continue;
      push_term_exact_pi(terms, a.at(l, t), pi_lt_exact(l, t, omega2, a.ha, a.hb, q));
    }
  return terms;
}

Terms terms_gfq01(const CompositionEnumerator& qe, const DegreeDistribution& omega,
                  const FieldSpec& field) {
  Terms terms;
  terms.log_prefactor = -logq(static_cast<f128>(field.q() - 1));
  terms.entries.reserve(qe.entries.size());
  for (const auto& [f, count] : qe.entries) {
    if (f[0] == qe.h || count == 0) continue;  // skip the zero composition
    push_term(terms, count, pi_f(f, omega, qe.h, field));
  }
  return terms;
}

Terms terms_met01(const BivariateCompositionEnumerator& qe,
                  const BivariateDegreeDistribution& omega2, const FieldSpec& field) {
  Terms terms;
  terms.log_prefactor = -logq(static_cast<f128>(field.q() - 1));
  for (const auto& [key, count] : qe.entries) {
    if (count == 0) continue;
    if (key.first[0] == qe.ha && key.second[0] == qe.hb) continue;  // zero composition
    push_term(terms, count, pi_fafb(key.first, key.second, omega2, qe.ha, qe.hb, field));
  }
  return terms;
}

// Pair-column satisfaction probability for one binary joint weight.
f128 pair_kernel_binary(const JointWeight& tau, const DegreeDistribution& omega, uint32_t h,
                        const BinomialTable& bin) {
  f128 total = 0;
  for (const auto& [d, p] : omega.terms()) {
    unsigned __int128 acc = 0;
    uint32_t i1_max = std::min(tau[1], d);
    uint32_t i2_max = std::min(tau[2], d);
    uint32_t i3_max = std::min(tau[3], d);
    for (uint32_t i1 = 0; i1 <= i1_max; ++i1)
      for (uint32_t i2 = 0; i2 <= i2_max && i1 + i2 <= d; ++i2)
        for (uint32_t i3 = 0; i3 <= i3_max && i1 + i2 + i3 <= d; ++i3) {
          if ((i1 + i3) & 1 || (i2 + i3) & 1) continue;  // selected sums must vanish
          uint32_t i0 = d - i1 - i2 - i3;
          if (i0 > tau[0]) continue;
          acc += bin(tau[0], i0) * bin(tau[1], i1) * bin(tau[2], i2) * bin(tau[3], i3);
        }
    if (acc == 0) continue;
    total += to_f128(p) * (f128_of_u128(acc) / f128_of_u128(bin(h, d)));
  }
  return clamp01(total);
}

Terms terms_s2_binary(const JointWeightEnumeratorMap& j, const DegreeDistribution& omega) {
  const uint32_t h = j.h;
  if (omega.d_max() > h) throw ConfigError("degree distribution d_max exceeds block length");
  if (h > kFastPathMaxH)
    throw FeasibilityError("binary pair kernel limited to h <= 130", h);
  const BinomialTable& bin = shared_binomials();
  Terms terms;
  terms.log_prefactor = -logq(static_cast<f128>(2));
  for (const auto& [tau, count] : j.entries)
    push_term(terms, count, pair_kernel_binary(tau, omega, h, bin));
  return terms;
}

f128 pair_kernel_gfq01(std::span<const uint32_t> kappa, const DegreeDistribution& omega,
                       uint32_t h, const FieldSpec& field, const BinomialTable& bin) {
  const uint32_t q = field.q();
  const uint32_t cells = q * q;
  f128 total = 0;
  for (const auto& [d, p] : omega.terms()) {
    const UpsilonList& list = upsilon_list(field, d);
    unsigned __int128 acc = 0;
    for (size_t off = 0; off < list.cells.size(); off += cells) {
      unsigned __int128 prod = 1;
      for (uint32_t c = 0; c < cells; ++c) {
        uint8_t uc = list.cells[off + c];
        if (uc > kappa[c]) {
          prod = 0;
          break;
        }
        if (uc) prod *= bin(kappa[c], uc);
      }
      acc += prod;
    }
    if (acc == 0) continue;
    total += to_f128(p) * (f128_of_u128(acc) / f128_of_u128(bin(h, d)));
  }
  return clamp01(total);
}

Terms terms_s2_gfq01(const JointCompositionEnumeratorMap& s, const DegreeDistribution& omega,
                     const FieldSpec& field) {
  const uint32_t h = s.h;
  if (omega.d_max() > h) throw ConfigError("degree distribution d_max exceeds block length");
  if (h > kFastPathMaxH) throw FeasibilityError("pair kernel limited to h <= 130", h);
  // predicted total term count across degrees
  Int predicted(0);
  for (const auto& [d, p] : omega.terms()) predicted += composition_count(d, field.q() * field.q());
  if (predicted > kTermGuard)
    throw FeasibilityError("joint composition term count too large",
                           predicted.fits_ulong_p() ? predicted.get_ui() : kTermGuard + 1);
  const BinomialTable& bin = shared_binomials();
  Terms terms;
  const uint32_t q = field.q();
  terms.log_prefactor = -logq(static_cast<f128>(2) * (q - 1) * (q - 1));
  for (const auto& [kappa, count] : s.entries)
    push_term(terms, count, pair_kernel_gfq01(kappa, omega, h, field, bin));
  return terms;
}

}  // namespace

f128 ub_gfq(const WeightEnumerator& a, const DegreeDistribution& omega, uint32_t k, uint32_t delta,
            uint32_t q) {
  return eval_terms(terms_gfq(a, omega, q), static_cast<uint64_t>(k) + delta);
}

f128 ub_met(const BivariateWeightEnumerator& a, const BivariateDegreeDistribution& omega2,
            uint32_t k, uint32_t delta, uint32_t q) {
  return eval_terms(terms_met(a, omega2, q), static_cast<uint64_t>(k) + delta);
}

f128 ub_gfq01(const CompositionEnumerator& qe, const DegreeDistribution& omega, uint32_t k,
              uint32_t delta, const FieldSpec& field) {
  return eval_terms(terms_gfq01(qe, omega, field), static_cast<uint64_t>(k) + delta);
}

f128 ub_met01(const BivariateCompositionEnumerator& qe, const BivariateDegreeDistribution& omega2,
              uint32_t k, uint32_t delta, const FieldSpec& field) {
  return eval_terms(terms_met01(qe, omega2, field), static_cast<uint64_t>(k) + delta);
}

f128 s2_gfq01(const JointCompositionEnumeratorMap& s, const DegreeDistribution& omega, uint32_t m,
              const FieldSpec& field) {
  return eval_terms(terms_s2_gfq01(s, omega, field), m);
}

f128 s2_binary(const JointWeightEnumeratorMap& j, const DegreeDistribution& omega, uint32_t m,
               uint32_t h) {
  if (h != j.h) throw ConfigError("joint weight map length mismatch");
  return eval_terms(terms_s2_binary(j, omega), m);
}

f128 dawson_sankoff(f128 s1, f128 s2) {
  if (s1 < 0 || s2 < 0) throw ConfigError("dawson_sankoff requires nonnegative inputs");
  if (s1 == 0) return 0;
  f128 x = 2 * s2 / s1;
  f128 theta = x - floorq(x);
  f128 first = theta == 0 ? 0 : theta * s1 * s1 / ((2 - theta) * s1 + 2 * s2);
  f128 second = (1 - theta) * s1 * s1 / ((1 - theta) * s1 + 2 * s2);
  return first + second;
}

std::vector<BoundResult> bound_suite(const BoundSuiteConfig& config, const BoundInputs& inputs,
                                     std::span<const uint32_t> deltas) {
  const uint32_t q = config.field.q();
  Terms s1_terms;
  switch (config.variant) {
    case ConstructionVariant::kGfq:
      if (!config.omega) throw ConfigError("gfq construction needs a degree distribution");
      if (!inputs.weight) throw ConfigError("gfq bounds need a weight enumerator");
      s1_terms = terms_gfq(*inputs.weight, *config.omega, q);
      break;
    case ConstructionVariant::kMultiEdge:
      if (!config.omega2) throw ConfigError("met construction needs a bivariate distribution");
      if (!inputs.biv_weight) throw ConfigError("met bounds need a bivariate weight enumerator");
      s1_terms = terms_met(*inputs.biv_weight, *config.omega2, q);
      break;
    case ConstructionVariant::kGfq01:
      if (!config.omega) throw ConfigError("gfq01 construction needs a degree distribution");
      if (!inputs.composition) throw ConfigError("gfq01 bounds need a composition enumerator");
      s1_terms = terms_gfq01(*inputs.composition, *config.omega, config.field);
      break;
    case ConstructionVariant::kMultiEdge01:
      if (!config.omega2) throw ConfigError("met01 construction needs a bivariate distribution");
      if (!inputs.biv_composition)
        throw ConfigError("met01 bounds need a bivariate composition enumerator");
      s1_terms = terms_met01(*inputs.biv_composition, *config.omega2, config.field);
      break;
  }

  bool lb_eligible = config.variant == ConstructionVariant::kGfq01 ||
                     (config.variant == ConstructionVariant::kGfq && q == 2);
  bool want_lb = inputs.joint_weight || inputs.bicomposition;
  if (want_lb && !lb_eligible)
    throw ConfigError("lower bounds are only available for 0/1 constructions (including binary)");

  Terms s2_terms;
  bool has_s2 = false;
  if (want_lb) {
    if (q == 2 && inputs.joint_weight) {
      s2_terms = terms_s2_binary(*inputs.joint_weight, *config.omega);
    } else if (inputs.bicomposition) {
      s2_terms = terms_s2_gfq01(*inputs.bicomposition, *config.omega, config.field);
    } else {
      throw ConfigError("lower bound for q > 2 needs a bicomposition enumerator");
    }
    has_s2 = true;
  }

  std::vector<BoundResult> rows;
  rows.reserve(deltas.size());
  for (uint32_t delta : deltas) {
    BoundResult r;
    r.delta = delta;
    uint64_t m = static_cast<uint64_t>(config.k) + delta;
    r.s1 = eval_terms(s1_terms, m);
    r.upper = r.s1;
    r.has_s2 = has_s2;
    if (has_s2) {
      r.s2 = eval_terms(s2_terms, m);
      r.lb_bonferroni_raw = r.s1 - r.s2;
      r.lb_dawson_sankoff_raw = dawson_sankoff(r.s1, r.s2);
    }
    rows.push_back(r);
  }

  // a valid lower bound at a larger overhead also bounds every smaller one
  if (has_s2) {
    f128 best_b = 0, best_d = 0;
    for (size_t i = rows.size(); i-- > 0;) {
      best_b = std::max(best_b, rows[i].lb_bonferroni_raw);
      best_d = std::max(best_d, rows[i].lb_dawson_sankoff_raw);
      rows[i].lb_bonferroni = std::max<f128>(best_b, 0);
      rows[i].lb_dawson_sankoff = std::max<f128>(best_d, 0);
    }
  }

  for (size_t i = 1; i < rows.size(); ++i)
    if (rows[i].delta > rows[i - 1].delta &&
        rows[i].upper > rows[i - 1].upper * (1 + 1e-20Q))
      throw std::logic_error("upper bound failed to decrease with overhead");
  return rows;
}

void write_bound_csv(std::ostream& out, std::span<const BoundResult> rows) {
  out << "delta,s1,s2,upper,lb_bonferroni,lb_dawson_sankoff\n";
  for (const BoundResult& r : rows) {
    out << r.delta << "," << format_sig17(to_double(r.s1)) << ",";
    out << (r.has_s2 ? format_sig17(to_double(r.s2)) : "nan") << ",";
    out << format_sig17(to_double(r.upper)) << ",";
    out << (r.has_s2 ? format_sig17(to_double(r.lb_bonferroni)) : "nan") << ",";
    out << (r.has_s2 ? format_sig17(to_double(r.lb_dawson_sankoff)) : "nan") << "\n";
  }
}

}  // namespace raptor
