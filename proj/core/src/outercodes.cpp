#include "raptor/outercodes.hpp"

#include <algorithm>

#include "raptor/errors.hpp"

namespace raptor {

namespace {

constexpr uint64_t kCodebookGuard = 1ull << 16;
constexpr uint64_t kPairGuard = 1ull << 24;

uint64_t pow_u64(uint64_t base, uint32_t e, uint64_t cap) {
  uint64_t r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    if (r > cap / base + 1) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

LinearCode LinearCode::from_generator(Mat g) {
  if (rank_of(g) != g.rows()) throw ConfigError("generator matrix is not full row rank");
  LinearCode code;
  code.field = g.field();
  code.h = static_cast<uint32_t>(g.cols());
  code.k = static_cast<uint32_t>(g.rows());
  code.parity = nullspace(g);
  code.generator = std::move(g);
  return code;
}

LinearCode LinearCode::from_parity_check(const Mat& pc) {
  Mat gen = nullspace(pc);
  return from_generator(std::move(gen));
}

LinearCode dual_code(const LinearCode& code) {
  Mat g = code.parity;
  return LinearCode::from_generator(std::move(g));
}

uint32_t OuterEnsembleSpec::nominal_k() const {
  switch (variant.kind) {
    case EnsembleVariant::kUniformParityCheck:
      return variant.k;
    case EnsembleVariant::kRegularLdpc:
      return variant.h - static_cast<uint32_t>(static_cast<uint64_t>(variant.h) * variant.dv /
                                               variant.dc);
    case EnsembleVariant::kExplicit:
      return explicit_code ? explicit_code->k : variant.k;
  }
  return 0;
}

LinearCode hamming_generator(uint32_t t) {
  if (t < 2 || t > 12) throw ConfigError("hamming parameter t must be in [2, 12]");
  const uint32_t h = (1u << t) - 1;
  FieldSpec f2 = FieldSpec::make(2, 1);
  Mat pc(f2, t, h);
  for (uint32_t c = 0; c < h; ++c)
    for (uint32_t r = 0; r < t; ++r) pc.set(r, c, ((c + 1) >> r) & 1);
  return LinearCode::from_parity_check(pc);
}

WeightEnumerator hamming_weight_enum_recursive(uint32_t h) {
  uint32_t t = 0;
  while ((1u << t) < h + 1) ++t;
  if ((1u << t) != h + 1 || t < 2) throw ConfigError("hamming length must be 2^t - 1");
  WeightEnumerator a(h);
  std::vector<Int> w(h + 1, Int(0));
  w[0] = 1;
  w[1] = 0;
  for (uint32_t i = 1; i < h; ++i) {
    Int rhs = binomial(h, i) - w[i] - Int(h - i + 1) * w[i - 1];
    Int next = rhs / (i + 1);
    if (next * (i + 1) != rhs) throw ConfigError("hamming recursion produced a non-integer");
    w[i + 1] = next;
  }
  for (uint32_t i = 0; i <= h; ++i) a.counts[i] = Rat(w[i]);
  return a;
}

LinearCode sample_uniform_pc(uint32_t h, uint32_t k, const FieldSpec& field, Rng& rng) {
  if (k == 0 || k > h) throw ConfigError("uniform parity-check sampling needs 0 < k <= h");
  Mat pc(field, h - k, h);
  for (size_t r = 0; r < pc.rows(); ++r)
    for (size_t c = 0; c < pc.cols(); ++c)
      pc.set(r, c, static_cast<uint16_t>(rng.below(field.q())));
  return LinearCode::from_parity_check(pc);
}

std::vector<uint32_t> ldpc_edge_sockets(uint32_t dv, uint32_t dc, uint32_t h, Rng& rng) {
  if (dv == 0 || dc == 0 || h == 0) throw ConfigError("LDPC degrees must be positive");
  uint64_t edges = static_cast<uint64_t>(h) * dv;
  if (edges % dc != 0) throw ConfigError("h*dv must be divisible by dc");
  std::vector<uint32_t> sockets(edges);
  for (uint64_t e = 0; e < edges; ++e) sockets[e] = static_cast<uint32_t>(e / dv);
  for (uint64_t i = edges; i > 1; --i) {
    uint64_t j = rng.below(i);
    std::swap(sockets[i - 1], sockets[j]);
  }
  return sockets;
}

LinearCode sample_regular_ldpc(uint32_t dv, uint32_t dc, uint32_t h, const FieldSpec& field,
                               Rng& rng) {
  std::vector<uint32_t> sockets = ldpc_edge_sockets(dv, dc, h, rng);
  uint64_t edges = static_cast<uint64_t>(h) * dv;
  uint32_t n_checks = static_cast<uint32_t>(edges / dc);

  Mat pc(field, n_checks, h);
  for (uint32_t c = 0; c < n_checks; ++c)
    for (uint32_t s = 0; s < dc; ++s) {
      uint32_t var = sockets[static_cast<uint64_t>(c) * dc + s];
      FieldElement label = field.element_of_index(1 + static_cast<uint32_t>(rng.below(field.q() - 1)));
      pc.set(c, var, field.add(pc.el(c, var), label).value);
    }
  return LinearCode::from_parity_check(pc);
}

std::vector<std::vector<uint16_t>> codebook(const LinearCode& code) {
  const FieldSpec& f = code.field;
  uint64_t size = pow_u64(f.q(), code.k, kCodebookGuard);
  if (size > kCodebookGuard) throw FeasibilityError("codebook too large", size);

  std::vector<std::vector<uint16_t>> book;
  book.reserve(size);
  std::vector<uint16_t> message(code.k, 0), word(code.h, 0);
  book.push_back(word);
  // odometer over message digits with incremental generator-row updates
  for (uint64_t n = 1; n < size; ++n) {
    for (uint32_t d = 0; d < code.k; ++d) {
      uint16_t old = message[d];
      uint16_t neu = static_cast<uint32_t>(old) + 1 == f.q() ? 0 : old + 1;
      message[d] = neu;
      FieldElement delta = f.sub({neu}, {old});
      for (uint32_t c = 0; c < code.h; ++c) {
        FieldElement add = f.mul(delta, code.generator.el(d, c));
        word[c] = f.add({word[c]}, add).value;
      }
      if (neu != 0) break;  // no carry
    }
    book.push_back(word);
  }
  return book;
}

WeightEnumerator exhaustive_weight_enum(const LinearCode& code) {
  auto book = codebook(code);
  WeightEnumerator a(code.h);
  for (const auto& w : book) {
    uint32_t weight = 0;
    for (uint16_t v : w) weight += v != 0;
    a.counts[weight] += 1;
  }
  return a;
}

CompositionEnumerator exhaustive_composition_enum(const LinearCode& code) {
  auto book = codebook(code);
  const FieldSpec& f = code.field;
  CompositionEnumerator out;
  out.h = code.h;
  out.q = f.q();
  Composition comp(f.q());
  for (const auto& w : book) {
    std::fill(comp.begin(), comp.end(), 0);
    for (uint16_t v : w) comp[f.index_of({v})]++;
    out.entries[comp] += 1;
  }
  return out;
}

BivariateWeightEnumerator exhaustive_bivariate_weight_enum(const LinearCode& code, uint32_t ha) {
  if (ha > code.h) throw ConfigError("part length exceeds block length");
  auto book = codebook(code);
  BivariateWeightEnumerator out(ha, code.h - ha);
  for (const auto& w : book) {
    uint32_t l = 0, t = 0;
    for (uint32_t i = 0; i < code.h; ++i)
      if (w[i]) (i < ha ? l : t)++;
    out.at(l, t) += 1;
  }
  return out;
}

BivariateCompositionEnumerator exhaustive_bivariate_composition_enum(const LinearCode& code,
                                                                     uint32_t ha) {
  if (ha > code.h) throw ConfigError("part length exceeds block length");
  auto book = codebook(code);
  const FieldSpec& f = code.field;
  BivariateCompositionEnumerator out;
  out.ha = ha;
  out.hb = code.h - ha;
  out.q = f.q();
  Composition fa(f.q()), fb(f.q());
  for (const auto& w : book) {
    std::fill(fa.begin(), fa.end(), 0);
    std::fill(fb.begin(), fb.end(), 0);
    for (uint32_t i = 0; i < code.h; ++i) (i < ha ? fa : fb)[f.index_of({w[i]})]++;
    out.entries[{fa, fb}] += 1;
  }
  return out;
}

JointWeightEnumeratorMap exhaustive_biweight_enum(const LinearCode& code, bool t_restricted) {
  uint64_t pairs = pow_u64(code.field.q(), 2 * code.k, kPairGuard);
  if (pairs > kPairGuard) throw FeasibilityError("codebook pair space too large", pairs);
  auto book = codebook(code);
  JointWeightEnumeratorMap out;
  out.h = code.h;
  out.excluded_total = Rat(0);
  for (const auto& v1 : book)
    for (const auto& v2 : book) {
      JointWeight tau = {0, 0, 0, 0};
      for (uint32_t i = 0; i < code.h; ++i) {
        int a = v1[i] != 0, b = v2[i] != 0;
        tau[a * 2 + b]++;
      }
      if (!t_restricted || in_T_2h(tau))
        out.entries[tau] += 1;
      else
        out.excluded_total += 1;
    }
  return out;
}

JointCompositionEnumeratorMap exhaustive_bicomposition_enum(const LinearCode& code) {
  uint64_t pairs = pow_u64(code.field.q(), 2 * code.k, kPairGuard);
  if (pairs > kPairGuard) throw FeasibilityError("codebook pair space too large", pairs);
  auto book = codebook(code);
  const FieldSpec& f = code.field;
  JointCompositionEnumeratorMap out;
  out.h = code.h;
  out.q = f.q();
  out.excluded_total = Rat(0);
  JointComposition kappa(f.q());
  for (const auto& v1 : book)
    for (const auto& v2 : book) {
      std::fill(kappa.cells.begin(), kappa.cells.end(), 0);
      for (uint32_t i = 0; i < code.h; ++i)
        kappa.at(f.index_of({v1[i]}), f.index_of({v2[i]}))++;
      if (in_K_qh(kappa))
        out.entries[kappa.cells] += 1;
      else
        out.excluded_total += 1;
    }
  return out;
}

}  // namespace raptor
