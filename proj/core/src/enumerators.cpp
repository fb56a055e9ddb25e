#include "raptor/enumerators.hpp"

#include <ostream>

#include "raptor/errors.hpp"

namespace raptor {

namespace {

Rat q_pow_inv(uint32_t q, uint32_t e) {
  Int d;
  mpz_ui_pow_ui(d.get_mpz_t(), q, e);
  return rat(Int(1), d);
}

Int int_pow(uint32_t base, uint64_t e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, static_cast<unsigned long>(e));
  return r;
}

constexpr uint64_t kKeyGuard = 10'000'000;

}  // namespace

Rat WeightEnumerator::total() const {
  Rat t(0);
  for (const Rat& c : counts) t += c;
  return t;
}

WeightEnumerator BivariateWeightEnumerator::marginal() const {
  WeightEnumerator w(ha + hb);
  for (uint32_t l = 0; l <= ha; ++l)
    for (uint32_t t = 0; t <= hb; ++t) w.counts[l + t] += at(l, t);
  return w;
}

WeightEnumerator CompositionEnumerator::weight_marginal() const {
  WeightEnumerator w(h);
  for (const auto& [f, c] : entries) {
    uint32_t weight = h - f[0];
    w.counts[weight] += c;
  }
  return w;
}

BivariateWeightEnumerator BivariateCompositionEnumerator::weight_marginal() const {
  BivariateWeightEnumerator w(ha, hb);
  for (const auto& [key, c] : entries) {
    uint32_t l = ha - key.first[0];
    uint32_t t = hb - key.second[0];
    w.at(l, t) += c;
  }
  return w;
}

uint32_t JointComposition::total() const {
  uint32_t s = 0;
  for (uint32_t c : cells) s += c;
  return s;
}

bool b_indicator(std::span<const uint32_t> f, const FieldSpec& field) {
  const uint32_t q = field.q();
  if (f.size() != q) throw ConfigError("composition length must equal q");
  FieldElement sum = field.zero();
  for (uint32_t i = 1; i < q; ++i)
    sum = field.add(sum, field.int_scale(f[i], field.element_of_index(i)));
  return sum == field.zero();
}

Composition gamma1(const JointComposition& kappa) {
  Composition g(kappa.q, 0);
  for (uint32_t s = 0; s < kappa.q; ++s)
    for (uint32_t t = 0; t < kappa.q; ++t) g[s] += kappa.at(s, t);
  return g;
}

Composition gamma2(const JointComposition& kappa) {
  Composition g(kappa.q, 0);
  for (uint32_t s = 0; s < kappa.q; ++s)
    for (uint32_t t = 0; t < kappa.q; ++t) g[t] += kappa.at(s, t);
  return g;
}

JointWeight tau_of_kappa(const JointComposition& kappa) {
  JointWeight tau = {kappa.at(0, 0), 0, 0, 0};
  for (uint32_t t = 1; t < kappa.q; ++t) tau[1] += kappa.at(0, t);
  for (uint32_t s = 1; s < kappa.q; ++s) tau[2] += kappa.at(s, 0);
  for (uint32_t s = 1; s < kappa.q; ++s)
    for (uint32_t t = 1; t < kappa.q; ++t) tau[3] += kappa.at(s, t);
  return tau;
}

bool is_circulant_permutation_pattern(std::span<const uint8_t> pattern, uint32_t n,
                                      bool allow_incomplete) {
  if (pattern.size() != static_cast<size_t>(n) * n) throw ConfigError("pattern size mismatch");
  uint32_t ones = 0;
  int64_t shift = -1;
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) {
      if (!pattern[i * n + j]) continue;
      ++ones;
      int64_t s = (static_cast<int64_t>(j) - i % n + n) % n;
      if (shift < 0)
        shift = s;
      else if (s != shift)
        return false;  // ones on more than one wrapped diagonal
    }
  if (ones == 0) return false;
  if (ones == n) return true;  // full wrapped diagonal: circulant permutation
  return allow_incomplete;
}

bool in_K_qh(const JointComposition& kappa) {
  const uint32_t q = kappa.q;
  uint32_t b1 = 0, b2 = 0, b3 = 0;
  for (uint32_t t = 1; t < q; ++t) b1 += kappa.at(0, t);
  for (uint32_t s = 1; s < q; ++s) b2 += kappa.at(s, 0);
  for (uint32_t s = 1; s < q; ++s)
    for (uint32_t t = 1; t < q; ++t) b3 += kappa.at(s, t);
  int nonzero = (b1 > 0) + (b2 > 0) + (b3 > 0);
  if (nonzero >= 2) return true;
  if (b1 == 0 && b2 == 0 && b3 > 0) {
    std::vector<uint8_t> pattern((q - 1) * (q - 1), 0);
    for (uint32_t s = 1; s < q; ++s)
      for (uint32_t t = 1; t < q; ++t)
        pattern[(s - 1) * (q - 1) + (t - 1)] = kappa.at(s, t) > 0;
    return !is_circulant_permutation_pattern(pattern, q - 1, /*allow_incomplete=*/true);
  }
  return false;
}

bool in_T_2h(const JointWeight& tau) {
  return (tau[1] > 0) + (tau[2] > 0) + (tau[3] > 0) >= 2;
}

WeightEnumerator uniform_pc_weight_enum(uint32_t h, uint32_t k, uint32_t q) {
  if (k == 0 || k > h) throw ConfigError("uniform parity-check ensemble needs 0 < k <= h");
  WeightEnumerator a(h);
  a.counts[0] = Rat(1);
  Rat scale = q_pow_inv(q, h - k);
  for (uint32_t l = 1; l <= h; ++l)
    a.counts[l] = Rat(binomial(h, l) * int_pow(q - 1, l)) * scale;
  return a;
}

WeightEnumerator ldpc_weight_enum(uint32_t dv, uint32_t dc, uint32_t h, uint32_t q) {
  if (dv == 0 || dc == 0 || h == 0) throw ConfigError("LDPC parameters must be positive");
  uint64_t edges = static_cast<uint64_t>(h) * dv;
  if (edges % dc != 0) throw ConfigError("h*dv must be divisible by dc");
  if (edges > 10'000)
    throw FeasibilityError("LDPC exact polynomial powering infeasible", edges);
  const uint64_t n_checks = edges / dc;

  // q*p(x) has integer coefficients C(dc,i) [(q-1)^i + (q-1)(-1)^i]
  std::vector<Int> base(dc + 1);
  for (uint32_t i = 0; i <= dc; ++i) {
    Int term = int_pow(q - 1, i);
    Int alt = Int(q - 1);
    if (i & 1) alt = -alt;
    base[i] = binomial(dc, i) * (term + alt);
  }
  std::vector<Int> power = {Int(1)};
  for (uint64_t n = 0; n < n_checks; ++n) {
    std::vector<Int> next(power.size() + dc, Int(0));
    for (size_t i = 0; i < power.size(); ++i) {
      if (power[i] == 0) continue;
      for (uint32_t j = 0; j <= dc; ++j) next[i + j] += power[i] * base[j];
    }
    power = std::move(next);
  }

  Int q_pow_n = int_pow(q, n_checks);
  WeightEnumerator a(h);
  for (uint32_t l = 0; l <= h; ++l) {
    uint64_t idx = static_cast<uint64_t>(l) * dv;
    Int coeff = idx < power.size() ? power[idx] : Int(0);
    if (coeff == 0) {
      a.counts[l] = Rat(0);
      continue;
    }
    Int num = binomial(h, l) * coeff;
    Int den = q_pow_n * binomial(edges, idx) * int_pow(q - 1, static_cast<uint64_t>(l) * (dv - 1));
    a.counts[l] = rat(num, den);
  }
  return a;
}

CompositionEnumerator composition_from_weight(const WeightEnumerator& a, const FieldSpec& field) {
  const uint32_t q = field.q();
  Int predicted(0);
  for (uint32_t l = 0; l <= a.h; ++l)
    if (a.counts[l] != 0) predicted += composition_count(l, q - 1);
  if (predicted > kKeyGuard)
    throw FeasibilityError("composition enumerator too large", predicted.get_ui());

  CompositionEnumerator out;
  out.h = a.h;
  out.q = q;
  for (uint32_t l = 0; l <= a.h; ++l) {
    if (a.counts[l] == 0) continue;
    Rat scale = a.counts[l] * rat(Int(1), int_pow(q - 1, l));
    for_each_composition(l, q - 1, [&](std::span<const uint32_t> nz) {
      Composition f(q);
      f[0] = a.h - l;
      for (uint32_t i = 0; i + 1 < q; ++i) f[i + 1] = nz[i];
      out.entries[f] = scale * Rat(multinomial(l, nz));
    });
  }
  return out;
}

BivariateCompositionEnumerator bivariate_composition_from_weight(
    const BivariateWeightEnumerator& a, const FieldSpec& field) {
  const uint32_t q = field.q();
  Int predicted(0);
  for (uint32_t l = 0; l <= a.ha; ++l)
    for (uint32_t s = 0; s <= a.hb; ++s)
      if (a.at(l, s) != 0) predicted += composition_count(l, q - 1) * composition_count(s, q - 1);
  if (predicted > kKeyGuard)
    throw FeasibilityError("bivariate composition enumerator too large",
                           predicted.fits_ulong_p() ? predicted.get_ui() : kKeyGuard + 1);

  BivariateCompositionEnumerator out;
  out.ha = a.ha;
  out.hb = a.hb;
  out.q = q;
  for (uint32_t l = 0; l <= a.ha; ++l)
    for (uint32_t s = 0; s <= a.hb; ++s) {
      if (a.at(l, s) == 0) continue;
      Rat scale = a.at(l, s) * rat(Int(1), int_pow(q - 1, l + s));
      for_each_composition(l, q - 1, [&](std::span<const uint32_t> nza) {
        Composition fa(q);
        fa[0] = a.ha - l;
        for (uint32_t i = 0; i + 1 < q; ++i) fa[i + 1] = nza[i];
        Rat part = scale * Rat(multinomial(l, nza));
        for_each_composition(s, q - 1, [&](std::span<const uint32_t> nzb) {
          Composition fb(q);
          fb[0] = a.hb - s;
          for (uint32_t i = 0; i + 1 < q; ++i) fb[i + 1] = nzb[i];
          out.entries[{fa, fb}] = part * Rat(multinomial(s, nzb));
        });
      });
    }
  return out;
}

JointCompositionEnumeratorMap uniform_pc_bicomposition(uint32_t h, uint32_t k,
                                                       const FieldSpec& field) {
  const uint32_t q = field.q();
  Int predicted = composition_count(h, q * q);
  if (predicted > kKeyGuard)
    throw FeasibilityError("bicomposition key space too large",
                           predicted.fits_ulong_p() ? predicted.get_ui() : kKeyGuard + 1);
  JointCompositionEnumeratorMap out;
  out.h = h;
  out.q = q;
  out.excluded_total = Rat(0);
  Rat scale = q_pow_inv(q, 2 * (h - k));
  JointComposition kappa(q);
  for_each_joint_composition(h, q, [&](std::span<const uint32_t> cells) {
    std::copy(cells.begin(), cells.end(), kappa.cells.begin());
    if (!in_K_qh(kappa)) return;
    out.entries[kappa.cells] = Rat(multinomial(h, cells)) * scale;
  });
  return out;
}

JointWeightEnumeratorMap uniform_pc_joint_weight_binary(uint32_t h, uint32_t k) {
  JointWeightEnumeratorMap out;
  out.h = h;
  Rat scale = q_pow_inv(4, h - k);
  for_each_composition(h, 4, [&](std::span<const uint32_t> t) {
    JointWeight tau = {t[0], t[1], t[2], t[3]};
    if (!in_T_2h(tau)) return;
    out.entries[tau] = Rat(multinomial(h, t)) * scale;
  });
  return out;
}

BivariateWeightEnumerator met_split_weight_enum(const WeightEnumerator& a, uint32_t ha,
                                                uint32_t hb) {
  if (ha + hb != a.h) throw ConfigError("part lengths must sum to the enumerator length");
  BivariateWeightEnumerator out(ha, hb);
  for (uint32_t l = 0; l <= ha; ++l)
    for (uint32_t t = 0; t <= hb; ++t) {
      if (a.counts[l + t] == 0) continue;
      Rat v = Rat(binomial(ha, l) * binomial(hb, t)) * a.counts[l + t];
      out.at(l, t) = v * rat(Int(1), binomial(a.h, l + t));
    }
  return out;
}

namespace {

// coefficient table of (1-x)^l (1+(q-1)x)^(n-l) for l = 0..n
std::vector<std::vector<Int>> macwilliams_kernel(uint32_t n, uint32_t q) {
  std::vector<std::vector<Int>> table(n + 1);
  for (uint32_t l = 0; l <= n; ++l) {
    std::vector<Int> poly(n + 1, Int(0));
    for (uint32_t i = 0; i <= l; ++i) {
      Int a = binomial(l, i);
      if (i & 1) a = -a;
      for (uint32_t j = 0; j <= n - l; ++j)
        poly[i + j] += a * binomial(n - l, j) * int_pow(q - 1, j);
    }
    table[l] = std::move(poly);
  }
  return table;
}

}  // namespace

BivariateWeightEnumerator macwilliams_bivariate(const BivariateWeightEnumerator& a, uint32_t k,
                                                uint32_t q) {
  auto px = macwilliams_kernel(a.ha, q);
  auto pz = macwilliams_kernel(a.hb, q);
  BivariateWeightEnumerator out(a.ha, a.hb);
  Rat scale = q_pow_inv(q, k);
  for (uint32_t l = 0; l <= a.ha; ++l)
    for (uint32_t t = 0; t <= a.hb; ++t) {
      const Rat& c = a.at(l, t);
      if (c == 0) continue;
      for (uint32_t x = 0; x <= a.ha; ++x) {
        if (px[l][x] == 0) continue;
        Rat cx = c * Rat(px[l][x]);
        for (uint32_t z = 0; z <= a.hb; ++z) {
          if (pz[t][z] == 0) continue;
          out.at(x, z) += cx * Rat(pz[t][z]);
        }
      }
    }
  Rat total(0);
  for (Rat& c : out.counts) {
    c *= scale;
    if (c.get_den() != 1 || c < 0)
      throw ConfigError("MacWilliams output not a nonnegative integer enumerator; invalid input");
    total += c;
  }
  if (total != Rat(int_pow(q, a.ha + a.hb - k)))
    throw ConfigError("MacWilliams output total != q^(h-k); invalid input");
  return out;
}

WeightEnumerator macwilliams_univariate(const WeightEnumerator& a, uint32_t k, uint32_t q) {
  BivariateWeightEnumerator wrapped(a.h, 0);
  for (uint32_t l = 0; l <= a.h; ++l) wrapped.at(l, 0) = a.counts[l];
  BivariateWeightEnumerator dual = macwilliams_bivariate(wrapped, k, q);
  WeightEnumerator out(a.h);
  for (uint32_t l = 0; l <= a.h; ++l) out.counts[l] = dual.at(l, 0);
  return out;
}

JointWeightEnumeratorMap binary_biweight_from_dual(const JointWeightEnumeratorMap& dual_pairs,
                                                   uint32_t h, uint32_t dual_dim) {
  // J_C(a,b,c,d) = |Cdual|^-2 J_Cdual(a+b+c+d, a-b+c-d, a+b-c-d, a-b-c+d);
  // expansions tracked over exponents of (b,c,d), the a-exponent is implied
  // by homogeneity.
  if (h > 130)
    throw FeasibilityError("biweight transform work arrays limited to h <= 130",
                           static_cast<uint64_t>(h + 1) * (h + 1) * (h + 1));
  const uint32_t n1 = h + 1;
  auto idx = [n1](uint32_t t1, uint32_t t2, uint32_t t3) {
    return (static_cast<size_t>(t1) * n1 + t2) * n1 + t3;
  };
  // sign of b, c, d in each substituted variable, indexed by tau'-slot
  static constexpr int kSign[4][3] = {
      {+1, +1, +1},  // a+b+c+d
      {-1, +1, -1},  // a-b+c-d
      {+1, -1, -1},  // a+b-c-d
      {-1, -1, +1},  // a-b-c+d
  };

  std::vector<Int> acc(static_cast<size_t>(n1) * n1 * n1, Int(0));
  std::vector<Int> cur, next(acc.size());
  for (const auto& [tau_dual, count] : dual_pairs.entries) {
    if (count == 0) continue;
    if (count.get_den() != 1)
      throw ConfigError("dual biweight enumerator must have integer counts");
    cur.assign(acc.size(), Int(0));
    cur[idx(0, 0, 0)] = 1;
    uint32_t degree = 0;
    for (int slot = 0; slot < 4; ++slot) {
      uint32_t n = tau_dual[slot];
      if (n == 0) continue;
      for (Int& v : next) v = 0;
      // expansion of (a + s1 b + s2 c + s3 d)^n term by term
      for_each_composition(n, 4, [&](std::span<const uint32_t> e) {
        Int coeff = multinomial(n, e);
        long sign = 1;
        if (kSign[slot][0] < 0 && (e[1] & 1)) sign = -sign;
        if (kSign[slot][1] < 0 && (e[2] & 1)) sign = -sign;
        if (kSign[slot][2] < 0 && (e[3] & 1)) sign = -sign;
        if (sign < 0) coeff = -coeff;
        for (uint32_t t1 = 0; t1 <= degree; ++t1)
          for (uint32_t t2 = 0; t2 + t1 <= degree; ++t2)
            for (uint32_t t3 = 0; t3 + t2 + t1 <= degree; ++t3) {
              const Int& c = cur[idx(t1, t2, t3)];
              if (c == 0) continue;
              next[idx(t1 + e[1], t2 + e[2], t3 + e[3])] += c * coeff;
            }
      });
      degree += n;
      std::swap(cur, next);
    }
    Int icount(count.get_num());
    for (uint32_t t1 = 0; t1 <= h; ++t1)
      for (uint32_t t2 = 0; t2 + t1 <= h; ++t2)
        for (uint32_t t3 = 0; t3 + t2 + t1 <= h; ++t3) {
          const Int& c = cur[idx(t1, t2, t3)];
          if (c != 0) acc[idx(t1, t2, t3)] += icount * c;
        }
  }

  Int denom = int_pow(2, 2 * dual_dim);
  JointWeightEnumeratorMap out;
  out.h = h;
  for (uint32_t t1 = 0; t1 <= h; ++t1)
    for (uint32_t t2 = 0; t2 + t1 <= h; ++t2)
      for (uint32_t t3 = 0; t3 + t2 + t1 <= h; ++t3) {
        const Int& c = acc[idx(t1, t2, t3)];
        if (c == 0) continue;
        Rat v = rat(c, denom);
        if (v.get_den() != 1 || v < 0)
          throw ConfigError("biweight transform output not a nonnegative integer");
        out.entries[{h - t1 - t2 - t3, t1, t2, t3}] = v;
      }
  return out;
}

void write_csv(std::ostream& out, const WeightEnumerator& a, uint32_t q) {
  out << "weight," << q << "," << a.h << "\n";
  for (uint32_t l = 0; l <= a.h; ++l) out << l << "," << fraction_string(a.counts[l]) << "\n";
}

void write_csv(std::ostream& out, const BivariateWeightEnumerator& a, uint32_t q) {
  out << "bivariate_weight," << q << "," << a.ha << "," << a.hb << "\n";
  for (uint32_t l = 0; l <= a.ha; ++l)
    for (uint32_t t = 0; t <= a.hb; ++t)
      out << l << "," << t << "," << fraction_string(a.at(l, t)) << "\n";
}

void write_csv(std::ostream& out, const CompositionEnumerator& a) {
  out << "composition," << a.q << "," << a.h << "\n";
  for (const auto& [f, c] : a.entries) {
    for (uint32_t v : f) out << v << ",";
    out << fraction_string(c) << "\n";
  }
}

void write_csv(std::ostream& out, const BivariateCompositionEnumerator& a) {
  out << "bivariate_composition," << a.q << "," << a.ha << "," << a.hb << "\n";
  for (const auto& [key, c] : a.entries) {
    for (uint32_t v : key.first) out << v << ",";
    for (uint32_t v : key.second) out << v << ",";
    out << fraction_string(c) << "\n";
  }
}

void write_csv(std::ostream& out, const JointWeightEnumeratorMap& a, uint32_t q) {
  out << "biweight," << q << "," << a.h << "\n";
  for (const auto& [tau, c] : a.entries)
    out << tau[0] << "," << tau[1] << "," << tau[2] << "," << tau[3] << ","
        << fraction_string(c) << "\n";
}

void write_csv(std::ostream& out, const JointCompositionEnumeratorMap& a) {
  out << "bicomposition," << a.q << "," << a.h << "\n";
  for (const auto& [cells, c] : a.entries) {
    for (uint32_t v : cells) out << v << ",";
    out << fraction_string(c) << "\n";
  }
}

}  // namespace raptor
