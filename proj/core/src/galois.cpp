#include "raptor/galois.hpp"

#include <algorithm>
#include <cmath>

#include "raptor/errors.hpp"

namespace raptor {

namespace {

bool is_prime(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; static_cast<uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Polynomials over GF(p), packed as base-p digit strings (digit i = coeff of x^i).
std::vector<uint32_t> unpack_poly(uint64_t packed, uint32_t p) {
  std::vector<uint32_t> coeffs;
  while (packed) {
    coeffs.push_back(static_cast<uint32_t>(packed % p));
    packed /= p;
  }
  return coeffs;
}

int poly_degree(const std::vector<uint32_t>& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i]) return static_cast<int>(i);
  return -1;
}

std::vector<uint32_t> poly_mod(std::vector<uint32_t> a, const std::vector<uint32_t>& mod, uint32_t p) {
  int dm = poly_degree(mod);
  uint32_t lead = mod[dm];
  // inverse of the leading coefficient mod p
  uint32_t lead_inv = 1;
  for (uint32_t c = 1; c < p; ++c)
    if (lead * c % p == 1) {
      lead_inv = c;
      break;
    }
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) {
    uint32_t factor = a[d] * lead_inv % p;
    for (int i = 0; i <= dm; ++i) {
      uint32_t sub = factor * mod[i] % p;
      uint32_t& tgt = a[d - dm + i];
      tgt = (tgt + p - sub) % p;
    }
  }
  return a;
}

std::vector<uint32_t> poly_mulmod(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                  const std::vector<uint32_t>& mod, uint32_t p) {
  std::vector<uint32_t> prod(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  return poly_mod(std::move(prod), mod, p);
}

bool poly_irreducible(const std::vector<uint32_t>& f, uint32_t p) {
  int deg = poly_degree(f);
  if (deg < 1) return false;
  // trial division by every monic polynomial of degree 1..deg/2
  for (int d = 1; d <= deg / 2; ++d) {
    uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (uint64_t low = 0; low < count; ++low) {
      std::vector<uint32_t> g = unpack_poly(low, p);
      g.resize(d + 1, 0);
      g[d] = 1;
      std::vector<uint32_t> r = poly_mod(f, g, p);
      if (poly_degree(r) < 0) return false;
    }
  }
  return true;
}

uint32_t pack_poly(const std::vector<uint32_t>& a, uint32_t p) {
  uint64_t v = 0;
  for (size_t i = a.size(); i-- > 0;) v = v * p + a[i];
  return static_cast<uint32_t>(v);
}

constexpr uint32_t kLogZero = 0xFFFFFFFFu;

struct DefaultModulus {
  uint32_t p, m;
  uint64_t modulus;
};

// GF(4): x^2+x+1, GF(8): x^3+x+1, GF(16): x^4+x+1, GF(256): x^8+x^4+x^3+x^2+1
constexpr DefaultModulus kDefaultModuli[] = {
    {2, 2, 0b111},
    {2, 3, 0b1011},
    {2, 4, 0b10011},
    {2, 8, 0b100011101},
};

}  // namespace

struct FieldSpec::Impl {
  uint32_t q = 0, p = 0, m = 0;
  uint64_t modulus = 0;
  std::vector<uint32_t> exp;        // exp[i] = alpha^i, size q-1
  std::vector<uint32_t> log;        // log[exp[i]] = i, log[0] = kLogZero
  std::vector<uint8_t> mul_table;   // q*q, only when q <= 256
  uint32_t add_packed(uint32_t a, uint32_t b) const {
    if (p == 2) return a ^ b;
    if (m == 1) return (a + b) % p;
    uint32_t out = 0, mult = 1;
    for (uint32_t i = 0; i < m; ++i) {
      out += (a % p + b % p) % p * mult;
      a /= p;
      b /= p;
      mult *= p;
    }
    return out;
  }
  uint32_t neg_packed(uint32_t a) const {
    if (p == 2) return a;
    if (m == 1) return (p - a) % p;
    uint32_t out = 0, mult = 1;
    for (uint32_t i = 0; i < m; ++i) {
      out += (p - a % p) % p * mult;
      a /= p;
      mult *= p;
    }
    return out;
  }
  uint32_t mul_packed(uint32_t a, uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    if (!mul_table.empty()) return mul_table[a * q + b];
    uint64_t e = static_cast<uint64_t>(log[a]) + log[b];
    return exp[e % (q - 1)];
  }
};

FieldSpec FieldSpec::make(uint32_t p, uint32_t m, std::optional<uint64_t> modulus) {
  if (!is_prime(p)) throw ConfigError("field characteristic must be prime");
  if (m < 1) throw ConfigError("extension degree must be >= 1");
  if (m > 16) throw ConfigError("extension degree above 16 not supported");
  uint64_t q64 = 1;
  for (uint32_t i = 0; i < m; ++i) q64 *= p;
  if (q64 > (1u << 16)) throw ConfigError("field order above 2^16 not supported");
  const uint32_t q = static_cast<uint32_t>(q64);

  auto impl = std::make_shared<Impl>();
  impl->q = q;
  impl->p = p;
  impl->m = m;

  uint32_t alpha = 0;
  if (m == 1) {
    if (modulus) throw ConfigError("modulus only applies to extension fields (m > 1)");
    // smallest primitive root mod p
    for (uint32_t g = 1; g < q; ++g) {
      uint32_t x = 1, order = 0;
      do {
        x = static_cast<uint32_t>(static_cast<uint64_t>(x) * g % p);
        ++order;
      } while (x != 1);
      if (order == q - 1) {
        alpha = g;
        break;
      }
    }
  } else {
    std::vector<uint32_t> mod_poly;
    auto accept = [&](uint64_t packed) -> bool {
      std::vector<uint32_t> f = unpack_poly(packed, p);
      if (poly_degree(f) != static_cast<int>(m)) return false;
      if (f[m] != 1) return false;  // monic
      if (!poly_irreducible(f, p)) return false;
      // x must be primitive so that the alpha-power index maps are bijections
      std::vector<uint32_t> x = {0, 1}, acc = {1};
      uint32_t order = 0;
      do {
        acc = poly_mulmod(acc, x, f, p);
        ++order;
      } while (!(acc.size() >= 1 && pack_poly(acc, p) == 1) && order <= q);
      if (order != q - 1) return false;
      mod_poly = std::move(f);
      return true;
    };
    if (modulus) {
      std::vector<uint32_t> f = unpack_poly(*modulus, p);
      if (poly_degree(f) != static_cast<int>(m)) throw ConfigError("modulus degree must equal m");
      if (f[m] != 1) throw ConfigError("modulus must be monic");
      if (!poly_irreducible(f, p)) throw ConfigError("modulus is reducible");
      if (!accept(*modulus))
        throw ConfigError("residue of x is not primitive for this modulus; alpha indexing needs a primitive alpha");
    } else {
      uint64_t packed = 0;
      for (const DefaultModulus& d : kDefaultModuli)
        if (d.p == p && d.m == m) packed = d.modulus;
      if (packed != 0) {
        if (!accept(packed)) throw ConfigError("built-in default modulus failed validation");
      } else {
        uint64_t qm = q64, start = qm;  // monic candidates live in [q, 2q) base-p space... search all
        bool found = false;
        for (uint64_t cand = start; cand < 2 * qm && !found; ++cand) found = accept(cand);
        if (!found) throw ConfigError("no default modulus available for requested (p, m)");
      }
    }
    impl->modulus = pack_poly(mod_poly, p);
    alpha = 2;  // unused marker; alpha is the residue of x, packed value p^1... see below
  }

  // exp/log tables by iterating powers of alpha
  impl->exp.assign(q - 1, 0);
  impl->log.assign(q, kLogZero);
  uint32_t alpha_packed;
  std::vector<uint32_t> mod_poly = m > 1 ? unpack_poly(impl->modulus, p) : std::vector<uint32_t>{};
  if (m == 1) {
    alpha_packed = alpha;
    uint32_t x = 1;
    for (uint32_t i = 0; i < q - 1; ++i) {
      impl->exp[i] = x;
      impl->log[x] = i;
      x = static_cast<uint32_t>(static_cast<uint64_t>(x) * alpha % p);
    }
    if (x != 1) throw ConfigError("internal: alpha not primitive");
  } else {
    alpha_packed = p;  // the residue class of x
    std::vector<uint32_t> xp = {0, 1}, acc = {1};
    for (uint32_t i = 0; i < q - 1; ++i) {
      uint32_t v = pack_poly(acc, p);
      impl->exp[i] = v;
      impl->log[v] = i;
      acc = poly_mulmod(acc, xp, mod_poly, p);
    }
    if (pack_poly(acc, p) != 1) throw ConfigError("internal: alpha not primitive");
  }
  (void)alpha_packed;

  if (q <= 256) {
    impl->mul_table.assign(static_cast<size_t>(q) * q, 0);
    for (uint32_t a = 1; a < q; ++a)
      for (uint32_t b = 1; b < q; ++b) {
        uint64_t e = static_cast<uint64_t>(impl->log[a]) + impl->log[b];
        impl->mul_table[a * q + b] = static_cast<uint8_t>(impl->exp[e % (q - 1)]);
      }
  }

  FieldSpec spec;
  spec.impl_ = std::move(impl);
  return spec;
}

uint32_t FieldSpec::q() const { return impl_->q; }
uint32_t FieldSpec::p() const { return impl_->p; }
uint32_t FieldSpec::m() const { return impl_->m; }
uint64_t FieldSpec::modulus() const { return impl_->m > 1 ? impl_->modulus : 0; }

FieldElement FieldSpec::alpha() const { return {impl_->exp[impl_->q == 2 ? 0 : 1 % (impl_->q - 1)]}; }

FieldElement FieldSpec::element(uint32_t value) const {
  if (value >= impl_->q) throw ConfigError("element value out of range");
  return {value};
}

FieldElement FieldSpec::add(FieldElement a, FieldElement b) const {
  return {impl_->add_packed(a.value, b.value)};
}

FieldElement FieldSpec::neg(FieldElement a) const { return {impl_->neg_packed(a.value)}; }

FieldElement FieldSpec::sub(FieldElement a, FieldElement b) const {
  return {impl_->add_packed(a.value, impl_->neg_packed(b.value))};
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const {
  return {impl_->mul_packed(a.value, b.value)};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.value == 0) throw ConfigError("inverse of zero");
  uint32_t l = impl_->log[a.value];
  return {impl_->exp[(impl_->q - 1 - l) % (impl_->q - 1)]};
}

FieldElement FieldSpec::int_scale(uint64_t n, FieldElement x) const {
  uint32_t r = static_cast<uint32_t>(n % impl_->p);
  if (r == 0) return {0};
  if (impl_->p == 2) return x;
  if (impl_->m == 1) return {static_cast<uint32_t>(static_cast<uint64_t>(r) * x.value % impl_->p)};
  return mul({r}, x);  // r packs as the constant polynomial r
}

uint32_t FieldSpec::index_of(FieldElement a) const {
  if (a.value == 0) return 0;
  return impl_->log[a.value] + 1;
}

FieldElement FieldSpec::element_of_index(uint32_t index) const {
  if (index == 0) return {0};
  if (index >= impl_->q) throw ConfigError("composition index out of range");
  return {impl_->exp[index - 1]};
}

bool operator==(const FieldSpec& a, const FieldSpec& b) {
  return a.impl_ == b.impl_ ||
         (a.q() == b.q() && a.p() == b.p() && a.m() == b.m() && a.modulus() == b.modulus());
}

Rat phi(uint64_t l, const FieldSpec& field) {
  const uint32_t q = field.q();
  if (l == 0) return Rat(1);
  // (1/q) (1 + (-1)^l / (q-1)^(l-1))
  Int qm1_pow;
  mpz_ui_pow_ui(qm1_pow.get_mpz_t(), q - 1, static_cast<unsigned long>(l - 1));
  Rat inner = rat(Int(l % 2 ? -1 : 1), qm1_pow);
  inner += 1;
  return inner / q;
}

Rat zero_sum_count_brute(uint32_t l, const FieldSpec& field) {
  const uint32_t q = field.q();
  if (l == 0) return Rat(1);
  const double guard = 1e7;
  double full = std::pow(static_cast<double>(q - 1), l);
  double partial = std::pow(static_cast<double>(q - 1), l - 1);
  Int denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), q - 1, l);

  std::vector<uint32_t> idx(l, 1);  // indices 1..q-1 over nonzero elements
  auto advance = [&]() -> bool {
    for (size_t i = 0; i < idx.size(); ++i) {
      if (++idx[i] <= q - 1) return true;
      idx[i] = 1;
    }
    return false;
  };

  uint64_t count = 0;
  if (full <= guard) {
    do {
      FieldElement sum = field.zero();
      for (uint32_t i : idx) sum = field.add(sum, field.element_of_index(i));
      if (sum == field.zero()) ++count;
    } while (advance());
  } else if (partial <= guard) {
    // enumerate the l-1 free coordinates; the last is forced to -partial_sum
    // and contributes exactly when that value is nonzero
    idx.assign(l - 1, 1);
    if (l == 1) return rat(Int(0), denom);
    do {
      FieldElement sum = field.zero();
      for (uint32_t i : idx) sum = field.add(sum, field.element_of_index(i));
      if (sum != field.zero()) ++count;
    } while (advance());
  } else {
    throw FeasibilityError("zero_sum_count_brute instance too large", static_cast<uint64_t>(partial));
  }
  return rat(Int(count), denom);
}

}  // namespace raptor
