#include "raptor/raptor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "raptor/errors.hpp"

namespace raptor {

void Construction::validate_for_length(uint32_t h) const {
  if (is_multi_edge()) {
    if (ha + hb != h) throw ConfigError("multi-edge part sizes must sum to the outer length");
    if (omega2.terms().empty()) throw ConfigError("multi-edge construction needs a bivariate distribution");
    if (omega2.j_max() > ha || omega2.s_max() > hb)
      throw ConfigError("bivariate degree support exceeds part sizes");
  } else {
    if (omega.terms().empty()) throw ConfigError("construction needs a degree distribution");
    if (omega.d_max() > h) throw ConfigError("degree support exceeds outer length");
  }
}

namespace {

// partial Fisher-Yates: d distinct indices uniform over [base, base + n)
void sample_support(uint32_t d, uint32_t n, uint32_t base, Rng& rng,
                    std::vector<uint32_t>& pool, std::vector<uint32_t>& out) {
  pool.resize(n);
  std::iota(pool.begin(), pool.end(), base);
  for (uint32_t i = 0; i < d; ++i) {
    uint64_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
    out.push_back(pool[i]);
  }
}

FieldElement sample_coeff(const FieldSpec& field, bool zero_one, Rng& rng) {
  if (zero_one || field.q() == 2) return field.one();
  return field.element(1 + static_cast<uint32_t>(rng.below(field.q() - 1)));
}

}  // namespace

LTColumn sample_column(const Construction& construction, uint32_t h, Rng& rng) {
  construction.validate_for_length(h);
  LTColumn col;
  std::vector<uint32_t> pool, support;
  const FieldSpec& field = construction.field;
  const bool zero_one = construction.is_zero_one();
  if (construction.is_multi_edge()) {
    auto [j, s] = construction.omega2.sample(rng);
    support.reserve(j + s);
    sample_support(j, construction.ha, 0, rng, pool, support);
    sample_support(s, construction.hb, construction.ha, rng, pool, support);
  } else {
    uint32_t d = construction.omega.sample(rng);
    support.reserve(d);
    sample_support(d, h, 0, rng, pool, support);
  }
  col.entries.reserve(support.size());
  for (uint32_t idx : support) col.entries.emplace_back(idx, sample_coeff(field, zero_one, rng));
  return col;
}

RaptorInstance::RaptorInstance(LinearCode outer, Construction construction)
    : outer_(std::move(outer)), construction_(std::move(construction)) {
  if (!(outer_.field == construction_.field))
    throw ConfigError("outer code and construction field mismatch");
  construction_.validate_for_length(outer_.h);

  const uint32_t q = outer_.field.q();
  const uint32_t h = outer_.h, k = outer_.k;
  if (q == 2) {
    words_ = (k + 63) / 64;
    gt_bits_.assign(static_cast<size_t>(h) * words_, 0);
    for (uint32_t c = 0; c < h; ++c)
      for (uint32_t r = 0; r < k; ++r)
        if (outer_.generator.at(r, c))
          gt_bits_[c * words_ + r / 64] |= uint64_t{1} << (r % 64);
  } else if (q <= 256) {
    gt_bytes_.assign(static_cast<size_t>(h) * k, 0);
    for (uint32_t c = 0; c < h; ++c)
      for (uint32_t r = 0; r < k; ++r)
        gt_bytes_[c * static_cast<size_t>(k) + r] = static_cast<uint8_t>(outer_.generator.at(r, c));
    inv_table_.assign(q, 0);
    for (uint32_t v = 1; v < q; ++v) inv_table_[v] = static_cast<uint8_t>(outer_.field.inv({v}).value);
  }
}

namespace {

// rank of an nrows x (words*64) bit matrix by basis insertion
size_t rank_bits(std::vector<uint64_t>& rows, size_t nrows, size_t words, size_t cols) {
  constexpr size_t kEmpty = ~size_t{0};
  std::vector<size_t> basis_offset(cols, kEmpty);  // into storage, one row per pivot
  std::vector<uint64_t> storage;
  storage.reserve(nrows * words);
  size_t rank = 0;
  std::vector<uint64_t> cur(words);
  for (size_t r = 0; r < nrows; ++r) {
    std::copy(rows.begin() + r * words, rows.begin() + (r + 1) * words, cur.begin());
    for (;;) {
      size_t lead = cols;
      for (size_t w = 0; w < words; ++w)
        if (cur[w]) {
          lead = w * 64 + static_cast<size_t>(__builtin_ctzll(cur[w]));
          break;
        }
      if (lead >= cols) break;
      if (basis_offset[lead] == kEmpty) {
        basis_offset[lead] = storage.size();
        storage.insert(storage.end(), cur.begin(), cur.end());
        ++rank;
        break;
      }
      const uint64_t* pivot = &storage[basis_offset[lead]];
      for (size_t w = 0; w < words; ++w) cur[w] ^= pivot[w];
    }
    if (rank == cols) break;
  }
  return rank;
}

// rank of an nrows x cols byte matrix over GF(q), q <= 256
size_t rank_u8(std::vector<uint8_t>& a, size_t nrows, size_t cols, const FieldSpec& field,
               const uint8_t* inv_table) {
  const bool char2 = field.p() == 2;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < nrows; ++col) {
    size_t pivot = rank;
    while (pivot < nrows && a[pivot * cols + col] == 0) ++pivot;
    if (pivot == nrows) continue;
    if (pivot != rank)
      for (size_t j = col; j < cols; ++j) std::swap(a[rank * cols + j], a[pivot * cols + j]);
    uint8_t pinv = inv_table[a[rank * cols + col]];
    for (size_t i = rank + 1; i < nrows; ++i) {
      uint8_t v = a[i * cols + col];
      if (!v) continue;
      FieldElement factor = field.mul({v}, {pinv});
      for (size_t j = col; j < cols; ++j) {
        FieldElement sub = field.mul(factor, {a[rank * cols + j]});
        if (char2)
          a[i * cols + j] ^= static_cast<uint8_t>(sub.value);
        else
          a[i * cols + j] = static_cast<uint8_t>(field.sub({a[i * cols + j]}, sub).value);
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

bool RaptorInstance::ml_failure(std::span<const LTColumn> columns) const {
  const uint32_t q = outer_.field.q();
  const uint32_t k = outer_.k;
  const size_t m = columns.size();
  if (m < k) return true;

  if (q == 2) {
    std::vector<uint64_t> rows(m * words_, 0);
    for (size_t j = 0; j < m; ++j)
      for (const auto& [idx, coeff] : columns[j].entries) {
        const uint64_t* src = &gt_bits_[idx * words_];
        uint64_t* dst = &rows[j * words_];
        for (size_t w = 0; w < words_; ++w) dst[w] ^= src[w];
      }
    return rank_bits(rows, m, words_, k) < k;
  }

  if (q <= 256) {
    std::vector<uint8_t> rows(m * k, 0);
    const FieldSpec& f = outer_.field;
    const bool char2 = f.p() == 2;
    for (size_t j = 0; j < m; ++j) {
      uint8_t* dst = &rows[j * k];
      for (const auto& [idx, coeff] : columns[j].entries) {
        const uint8_t* src = &gt_bytes_[idx * static_cast<size_t>(k)];
        for (uint32_t r = 0; r < k; ++r) {
          FieldElement prod = f.mul(coeff, {src[r]});
          if (char2)
            dst[r] ^= static_cast<uint8_t>(prod.value);
          else
            dst[r] = static_cast<uint8_t>(f.add({dst[r]}, prod).value);
        }
      }
    }
    return rank_u8(rows, m, k, f, inv_table_.data()) < k;
  }

  // generic fallback for q > 256
  Mat gt(outer_.field, m, k);
  const FieldSpec& f = outer_.field;
  for (size_t j = 0; j < m; ++j)
    for (const auto& [idx, coeff] : columns[j].entries)
      for (uint32_t r = 0; r < k; ++r) {
        FieldElement prod = f.mul(coeff, outer_.generator.el(r, idx));
        gt.set(j, r, f.add(gt.el(j, r), prod).value);
      }
  return rank_of(gt) < k;
}

bool RaptorInstance::inactivation_failure(std::span<const LTColumn> columns) const {
  const FieldSpec& f = outer_.field;
  const uint32_t h = outer_.h;
  const size_t m = columns.size();

  // LT rows (one per received column) participate in peeling; the outer
  // parity rows join only the dense phase.
  std::vector<std::vector<std::pair<uint32_t, FieldElement>>> lt_rows(m);
  std::vector<std::vector<uint32_t>> var_rows(h);
  std::vector<uint32_t> row_residual(m, 0), var_degree(h, 0);
  for (size_t j = 0; j < m; ++j) {
    lt_rows[j].assign(columns[j].entries.begin(), columns[j].entries.end());
    row_residual[j] = static_cast<uint32_t>(lt_rows[j].size());
    for (const auto& [v, c] : lt_rows[j]) {
      var_rows[v].push_back(static_cast<uint32_t>(j));
      ++var_degree[v];
    }
  }

  enum class VarState : uint8_t { kActive, kPeeled, kInactive };
  std::vector<VarState> state(h, VarState::kActive);
  std::vector<bool> row_used(m, false);
  std::vector<std::pair<uint32_t, uint32_t>> peel_order;  // (var, row)
  std::vector<uint32_t> degree_one;
  for (size_t j = 0; j < m; ++j)
    if (row_residual[j] == 1) degree_one.push_back(static_cast<uint32_t>(j));

  auto retire_variable = [&](uint32_t v) {
    // v leaves the residual graph: shrink the rows it appears in
    for (uint32_t r : var_rows[v]) {
      if (row_used[r]) continue;
      if (--row_residual[r] == 1) degree_one.push_back(r);
    }
  };

  uint32_t resolved = 0;
  while (resolved < h) {
    // peel every available degree-1 row
    bool peeled = false;
    while (!degree_one.empty()) {
      uint32_t r = degree_one.back();
      degree_one.pop_back();
      if (row_used[r] || row_residual[r] != 1) continue;
      uint32_t v = h;
      for (const auto& [var, c] : lt_rows[r])
        if (state[var] == VarState::kActive) {
          v = var;
          break;
        }
      if (v == h) continue;
      state[v] = VarState::kPeeled;
      row_used[r] = true;
      for (const auto& [var, c] : lt_rows[r])
        if (var != v) --var_degree[var];  // the row is consumed
      peel_order.emplace_back(v, r);
      retire_variable(v);
      ++resolved;
      peeled = true;
    }
    if (resolved == h) break;
    if (peeled) continue;
    // stall: inactivate the active variable of maximum residual degree,
    // ties toward the lowest index
    uint32_t best = h, best_deg = 0;
    for (uint32_t v = 0; v < h; ++v)
      if (state[v] == VarState::kActive && (best == h || var_degree[v] > best_deg)) {
        best = v;
        best_deg = var_degree[v];
      }
    state[best] = VarState::kInactive;
    retire_variable(best);
    ++resolved;
  }

  // dense phase over the inactive variables
  std::vector<uint32_t> zpos(h, ~0u);
  uint32_t z = 0;
  for (uint32_t v = 0; v < h; ++v)
    if (state[v] == VarState::kInactive) zpos[v] = z++;

  const size_t p = peel_order.size();
  std::vector<uint32_t> expr_index(h, ~0u);
  std::vector<std::vector<uint8_t>> expr(p);  // peeled var as affine map of inactive vars
  for (size_t i = 0; i < p; ++i) {
    auto [v, r] = peel_order[i];
    std::vector<uint8_t> acc(z, 0);
    FieldElement pivot_coeff = f.zero();
    for (const auto& [var, c] : lt_rows[r]) {
      if (var == v) {
        pivot_coeff = c;
        continue;
      }
      if (zpos[var] != ~0u) {
        acc[zpos[var]] = static_cast<uint8_t>(f.add({acc[zpos[var]]}, c).value);
      } else {
        const std::vector<uint8_t>& e = expr[expr_index[var]];
        for (uint32_t t = 0; t < z; ++t)
          acc[t] = static_cast<uint8_t>(f.add({acc[t]}, f.mul(c, {e[t]})).value);
      }
    }
    FieldElement scale = f.neg(f.inv(pivot_coeff));
    for (uint32_t t = 0; t < z; ++t) acc[t] = static_cast<uint8_t>(f.mul(scale, {acc[t]}).value);
    expr_index[v] = static_cast<uint32_t>(i);
    expr[i] = std::move(acc);
  }

  auto fold_row = [&](auto&& entries, std::vector<uint8_t>& out) {
    std::fill(out.begin(), out.end(), 0);
    for (const auto& [var, c] : entries) {
      if (c.value == 0) continue;
      if (zpos[var] != ~0u) {
        out[zpos[var]] = static_cast<uint8_t>(f.add({out[zpos[var]]}, c).value);
      } else {
        const std::vector<uint8_t>& e = expr[expr_index[var]];
        for (uint32_t t = 0; t < z; ++t)
          out[t] = static_cast<uint8_t>(f.add({out[t]}, f.mul(c, {e[t]})).value);
      }
    }
  };

  std::vector<uint8_t> dense;
  std::vector<uint8_t> folded(z);
  size_t dense_rows = 0;
  for (size_t r = 0; r < m; ++r) {
    if (row_used[r]) continue;
    fold_row(lt_rows[r], folded);
    dense.insert(dense.end(), folded.begin(), folded.end());
    ++dense_rows;
  }
  std::vector<std::pair<uint32_t, FieldElement>> parity_entries;
  for (size_t r = 0; r < outer_.parity.rows(); ++r) {
    parity_entries.clear();
    for (uint32_t v = 0; v < h; ++v)
      if (outer_.parity.at(r, v)) parity_entries.emplace_back(v, outer_.parity.el(r, v));
    fold_row(parity_entries, folded);
    dense.insert(dense.end(), folded.begin(), folded.end());
    ++dense_rows;
  }

  size_t rank_dense = 0;
  if (z > 0 && dense_rows > 0) {
    if (f.q() <= 256) {
      std::vector<uint8_t> inv_t(f.q(), 0);
      for (uint32_t v = 1; v < f.q(); ++v) inv_t[v] = static_cast<uint8_t>(f.inv({v}).value);
      rank_dense = rank_u8(dense, dense_rows, z, f, inv_t.data());
    } else {
      Mat dm(f, dense_rows, z);
      for (size_t r = 0; r < dense_rows; ++r)
        for (uint32_t c2 = 0; c2 < z; ++c2) dm.set(r, c2, dense[r * z + c2]);
      rank_dense = rank_of(dm);
    }
  }
  return p + rank_dense < h;
}

bool ml_failure(const RaptorInstance& instance, std::span<const LTColumn> columns) {
  return instance.ml_failure(columns);
}

bool inactivation_solve(const RaptorInstance& instance, std::span<const LTColumn> columns) {
  return instance.inactivation_failure(columns);
}

// ---- exact oracles -------------------------------------------------------------

namespace {

struct ColumnSpace {
  std::vector<LTColumn> columns;
  std::vector<Int> numerators;  // probability numerators over the common denominator
  Int denominator;
};

// all column realizations with exact probabilities on a common denominator
ColumnSpace enumerate_columns(const Construction& construction, uint32_t h, uint64_t guard) {
  construction.validate_for_length(h);
  const FieldSpec& field = construction.field;
  const uint32_t q = field.q();
  const bool zero_one = construction.is_zero_one() || q == 2;

  // predicted count
  auto subsets_with_coeffs = [&](uint32_t d, uint32_t n) -> Int {
    Int c = binomial(n, d);
    if (!zero_one) {
      Int pw;
      mpz_ui_pow_ui(pw.get_mpz_t(), q - 1, d);
      c *= pw;
    }
    return c;
  };
  Int predicted(0);
  if (construction.is_multi_edge()) {
    for (const auto& t : construction.omega2.terms())
      predicted += subsets_with_coeffs(t.j, construction.ha) * subsets_with_coeffs(t.s, construction.hb);
  } else {
    for (const auto& [d, p] : construction.omega.terms()) predicted += subsets_with_coeffs(d, h);
  }
  if (predicted > static_cast<long>(guard))
    throw FeasibilityError("column realization space too large",
                           predicted.fits_ulong_p() ? predicted.get_ui() : guard + 1);

  // common denominator: lcm over degree terms of den(Omega) * C(..) * (q-1)^d
  ColumnSpace space;
  space.denominator = 1;
  auto fold_lcm = [&](const Rat& r) {
    Int den = r.get_den();
    Int g;
    mpz_lcm(g.get_mpz_t(), space.denominator.get_mpz_t(), den.get_mpz_t());
    space.denominator = g;
  };

  struct DegreeCase {
    uint32_t j = 0, s = 0;
    Rat per_column_prob;  // probability of one (support, coeffs) realization
  };
  std::vector<DegreeCase> cases;
  if (construction.is_multi_edge()) {
    for (const auto& t : construction.omega2.terms()) {
      Rat pc = t.p / Rat(binomial(construction.ha, t.j) * binomial(construction.hb, t.s));
      if (!zero_one) {
        Int pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), q - 1, t.j + t.s);
        pc /= Rat(pw);
      }
      cases.push_back({t.j, t.s, pc});
      fold_lcm(pc);
    }
  } else {
    for (const auto& [d, p] : construction.omega.terms()) {
      Rat pc = p / Rat(binomial(h, d));
      if (!zero_one) {
        Int pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), q - 1, d);
        pc /= Rat(pw);
      }
      cases.push_back({d, 0, pc});
      fold_lcm(pc);
    }
  }

  // enumerate subsets via composition-style odometer over sorted index tuples
  auto for_each_subset = [](uint32_t n, uint32_t d, uint32_t base, auto&& fn) {
    if (d == 0) {
      std::vector<uint32_t> empty;
      fn(empty);
      return;
    }
    std::vector<uint32_t> idx(d);
    std::iota(idx.begin(), idx.end(), base);
    for (;;) {
      fn(idx);
      uint32_t i = d;
      while (i-- > 0) {
        if (idx[i] + 1 < base + n - (d - 1 - i)) {
          ++idx[i];
          for (uint32_t t = i + 1; t < d; ++t) idx[t] = idx[t - 1] + 1;
          break;
        }
        if (i == 0) return;
      }
    }
  };

  for (const DegreeCase& dcase : cases) {
    Int scaled_num = Int(dcase.per_column_prob.get_num()) *
                     (space.denominator / Int(dcase.per_column_prob.get_den()));
    auto emit = [&](const std::vector<uint32_t>& support) {
      if (zero_one) {
        LTColumn col;
        for (uint32_t i2 : support) col.entries.emplace_back(i2, field.one());
        space.columns.push_back(std::move(col));
        space.numerators.push_back(scaled_num);
      } else {
        const uint32_t d = static_cast<uint32_t>(support.size());
        std::vector<uint32_t> coeff(d, 1);
        for (;;) {
          LTColumn col;
          for (uint32_t i2 = 0; i2 < d; ++i2)
            col.entries.emplace_back(support[i2], field.element(coeff[i2]));
          space.columns.push_back(std::move(col));
          space.numerators.push_back(scaled_num);
          uint32_t pos = 0;
          while (pos < d && ++coeff[pos] == q) coeff[pos++] = 1;
          if (pos == d) break;
        }
      }
    };
    if (construction.is_multi_edge()) {
      for_each_subset(construction.ha, dcase.j, 0, [&](const std::vector<uint32_t>& sa) {
        for_each_subset(construction.hb, dcase.s, construction.ha,
                        [&](const std::vector<uint32_t>& sb) {
                          std::vector<uint32_t> support = sa;
                          support.insert(support.end(), sb.begin(), sb.end());
                          emit(support);
                        });
      });
    } else {
      for_each_subset(h, dcase.j, 0, emit);
    }
  }
  return space;
}

}  // namespace

Rat exact_pf_tuples(const RaptorInstance& instance, uint32_t m) {
  ColumnSpace space = enumerate_columns(instance.construction(), instance.outer().h, 10'000'000);
  const size_t n = space.columns.size();
  double predicted = std::pow(static_cast<double>(n), m);
  if (predicted > 1e7) throw FeasibilityError("tuple space too large", static_cast<uint64_t>(predicted));

  if (m == 0) return instance.outer().k > 0 ? Rat(1) : Rat(0);

  // odometer over tuples; suffix[i] = product of numerators for picks i..m-1
  // so only rolled-over digits need refreshing
  std::vector<uint32_t> pick(m, 0);
  std::vector<Int> suffix(m + 1);
  suffix[m] = 1;
  std::vector<LTColumn> cols(m);
  for (uint32_t i = 0; i < m; ++i) cols[i] = space.columns[0];
  for (uint32_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * space.numerators[0];
  Int fail_num(0);
  for (;;) {
    if (instance.ml_failure(cols)) fail_num += suffix[0];
    uint32_t pos = 0;
    while (pos < m && ++pick[pos] == n) pick[pos++] = 0;
    if (pos == m) break;
    for (uint32_t i = pos + 1; i-- > 0;) {
      cols[i] = space.columns[pick[i]];
      suffix[i] = suffix[i + 1] * space.numerators[pick[i]];
    }
  }
  Int den;
  mpz_pow_ui(den.get_mpz_t(), space.denominator.get_mpz_t(), m);
  return rat(fail_num, den);
}

Rat exact_pf_inclusion_exclusion(const RaptorInstance& instance, uint32_t m) {
  const LinearCode& code = instance.outer();
  const FieldSpec& f = code.field;
  uint64_t codebook_size = 1;
  for (uint32_t i = 0; i < code.k; ++i) {
    codebook_size *= f.q();
    if (codebook_size > 16) throw FeasibilityError("inclusion-exclusion needs q^k <= 16", codebook_size);
  }
  if (m == 0) return code.k > 0 ? Rat(1) : Rat(0);

  auto book = codebook(code);
  std::vector<std::vector<uint16_t>> nonzero;
  for (auto& w : book) {
    bool zero = true;
    for (uint16_t v : w) zero &= v == 0;
    if (!zero) nonzero.push_back(std::move(w));
  }
  const uint32_t n = static_cast<uint32_t>(nonzero.size());

  ColumnSpace space = enumerate_columns(instance.construction(), code.h, 10'000'000);

  // orthogonality mask per column realization
  std::vector<Int> mass(size_t{1} << n, Int(0));
  for (size_t c = 0; c < space.columns.size(); ++c) {
    uint32_t mask = 0;
    for (uint32_t v = 0; v < n; ++v) {
      FieldElement dot = f.zero();
      for (const auto& [idx, coeff] : space.columns[c].entries)
        dot = f.add(dot, f.mul(coeff, {nonzero[v][idx]}));
      if (dot == f.zero()) mask |= 1u << v;
    }
    mass[mask] += space.numerators[c];
  }
  // superset sums: p_S = sum of mass over masks containing S
  for (uint32_t bit = 0; bit < n; ++bit)
    for (uint32_t s = 0; s < (1u << n); ++s)
      if (!(s & (1u << bit))) mass[s] += mass[s | (1u << bit)];

  Int num(0);
  for (uint32_t s = 1; s < (1u << n); ++s) {
    Int term;
    mpz_pow_ui(term.get_mpz_t(), mass[s].get_mpz_t(), m);
    if (__builtin_popcount(s) & 1)
      num += term;
    else
      num -= term;
  }
  Int den;
  mpz_pow_ui(den.get_mpz_t(), space.denominator.get_mpz_t(), m);
  return rat(num, den);
}

}  // namespace raptor
