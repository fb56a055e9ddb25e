#include <doctest.h>

#include <cmath>
#include <sstream>

#include "raptor/errors.hpp"

#include "raptor/montecarlo.hpp"
#include "raptor/raptor.hpp"

using namespace raptor;

namespace {

LinearCode repetition2() {
  FieldSpec f2 = FieldSpec::make(2, 1);
  Mat g(f2, 1, 2);
  g.set(0, 0, 1);
  g.set(0, 1, 1);
  return LinearCode::from_generator(std::move(g));
}

Construction flat_construction(ConstructionVariant variant, const FieldSpec& f,
                               DegreeDistribution omega) {
  Construction c;
  c.variant = variant;
  c.field = f;
  c.omega = std::move(omega);
  return c;
}

}  // namespace

TEST_CASE("builtin degree distributions") {
  DegreeDistribution r10 = omega_r10();
  Rat total(0);
  for (const auto& [d, p] : r10.terms()) total += p;
  CHECK(total == Rat(1));
  CHECK(r10.d_max() == 40);
  CHECK(r10.terms().front() == std::pair<uint32_t, Rat>{1, rat(98, 10000)});

  BivariateDegreeDistribution met = omega_rq_bivariate(r10);
  Rat total2(0);
  for (const auto& t : met.terms()) total2 += t.p;
  CHECK(total2 == Rat(1));
  CHECK(met.s_max() == 3);
  CHECK(met.j_max() == 40);
}

TEST_CASE("degree distribution files: normalization window") {
  std::istringstream good("# comment\n1 0.5\n2 0.4999999999\n");
  DegreeDistribution d = parse_degree_file(good);
  Rat total(0);
  for (const auto& [deg, p] : d.terms()) total += p;
  CHECK(total == Rat(1));  // renormalized exactly

  std::istringstream off("1 0.5\n2 0.4\n");
  CHECK_THROWS_AS(parse_degree_file(off), ConfigError);
  std::istringstream dup("1 0.5\n1 0.5\n");
  CHECK_THROWS_AS(parse_degree_file(dup), ConfigError);
  std::istringstream zero_deg("0 1.0\n");
  CHECK_THROWS_AS(parse_degree_file(zero_deg), ConfigError);
}

TEST_CASE("column sampling: structure and uniformity") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  Construction c = flat_construction(ConstructionVariant::kGfq, f2,
                                     DegreeDistribution::from_terms({{1, Rat(1)}}));
  Rng rng(1);
  std::vector<uint32_t> hits(4, 0);
  const uint32_t n = 100000;
  for (uint32_t i = 0; i < n; ++i) {
    LTColumn col = sample_column(c, 4, rng);
    REQUIRE(col.entries.size() == 1);
    hits[col.entries[0].first]++;
  }
  double sigma = std::sqrt(n * 0.25 * 0.75);
  for (uint32_t r = 0; r < 4; ++r) CHECK(std::fabs(hits[r] - n * 0.25) <= 3 * sigma);

  FieldSpec f4 = FieldSpec::make(2, 2);
  Construction c4 = flat_construction(ConstructionVariant::kGfq, f4,
                                      DegreeDistribution::from_terms({{1, Rat(1)}}));
  std::vector<uint32_t> coeff_hits(4, 0);
  for (uint32_t i = 0; i < n; ++i) {
    LTColumn col = sample_column(c4, 4, rng);
    coeff_hits[col.entries[0].second.value]++;
  }
  CHECK(coeff_hits[0] == 0);
  double sigma3 = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  for (uint32_t v = 1; v < 4; ++v) CHECK(std::fabs(coeff_hits[v] - n / 3.0) <= 3 * sigma3);
}

TEST_CASE("multi-edge columns respect the part structure") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  Construction c;
  c.variant = ConstructionVariant::kMultiEdge;
  c.field = f2;
  c.omega2 = BivariateDegreeDistribution::from_terms({{2, 2, Rat(1)}});
  c.ha = 3;
  c.hb = 3;
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    LTColumn col = sample_column(c, 6, rng);
    REQUIRE(col.entries.size() == 4);
    uint32_t in_a = 0, in_b = 0;
    for (const auto& [idx, coeff] : col.entries) (idx < 3 ? in_a : in_b)++;
    CHECK(in_a == 2);
    CHECK(in_b == 2);
  }
  // infeasible degree support
  Construction bad = c;
  bad.hb = 1;
  bad.ha = 5;
  CHECK_THROWS_AS(sample_column(bad, 6, rng), ConfigError);
}

TEST_CASE("ml_failure basics") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  DegreeDistribution half = DegreeDistribution::from_terms({{1, rat(1, 2)}, {2, rat(1, 2)}});
  RaptorInstance inst(repetition2(), flat_construction(ConstructionVariant::kGfq, f2, half));

  CHECK(inst.ml_failure({}));  // m = 0 < k

  // degree-2 column is orthogonal to (1,1): failure persists
  LTColumn deg2;
  deg2.entries = {{0, f2.one()}, {1, f2.one()}};
  std::vector<LTColumn> cols = {deg2, deg2, deg2};
  CHECK(inst.ml_failure(cols));
  // one degree-1 column resolves the single input symbol
  LTColumn deg1;
  deg1.entries = {{0, f2.one()}};
  cols.push_back(deg1);
  CHECK(!inst.ml_failure(cols));
}

TEST_CASE("exact oracles: repetition closed form and identity coupon") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  DegreeDistribution half = DegreeDistribution::from_terms({{1, rat(1, 2)}, {2, rat(1, 2)}});
  RaptorInstance rep(repetition2(), flat_construction(ConstructionVariant::kGfq, f2, half));
  for (uint32_t m = 0; m <= 6; ++m) {
    Rat expect = m == 0 ? Rat(1) : rat(1, Int(1) << m);
    CHECK(exact_pf_inclusion_exclusion(rep, m) == expect);
    CHECK(exact_pf_tuples(rep, m) == expect);
  }

  Mat ident = Mat::identity(f2, 2);
  RaptorInstance id2(LinearCode::from_generator(ident),
                     flat_construction(ConstructionVariant::kGfq, f2,
                                       DegreeDistribution::from_terms({{1, Rat(1)}})));
  CHECK(exact_pf_inclusion_exclusion(id2, 2) == rat(1, 2));
  CHECK(exact_pf_tuples(id2, 2) == rat(1, 2));
  CHECK(exact_pf_inclusion_exclusion(id2, 0) == Rat(1));
}

TEST_CASE("monte carlo agrees with the exact failure probability") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  DegreeDistribution half = DegreeDistribution::from_terms({{1, rat(1, 2)}, {2, rat(1, 2)}});
  RaptorInstance rep(repetition2(), flat_construction(ConstructionVariant::kGfq, f2, half));
  SingleCampaign campaign;
  campaign.deltas = {2};  // m = 3: exact 1/8
  campaign.target_failures = 0;
  campaign.max_trials = 100000;
  campaign.seed = 2718;
  campaign.ci_level = 0.99;
  auto rows = run_single(rep, campaign);
  REQUIRE(rows.size() == 1);
  double exact = 1.0 / 8;
  CHECK(rows[0].ci_low <= exact);
  CHECK(rows[0].ci_high >= exact);
}

TEST_CASE("inactivation and dense elimination always agree") {
  Rng rng(97);
  std::vector<ConstructionVariant> variants = {
      ConstructionVariant::kGfq, ConstructionVariant::kGfq01, ConstructionVariant::kMultiEdge,
      ConstructionVariant::kMultiEdge01};
  int checked = 0;
  for (int trial = 0; trial < 600; ++trial) {
    bool use_gf4 = rng.below(2);
    FieldSpec f = use_gf4 ? FieldSpec::make(2, 2) : FieldSpec::make(2, 1);
    uint32_t h = 4 + static_cast<uint32_t>(rng.below(5));  // 4..8
    uint32_t k = 1 + static_cast<uint32_t>(rng.below(h - 1));
    LinearCode code = sample_uniform_pc(h, k, f, rng);
    Construction c;
    c.variant = variants[trial % variants.size()];
    c.field = f;
    if (c.is_multi_edge()) {
      c.ha = h / 2;
      c.hb = h - c.ha;
      uint32_t j = 1 + static_cast<uint32_t>(rng.below(std::min(c.ha, 3u)));
      uint32_t s = 1 + static_cast<uint32_t>(rng.below(std::min(c.hb, 2u)));
      c.omega2 = BivariateDegreeDistribution::from_terms({{j, s, Rat(1)}});
    } else {
      uint32_t d1 = 1 + static_cast<uint32_t>(rng.below(h));
      uint32_t d2 = 1 + static_cast<uint32_t>(rng.below(h));
      if (d1 == d2) d2 = d1 == h ? 1 : d1 + 1;
      c.omega = DegreeDistribution::from_terms({{d1, rat(1, 3)}, {d2, rat(2, 3)}});
    }
    RaptorInstance inst(std::move(code), std::move(c));
    uint32_t m = inst.outer().k + static_cast<uint32_t>(rng.below(4));
    std::vector<LTColumn> cols;
    Rng col_rng(mix_seed(2222, trial));
    for (uint32_t i = 0; i < m; ++i)
      cols.push_back(sample_column(inst.construction(), h, col_rng));
    bool a = inst.ml_failure(cols);
    bool b = inst.inactivation_failure(cols);
    CHECK(a == b);
    ++checked;
  }
  CHECK(checked == 600);
}

TEST_CASE("inactivation: pure peeling and adversarial cycles") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  Mat ident = Mat::identity(f2, 4);
  DegreeDistribution deg2 = DegreeDistribution::from_terms({{2, Rat(1)}});
  RaptorInstance inst(LinearCode::from_generator(ident),
                      flat_construction(ConstructionVariant::kGfq, f2, deg2));

  auto col = [&](std::initializer_list<uint32_t> rows) {
    LTColumn c;
    for (uint32_t r : rows) c.entries.emplace_back(r, f2.one());
    return c;
  };
  // 4-cycle of degree-2 columns: rank 3 < 4, failure in both deciders
  std::vector<LTColumn> cycle = {col({0, 1}), col({1, 2}), col({2, 3}), col({3, 0})};
  CHECK(inst.ml_failure(cycle));
  CHECK(inst.inactivation_failure(cycle));
  // a chord is a dependent combination of cycle edges: still rank deficient
  cycle.push_back(col({0, 2}));
  CHECK(inst.ml_failure(cycle));
  CHECK(inst.inactivation_failure(cycle));
  // a degree-1 column breaks the even-weight trap and peeling finishes the rest
  cycle.push_back(col({3}));
  CHECK(!inst.ml_failure(cycle));
  CHECK(!inst.inactivation_failure(cycle));

  // identity outer + unit columns: pure peeling succeeds
  DegreeDistribution deg1 = DegreeDistribution::from_terms({{1, Rat(1)}});
  RaptorInstance unit(LinearCode::from_generator(Mat::identity(f2, 3)),
                      flat_construction(ConstructionVariant::kGfq, f2, deg1));
  std::vector<LTColumn> units = {col({0}), col({1}), col({2})};
  CHECK(!unit.inactivation_failure(units));
}

TEST_CASE("verdicts are invariant under outer basis change") {
  Rng rng(333);
  FieldSpec f4 = FieldSpec::make(2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    LinearCode code = sample_uniform_pc(6, 3, f4, rng);
    const uint32_t k = code.k;
    // random invertible k x k basis change
    Mat t(f4, k, k);
    do {
      for (size_t r = 0; r < k; ++r)
        for (size_t c = 0; c < k; ++c) t.set(r, c, static_cast<uint16_t>(rng.below(4)));
    } while (rank_of(t) != k);
    LinearCode changed = LinearCode::from_generator(t.mul(code.generator));

    DegreeDistribution om = DegreeDistribution::from_terms({{1, rat(1, 2)}, {3, rat(1, 2)}});
    RaptorInstance a(code, flat_construction(ConstructionVariant::kGfq, f4, om));
    RaptorInstance b(changed, flat_construction(ConstructionVariant::kGfq, f4, om));
    Rng col_rng(mix_seed(17, trial));
    std::vector<LTColumn> cols;
    for (uint32_t i = 0; i < k + 2; ++i)
      cols.push_back(sample_column(a.construction(), 6, col_rng));
    CHECK(a.ml_failure(cols) == b.ml_failure(cols));
  }
}

TEST_CASE("binary 0/1 and full constructions are identical draw for draw") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  DegreeDistribution om = DegreeDistribution::from_terms({{1, rat(1, 2)}, {2, rat(1, 2)}});
  Construction full = flat_construction(ConstructionVariant::kGfq, f2, om);
  Construction zo = flat_construction(ConstructionVariant::kGfq01, f2, om);
  Rng r1(9), r2(9);
  for (int i = 0; i < 2000; ++i) {
    LTColumn a = sample_column(full, 5, r1);
    LTColumn b = sample_column(zo, 5, r2);
    CHECK(a.entries == b.entries);
  }
}

TEST_CASE("multi-edge upper bounds dominate the exact failure probability") {
  Rng rng(5150);
  for (int trial = 0; trial < 24; ++trial) {
    FieldSpec f = trial % 2 ? FieldSpec::make(2, 2) : FieldSpec::make(2, 1);
    uint32_t h = 4 + static_cast<uint32_t>(rng.below(2));
    uint32_t k = 1 + static_cast<uint32_t>(rng.below(2));
    uint32_t ha = 2, hb = h - 2;
    LinearCode code = [&] {
      for (;;) {
        Mat g(f, k, h);
        for (size_t r = 0; r < k; ++r)
          for (size_t c = 0; c < h; ++c) g.set(r, c, static_cast<uint16_t>(rng.below(f.q())));
        if (rank_of(g) == k) return LinearCode::from_generator(std::move(g));
      }
    }();
    uint32_t j = 1 + static_cast<uint32_t>(rng.below(2));
    Construction c;
    c.variant = trial % 4 < 2 ? ConstructionVariant::kMultiEdge : ConstructionVariant::kMultiEdge01;
    c.field = f;
    c.ha = ha;
    c.hb = hb;
    c.omega2 =
        BivariateDegreeDistribution::from_terms({{j, 2, rat(1, 3)}, {1, 1, rat(2, 3)}});
    RaptorInstance inst(code, c);
    BivariateWeightEnumerator bw = exhaustive_bivariate_weight_enum(code, ha);
    BivariateCompositionEnumerator bc = exhaustive_bivariate_composition_enum(code, ha);
    for (uint32_t delta = 0; delta <= 3; ++delta) {
      double exact = exact_pf_inclusion_exclusion(inst, code.k + delta).get_d();
      double ub = c.variant == ConstructionVariant::kMultiEdge
                      ? to_double(ub_met(bw, c.omega2, code.k, delta, f.q()))
                      : to_double(ub_met01(bc, c.omega2, code.k, delta, f));
      CHECK(exact <= ub * (1 + 1e-12));
    }
  }
}

TEST_CASE("oracle bracket smoke test: exact inside the bound suite bracket") {
  FieldSpec f2 = FieldSpec::make(2, 1);
  DegreeDistribution om = DegreeDistribution::from_terms({{1, rat(1, 2)}, {2, rat(1, 2)}});
  LinearCode code = repetition2();
  WeightEnumerator a = exhaustive_weight_enum(code);
  JointWeightEnumeratorMap pairs = exhaustive_biweight_enum(code);
  BoundSuiteConfig config{ConstructionVariant::kGfq, f2, &om, nullptr, code.k};
  BoundInputs inputs;
  inputs.weight = &a;
  inputs.joint_weight = &pairs;
  std::vector<uint32_t> deltas = {0, 1, 2, 3};
  RaptorInstance inst(code, flat_construction(ConstructionVariant::kGfq, f2, om));
  auto rows = bound_suite(config, inputs, deltas);
  for (const BoundResult& r : rows) {
    double exact = exact_pf_inclusion_exclusion(inst, code.k + r.delta).get_d();
    CHECK(to_double(r.lb_dawson_sankoff) <= exact + 1e-15);
    CHECK(exact <= to_double(r.upper) + 1e-15);
  }
}
