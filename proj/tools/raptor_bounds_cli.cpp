// Command-line front end: bounds, simulations, enumerator exports, error
// exponents, and exact oracles, all emitting CSV with a config header.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "raptor/bounds.hpp"
#include "raptor/errexp.hpp"
#include "raptor/errors.hpp"
#include "raptor/montecarlo.hpp"
#include "raptor/outercodes.hpp"
#include "raptor/raptor.hpp"

namespace {

using namespace raptor;

struct CommonOpts {
  std::string construction = "gfq";
  std::string field = "2";
  std::string outer;
  std::string dist = "r10";
  int split_a = -1;
  std::string delta = "0:10:1";
  uint64_t seed = 1;
  uint32_t threads = 0;
  std::string out = "-";
};

ConstructionVariant parse_construction(const std::string& name) {
  if (name == "gfq") return ConstructionVariant::kGfq;
  if (name == "met") return ConstructionVariant::kMultiEdge;
  if (name == "gfq01") return ConstructionVariant::kGfq01;
  if (name == "met01") return ConstructionVariant::kMultiEdge01;
  throw ConfigError("unknown construction '" + name + "' (gfq|met|gfq01|met01)");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

uint64_t to_u64(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    uint64_t v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("field '" + what + "': cannot parse '" + s + "'");
  }
}

FieldSpec parse_field(const std::string& text) {
  auto parts = split(text, ':');
  if (parts.size() < 1 || parts.size() > 3) throw ConfigError("field 'field': expected P[:M[:MODULUS]]");
  uint32_t p = static_cast<uint32_t>(to_u64(parts[0], "field"));
  uint32_t m = parts.size() > 1 ? static_cast<uint32_t>(to_u64(parts[1], "field")) : 1;
  std::optional<uint64_t> modulus;
  if (parts.size() > 2) modulus = to_u64(parts[2], "field");
  return FieldSpec::make(p, m, modulus);
}

std::vector<uint32_t> parse_range(const std::string& text, const std::string& what) {
  auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("field '" + what + "': expected start:stop:step");
  uint32_t start = static_cast<uint32_t>(to_u64(parts[0], what));
  uint32_t stop = static_cast<uint32_t>(to_u64(parts[1], what));
  uint32_t step = static_cast<uint32_t>(to_u64(parts[2], what));
  if (step == 0 || stop < start) throw ConfigError("field '" + what + "': bad range");
  std::vector<uint32_t> values;
  for (uint32_t v = start; v <= stop; v += step) values.push_back(v);
  return values;
}

struct OuterData {
  bool is_ensemble = false;
  OuterEnsembleSpec ensemble;
  std::shared_ptr<const LinearCode> code;  // explicit codes (hamming, file)
  uint32_t h = 0;
  uint32_t k = 0;  // nominal for ensembles, realized for explicit codes
  std::string kind;
};

OuterData parse_outer(const std::string& text, const FieldSpec& field) {
  auto parts = split(text, ':');
  OuterData data;
  data.kind = parts[0];
  if (parts[0] == "hamming") {
    if (parts.size() != 2) throw ConfigError("field 'outer': hamming:t");
    if (field.q() != 2) throw ConfigError("field 'outer': hamming outer codes are binary");
    uint32_t t = static_cast<uint32_t>(to_u64(parts[1], "outer"));
    data.code = std::make_shared<const LinearCode>(hamming_generator(t));
  } else if (parts[0] == "uniform-pc") {
    if (parts.size() != 3) throw ConfigError("field 'outer': uniform-pc:h:k");
    data.is_ensemble = true;
    data.ensemble.variant.kind = EnsembleVariant::kUniformParityCheck;
    data.ensemble.variant.h = static_cast<uint32_t>(to_u64(parts[1], "outer"));
    data.ensemble.variant.k = static_cast<uint32_t>(to_u64(parts[2], "outer"));
    data.ensemble.field = field;
  } else if (parts[0] == "ldpc") {
    if (parts.size() != 4) throw ConfigError("field 'outer': ldpc:dv:dc:h");
    data.is_ensemble = true;
    data.ensemble.variant.kind = EnsembleVariant::kRegularLdpc;
    data.ensemble.variant.dv = static_cast<uint32_t>(to_u64(parts[1], "outer"));
    data.ensemble.variant.dc = static_cast<uint32_t>(to_u64(parts[2], "outer"));
    data.ensemble.variant.h = static_cast<uint32_t>(to_u64(parts[3], "outer"));
    data.ensemble.field = field;
  } else if (parts[0] == "file") {
    if (parts.size() != 2) throw ConfigError("field 'outer': file:path");
    Mat g = load_matrix_file(parts[1]);
    if (!(g.field() == field))
      throw ConfigError("field 'outer': matrix field order does not match --field");
    data.code = std::make_shared<const LinearCode>(LinearCode::from_generator(std::move(g)));
  } else {
    throw ConfigError("field 'outer': unknown kind '" + parts[0] + "'");
  }
  if (data.is_ensemble) {
    data.h = data.ensemble.variant.h;
    data.k = data.ensemble.nominal_k();
  } else {
    data.h = data.code->h;
    data.k = data.code->k;
  }
  return data;
}

struct Distributions {
  DegreeDistribution omega;
  BivariateDegreeDistribution omega2;
  bool bivariate = false;
};

Distributions parse_dist(const std::string& name, bool multi_edge) {
  Distributions d;
  if (name == "r10") {
    d.omega = omega_r10();
    if (multi_edge) {
      d.omega2 = omega_rq_bivariate(d.omega);
      d.bivariate = true;
    }
  } else if (name == "rq-met") {
    if (!multi_edge) throw ConfigError("field 'dist': rq-met needs a multi-edge construction");
    d.omega2 = omega_rq_bivariate(omega_r10());
    d.bivariate = true;
  } else if (multi_edge) {
    d.omega2 = load_bivariate_degree_file(name);
    d.bivariate = true;
  } else {
    d.omega = load_degree_file(name);
  }
  return d;
}

Construction make_construction(const CommonOpts& opts, const FieldSpec& field,
                               const Distributions& dists, const OuterData& outer) {
  Construction c;
  c.variant = parse_construction(opts.construction);
  c.field = field;
  if (c.is_multi_edge()) {
    if (opts.split_a < 0) throw ConfigError("field 'split-a': required for multi-edge constructions");
    c.ha = static_cast<uint32_t>(opts.split_a);
    if (c.ha > outer.h) throw ConfigError("field 'split-a': exceeds outer length");
    c.hb = outer.h - c.ha;
    c.omega2 = dists.omega2;
  } else {
    c.omega = dists.omega;
  }
  c.validate_for_length(outer.h);
  return c;
}

uint32_t resolve_threads(uint32_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("RAPTOR_BOUNDS_THREADS")) {
    unsigned long v = std::strtoul(env, nullptr, 10);
    if (v > 0) return static_cast<uint32_t>(v);
  }
  return 1;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw ConfigError("field 'out': cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_header(std::ostream& out, const std::string& subcommand, const CommonOpts& opts,
                  const std::string& extra = "") {
  out << "# raptor-bounds " << subcommand << "\n";
  out << "# construction=" << opts.construction << " field=" << opts.field
      << " outer=" << opts.outer << " dist=" << opts.dist;
  if (opts.split_a >= 0) out << " split_a=" << opts.split_a;
  out << " delta=" << opts.delta << " seed=" << opts.seed
      << " threads=" << resolve_threads(opts.threads) << "\n";
  if (!extra.empty()) out << "# " << extra << "\n";
}

// enumerators feeding bound_suite, owned here
struct BoundData {
  WeightEnumerator weight;
  BivariateWeightEnumerator biv_weight;
  CompositionEnumerator composition;
  BivariateCompositionEnumerator biv_composition;
  JointWeightEnumeratorMap joint_weight;
  JointCompositionEnumeratorMap bicomposition;
  BoundInputs inputs;
};

JointWeightEnumeratorMap hamming_biweight(const LinearCode& code) {
  // pairs of dual codewords are few; transform them to the code's biweights
  JointWeightEnumeratorMap dual_pairs = exhaustive_biweight_enum(dual_code(code), false);
  JointWeightEnumeratorMap full =
      binary_biweight_from_dual(dual_pairs, code.h, code.h - code.k);
  JointWeightEnumeratorMap restricted;
  restricted.h = full.h;
  for (const auto& [tau, c] : full.entries)
    if (in_T_2h(tau))
      restricted.entries[tau] = c;
    else
      restricted.excluded_total += c;
  return restricted;
}

BivariateWeightEnumerator hamming_bivariate(const LinearCode& code, uint32_t ha) {
  BivariateWeightEnumerator dual = exhaustive_bivariate_weight_enum(dual_code(code), ha);
  return macwilliams_bivariate(dual, code.h - code.k, 2);
}

BoundData assemble_bound_inputs(ConstructionVariant variant, const OuterData& outer,
                                const FieldSpec& field, uint32_t ha, bool want_lower) {
  BoundData data;
  const uint32_t q = field.q();
  const bool binary = q == 2;

  auto weight_enum = [&]() -> WeightEnumerator {
    if (!outer.is_ensemble) {
      if (outer.kind == "hamming") return hamming_weight_enum_recursive(outer.h);
      return exhaustive_weight_enum(*outer.code);
    }
    if (outer.ensemble.variant.kind == EnsembleVariant::kUniformParityCheck)
      return uniform_pc_weight_enum(outer.h, outer.k, q);
    return ldpc_weight_enum(outer.ensemble.variant.dv, outer.ensemble.variant.dc, outer.h, q);
  };

  switch (variant) {
    case ConstructionVariant::kGfq:
      data.weight = weight_enum();
      data.inputs.weight = &data.weight;
      break;
    case ConstructionVariant::kGfq01:
      if (!outer.is_ensemble && outer.kind != "hamming") {
        data.composition = exhaustive_composition_enum(*outer.code);
      } else {
        data.weight = weight_enum();
        data.composition = composition_from_weight(data.weight, field);
      }
      data.inputs.composition = &data.composition;
      break;
    case ConstructionVariant::kMultiEdge:
      if (!outer.is_ensemble && outer.kind == "hamming") {
        data.biv_weight = hamming_bivariate(*outer.code, ha);
      } else if (!outer.is_ensemble) {
        data.biv_weight = exhaustive_bivariate_weight_enum(*outer.code, ha);
      } else {
        data.biv_weight = met_split_weight_enum(weight_enum(), ha, outer.h - ha);
      }
      data.inputs.biv_weight = &data.biv_weight;
      break;
    case ConstructionVariant::kMultiEdge01:
      if (!outer.is_ensemble && outer.kind != "hamming") {
        data.biv_composition = exhaustive_bivariate_composition_enum(*outer.code, ha);
      } else {
        BivariateWeightEnumerator bw =
            !outer.is_ensemble ? hamming_bivariate(*outer.code, ha)
                               : met_split_weight_enum(weight_enum(), ha, outer.h - ha);
        data.biv_composition = bivariate_composition_from_weight(bw, field);
      }
      data.inputs.biv_composition = &data.biv_composition;
      break;
  }

  bool lb_eligible = variant == ConstructionVariant::kGfq01 ||
                     (variant == ConstructionVariant::kGfq && binary);
  if (want_lower && lb_eligible) {
    if (!outer.is_ensemble) {
      if (binary) {
        data.joint_weight = outer.kind == "hamming" ? hamming_biweight(*outer.code)
                                                    : exhaustive_biweight_enum(*outer.code);
        data.inputs.joint_weight = &data.joint_weight;
      } else {
        data.bicomposition = exhaustive_bicomposition_enum(*outer.code);
        data.inputs.bicomposition = &data.bicomposition;
      }
    } else if (outer.ensemble.variant.kind == EnsembleVariant::kUniformParityCheck) {
      if (binary) {
        data.joint_weight = uniform_pc_joint_weight_binary(outer.h, outer.k);
        data.inputs.joint_weight = &data.joint_weight;
      } else {
        data.bicomposition = uniform_pc_bicomposition(outer.h, outer.k, field);
        data.inputs.bicomposition = &data.bicomposition;
      }
    }
    // LDPC ensembles: no joint enumerator available, upper bounds only
  }
  return data;
}

int cmd_bound(const CommonOpts& opts, bool no_lower) {
  FieldSpec field = parse_field(opts.field);
  OuterData outer = parse_outer(opts.outer, field);
  ConstructionVariant variant = parse_construction(opts.construction);
  bool multi_edge = variant == ConstructionVariant::kMultiEdge ||
                    variant == ConstructionVariant::kMultiEdge01;
  Distributions dists = parse_dist(opts.dist, multi_edge);
  Construction c = make_construction(opts, field, dists, outer);
  std::vector<uint32_t> deltas = parse_range(opts.delta, "delta");

  BoundData data = assemble_bound_inputs(variant, outer, field, c.ha, !no_lower);
  BoundSuiteConfig config;
  config.variant = variant;
  config.field = field;
  config.omega = multi_edge ? nullptr : &c.omega;
  config.omega2 = multi_edge ? &c.omega2 : nullptr;
  config.k = outer.k;
  auto rows = bound_suite(config, data.inputs, deltas);

  Output out(opts.out);
  write_header(out.stream(), "bound", opts);
  write_bound_csv(out.stream(), rows);
  return 0;
}

int cmd_simulate(const CommonOpts& opts, uint64_t target_failures, uint64_t max_trials,
                 uint32_t codes, uint32_t attempts, double ci_level) {
  FieldSpec field = parse_field(opts.field);
  OuterData outer = parse_outer(opts.outer, field);
  ConstructionVariant variant = parse_construction(opts.construction);
  bool multi_edge = variant == ConstructionVariant::kMultiEdge ||
                    variant == ConstructionVariant::kMultiEdge01;
  Distributions dists = parse_dist(opts.dist, multi_edge);
  Construction c = make_construction(opts, field, dists, outer);
  std::vector<uint32_t> deltas = parse_range(opts.delta, "delta");
  uint32_t threads = resolve_threads(opts.threads);

  Output out(opts.out);
  if (outer.is_ensemble) {
    EnsembleCampaign campaign;
    campaign.outer = outer.ensemble;
    campaign.construction = c;
    campaign.deltas = deltas;
    campaign.n_codes = codes;
    campaign.trials_per_code = attempts;
    campaign.seed = opts.seed;
    campaign.ci_level = ci_level;
    campaign.threads = threads;
    EnsembleRun run = run_ensemble(campaign);
    uint32_t kmin = ~0u, kmax = 0;
    for (uint32_t kc : run.realized_k) {
      kmin = std::min(kmin, kc);
      kmax = std::max(kmax, kc);
    }
    std::ostringstream extra;
    extra << "codes=" << codes << " attempts=" << attempts << " m=k_nominal+delta"
          << " k_nominal=" << outer.k << " realized_k_min=" << kmin << " realized_k_max=" << kmax;
    write_header(out.stream(), "simulate", opts, extra.str());
    write_sim_csv(out.stream(), run.results);
  } else {
    RaptorInstance instance(*outer.code, c);
    SingleCampaign campaign;
    campaign.deltas = deltas;
    campaign.target_failures = target_failures;
    campaign.max_trials = max_trials;
    campaign.seed = opts.seed;
    campaign.ci_level = ci_level;
    campaign.threads = threads;
    auto rows = run_single(instance, campaign);
    std::ostringstream extra;
    extra << "target_failures=" << target_failures << " max_trials=" << max_trials
          << " k=" << outer.k;
    write_header(out.stream(), "simulate", opts, extra.str());
    write_sim_csv(out.stream(), rows);
  }
  return 0;
}

int cmd_enumerate(const CommonOpts& opts, const std::string& kind, const std::string& dump_code) {
  FieldSpec field = parse_field(opts.field);
  OuterData outer = parse_outer(opts.outer, field);
  const uint32_t q = field.q();

  if (!dump_code.empty()) {
    if (outer.is_ensemble) throw ConfigError("field 'dump-code': needs an explicit outer code");
    save_matrix_file(dump_code, outer.code->generator);
  }

  auto weight_enum = [&]() -> WeightEnumerator {
    if (!outer.is_ensemble) {
      if (outer.kind == "hamming") return hamming_weight_enum_recursive(outer.h);
      return exhaustive_weight_enum(*outer.code);
    }
    if (outer.ensemble.variant.kind == EnsembleVariant::kUniformParityCheck)
      return uniform_pc_weight_enum(outer.h, outer.k, q);
    return ldpc_weight_enum(outer.ensemble.variant.dv, outer.ensemble.variant.dc, outer.h, q);
  };

  Output out(opts.out);
  write_header(out.stream(), "enumerate", opts, "kind=" + kind);
  if (kind == "weight") {
    write_csv(out.stream(), weight_enum(), q);
  } else if (kind == "composition") {
    if (!outer.is_ensemble && outer.kind != "hamming")
      write_csv(out.stream(), exhaustive_composition_enum(*outer.code));
    else
      write_csv(out.stream(), composition_from_weight(weight_enum(), field));
  } else if (kind == "bivariate-weight") {
    if (opts.split_a < 0) throw ConfigError("field 'split-a': required for bivariate kinds");
    uint32_t ha = static_cast<uint32_t>(opts.split_a);
    if (!outer.is_ensemble && outer.kind == "hamming")
      write_csv(out.stream(), hamming_bivariate(*outer.code, ha), q);
    else if (!outer.is_ensemble)
      write_csv(out.stream(), exhaustive_bivariate_weight_enum(*outer.code, ha), q);
    else
      write_csv(out.stream(), met_split_weight_enum(weight_enum(), ha, outer.h - ha), q);
  } else if (kind == "bivariate-composition") {
    if (opts.split_a < 0) throw ConfigError("field 'split-a': required for bivariate kinds");
    uint32_t ha = static_cast<uint32_t>(opts.split_a);
    if (!outer.is_ensemble && outer.kind != "hamming") {
      write_csv(out.stream(), exhaustive_bivariate_composition_enum(*outer.code, ha));
    } else {
      BivariateWeightEnumerator bw = !outer.is_ensemble
                                         ? hamming_bivariate(*outer.code, ha)
                                         : met_split_weight_enum(weight_enum(), ha, outer.h - ha);
      write_csv(out.stream(), bivariate_composition_from_weight(bw, field));
    }
  } else if (kind == "biweight") {
    if (q != 2) throw ConfigError("field 'kind': biweight export is binary");
    if (!outer.is_ensemble)
      write_csv(out.stream(),
                outer.kind == "hamming" ? hamming_biweight(*outer.code)
                                        : exhaustive_biweight_enum(*outer.code),
                q);
    else if (outer.ensemble.variant.kind == EnsembleVariant::kUniformParityCheck)
      write_csv(out.stream(), uniform_pc_joint_weight_binary(outer.h, outer.k), q);
    else
      throw ConfigError("field 'kind': no biweight enumerator for LDPC ensembles");
  } else if (kind == "bicomposition") {
    if (!outer.is_ensemble)
      write_csv(out.stream(), exhaustive_bicomposition_enum(*outer.code));
    else if (outer.ensemble.variant.kind == EnsembleVariant::kUniformParityCheck)
      write_csv(out.stream(), uniform_pc_bicomposition(outer.h, outer.k, field));
    else
      throw ConfigError("field 'kind': no bicomposition enumerator for LDPC ensembles");
  } else {
    throw ConfigError("field 'kind': unknown enumerator kind '" + kind + "'");
  }
  return 0;
}

int cmd_errexp(const CommonOpts& opts, double rate, const std::string& kernel_name,
               const std::string& eps_range) {
  FieldSpec field = parse_field(opts.field);
  Distributions dists = parse_dist(opts.dist, false);
  KernelVariant kv;
  if (kernel_name == "default")
    kv = kDefaultKernel;
  else if (kernel_name == "pi-limit")
    kv = KernelVariant::kPiLimit;
  else if (kernel_name == "varrho")
    kv = KernelVariant::kVarrho;
  else
    throw ConfigError("field 'kernel': pi-limit|varrho|default");

  auto parts = split(eps_range, ':');
  if (parts.size() != 3) throw ConfigError("field 'eps': expected start:stop:step");
  double start = std::stod(parts[0]), stop = std::stod(parts[1]), step = std::stod(parts[2]);
  if (step <= 0 || stop < start) throw ConfigError("field 'eps': bad range");
  std::vector<double> eps;
  for (double e = start; e <= stop + 1e-12; e += step) eps.push_back(e);

  SpectralShape shape = uniform_pc_spectral_shape(rate, field.q());
  AsymptoticKernel kernel = make_kernel(kv, dists.omega, field.q());
  Output out(opts.out);
  write_header(out.stream(), "errexp", opts,
               "rate=" + std::to_string(rate) + " kernel=" + kernel_name);
  write_errexp_csv(out.stream(), shape, kernel, eps);
  return 0;
}

int cmd_oracle(const CommonOpts& opts) {
  FieldSpec field = parse_field(opts.field);
  OuterData outer = parse_outer(opts.outer, field);
  if (outer.is_ensemble) throw ConfigError("field 'outer': the oracle needs an explicit code");
  ConstructionVariant variant = parse_construction(opts.construction);
  bool multi_edge = variant == ConstructionVariant::kMultiEdge ||
                    variant == ConstructionVariant::kMultiEdge01;
  Distributions dists = parse_dist(opts.dist, multi_edge);
  Construction c = make_construction(opts, field, dists, outer);
  std::vector<uint32_t> deltas = parse_range(opts.delta, "delta");

  RaptorInstance instance(*outer.code, c);
  Output out(opts.out);
  write_header(out.stream(), "oracle", opts);
  out.stream() << "delta,p_exact\n";
  for (uint32_t delta : deltas) {
    uint32_t m = outer.k + delta;
    Rat exact;
    bool have = false;
    try {
      exact = exact_pf_inclusion_exclusion(instance, m);
      have = true;
    } catch (const FeasibilityError&) {
    }
    try {
      Rat tuples = exact_pf_tuples(instance, m);
      if (have && tuples != exact)
        throw ConfigError("oracle disagreement between tuple and inclusion-exclusion routes");
      exact = tuples;
      have = true;
    } catch (const FeasibilityError&) {
    }
    if (!have)
      throw FeasibilityError("both oracles infeasible at delta " + std::to_string(delta), m);
    out.stream() << delta << "," << format_sig17(exact.get_d()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Raptor code failure-probability bounds, simulations, and oracles"};
  app.require_subcommand(1);

  CommonOpts opts;
  bool no_lower = false;
  uint64_t target_failures = 100, max_trials = 1'000'000;
  uint32_t codes = 100, attempts = 100;
  double ci_level = 0.95, rate = 0.95;
  std::string kind = "weight", dump_code, kernel_name = "default", eps_range = "0:0.2:0.005";

  auto add_common = [&](CLI::App* sub, bool needs_outer) {
    sub->add_option("--construction", opts.construction, "gfq|met|gfq01|met01");
    sub->add_option("--field", opts.field, "field as P[:M[:MODULUS]]");
    if (needs_outer)
      sub->add_option("--outer", opts.outer, "hamming:t | uniform-pc:h:k | ldpc:dv:dc:h | file:path")
          ->required();
    sub->add_option("--dist", opts.dist, "r10 | rq-met | file path");
    sub->add_option("--split-a", opts.split_a, "multi-edge type-A part size hA");
    sub->add_option("--delta", opts.delta, "absolute overheads start:stop:step");
    sub->add_option("--seed", opts.seed, "master seed");
    sub->add_option("--threads", opts.threads, "worker count (env RAPTOR_BOUNDS_THREADS)");
    sub->add_option("--out", opts.out, "output CSV path ('-' = stdout)");
  };

  CLI::App* bound = app.add_subcommand("bound", "upper/lower failure-probability bounds");
  add_common(bound, true);
  bound->add_flag("--no-lower", no_lower, "skip the S2-based lower bounds");

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo failure-rate estimation");
  add_common(simulate, true);
  simulate->add_option("--target-failures", target_failures, "stop after this many failures");
  simulate->add_option("--max-trials", max_trials, "trial cap per delta");
  simulate->add_option("--codes", codes, "ensemble: number of sampled outer codes");
  simulate->add_option("--attempts", attempts, "ensemble: decoding attempts per code");
  simulate->add_option("--ci-level", ci_level, "confidence level (default 0.95)");

  CLI::App* enumerate = app.add_subcommand("enumerate", "export outer-code enumerators");
  add_common(enumerate, true);
  enumerate->add_option("--kind", kind,
                        "weight|composition|bivariate-weight|bivariate-composition|biweight|bicomposition");
  enumerate->add_option("--dump-code", dump_code, "also write the generator matrix");

  CLI::App* errexp = app.add_subcommand("errexp", "error-exponent lower bound");
  add_common(errexp, false);
  errexp->add_option("--rate", rate, "outer code rate R");
  errexp->add_option("--kernel", kernel_name, "pi-limit|varrho|default");
  errexp->add_option("--eps", eps_range, "relative overheads start:stop:step");

  CLI::App* oracle = app.add_subcommand("oracle", "exact failure probability at desk scale");
  add_common(oracle, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (bound->parsed()) return cmd_bound(opts, no_lower);
    if (simulate->parsed())
      return cmd_simulate(opts, target_failures, max_trials, codes, attempts, ci_level);
    if (enumerate->parsed()) return cmd_enumerate(opts, kind, dump_code);
    if (errexp->parsed()) return cmd_errexp(opts, rate, kernel_name, eps_range);
    if (oracle->parsed()) return cmd_oracle(opts);
  } catch (const FeasibilityError& e) {
    std::cerr << "feasibility: " << e.what() << "\n";
    return 3;
  } catch (const ConfigError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
