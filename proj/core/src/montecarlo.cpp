#include "raptor/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include "raptor/errors.hpp"
#include "raptor/quad.hpp"

namespace raptor {

namespace {

constexpr uint64_t kBatch = 4096;  // stopping decisions at fixed batch boundaries

// regularized incomplete beta I_x(a, b), continued-fraction evaluation
double betacf(double a, double b, double x) {
  const int kMaxIter = 300;
  const double eps = 3e-16, fpmin = 1e-300;
  double qab = a + b, qap = a + 1, qam = a - 1;
  double c = 1, d = 1 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1 / d;
  double h = d;
  for (int m2 = 1; m2 <= kMaxIter; ++m2) {
    double m = m2;
    double aa = m * (b - m) * x / ((qam + 2 * m) * (a + 2 * m));
    d = 1 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + 2 * m) * (qap + 2 * m));
    d = 1 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1) < eps) break;
  }
  return h;
}

double betai(double a, double b, double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  double ln = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
              b * std::log1p(-x);
  double front = std::exp(ln);
  if (x < (a + 1) / (a + b + 2)) return front * betacf(a, b, x) / a;
  return 1 - front * betacf(b, a, 1 - x) / b;
}

double beta_inv(double a, double b, double p) {
  double lo = 0, hi = 1;
  for (int i = 0; i < 80 && hi - lo > 1e-12; ++i) {
    double mid = 0.5 * (lo + hi);
    if (betai(a, b, mid) < p)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

uint32_t hardware_threads(uint32_t requested) {
  if (requested > 0) return requested;
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

// failures among trial indices [begin, end) for one (instance, m, stream)
uint64_t count_failures(const RaptorInstance& instance, uint32_t m, uint64_t stream_seed,
                        uint64_t begin, uint64_t end) {
  uint64_t failures = 0;
  std::vector<LTColumn> columns(m);
  for (uint64_t t = begin; t < end; ++t) {
    Rng rng(mix_seed(stream_seed, t));
    for (uint32_t c = 0; c < m; ++c)
      columns[c] = sample_column(instance.construction(), instance.outer().h, rng);
    failures += instance.ml_failure(columns);
  }
  return failures;
}

uint64_t count_failures_parallel(const RaptorInstance& instance, uint32_t m, uint64_t stream_seed,
                                 uint64_t begin, uint64_t end, uint32_t threads) {
  if (threads <= 1 || end - begin < 2 * threads)
    return count_failures(instance, m, stream_seed, begin, end);
  std::vector<uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  uint64_t total = end - begin, chunk = (total + threads - 1) / threads;
  for (uint32_t w = 0; w < threads; ++w) {
    uint64_t lo = begin + w * chunk, hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, w, lo, hi] { partial[w] = count_failures(instance, m, stream_seed, lo, hi); });
  }
  for (auto& th : pool) th.join();
  uint64_t sum = 0;
  for (uint64_t f : partial) sum += f;
  return sum;
}

}  // namespace

std::vector<SimResult> run_single(const RaptorInstance& instance, const SingleCampaign& campaign) {
  if (campaign.target_failures == 0 && campaign.max_trials == 0)
    throw ConfigError("campaign needs a stop rule");
  uint64_t target = campaign.target_failures ? campaign.target_failures : ~uint64_t{0};
  uint64_t cap = campaign.max_trials ? campaign.max_trials : ~uint64_t{0};
  uint32_t threads = hardware_threads(campaign.threads);

  std::vector<SimResult> out;
  for (size_t di = 0; di < campaign.deltas.size(); ++di) {
    uint32_t delta = campaign.deltas[di];
    uint32_t m = instance.outer().k + delta;
    uint64_t stream = mix_seed(campaign.seed, di);
    uint64_t trials = 0, failures = 0;
    while (trials < cap && failures < target) {
      uint64_t batch = std::min(kBatch, cap - trials);
      failures += count_failures_parallel(instance, m, stream, trials, trials + batch, threads);
      trials += batch;
    }
    SimResult r;
    r.delta = delta;
    r.trials = trials;
    r.failures = failures;
    r.p_hat = trials ? static_cast<double>(failures) / trials : 0;
    std::tie(r.ci_low, r.ci_high) = clopper_pearson(failures, trials, campaign.ci_level);
    out.push_back(r);
  }
  return out;
}

EnsembleRun run_ensemble(const EnsembleCampaign& campaign) {
  const OuterEnsembleSpec& spec = campaign.outer;
  uint32_t threads = hardware_threads(campaign.threads);
  const uint32_t n_codes = campaign.n_codes;
  const uint32_t tpc = campaign.trials_per_code;
  if (n_codes == 0 || tpc == 0) throw ConfigError("ensemble campaign needs codes and trials");

  // sample codes deterministically from the master seed
  std::vector<RaptorInstance> instances;
  instances.reserve(n_codes);
  EnsembleRun run;
  for (uint32_t c = 0; c < n_codes; ++c) {
    Rng rng(mix_seed(campaign.seed, 0x10000 + c));
    LinearCode code = [&] {
      switch (spec.variant.kind) {
        case EnsembleVariant::kUniformParityCheck:
          return sample_uniform_pc(spec.variant.h, spec.variant.k, spec.field, rng);
        case EnsembleVariant::kRegularLdpc:
          return sample_regular_ldpc(spec.variant.dv, spec.variant.dc, spec.variant.h, spec.field,
                                     rng);
        case EnsembleVariant::kExplicit:
          if (!spec.explicit_code) throw ConfigError("explicit ensemble without a code");
          return *spec.explicit_code;
      }
      throw ConfigError("unknown ensemble variant");
    }();
    run.realized_k.push_back(code.k);
    instances.emplace_back(std::move(code), campaign.construction);
  }
  const uint32_t k_nominal = spec.nominal_k();

  for (size_t di = 0; di < campaign.deltas.size(); ++di) {
    uint32_t delta = campaign.deltas[di];
    uint32_t m = k_nominal + delta;
    std::vector<uint64_t> per_code(n_codes, 0);

    std::vector<std::thread> pool;
    std::atomic<uint32_t> next{0};
    auto worker = [&] {
      for (;;) {
        uint32_t c = next.fetch_add(1);
        if (c >= n_codes) return;
        uint64_t stream = mix_seed(campaign.seed, di * 0x100000ull + c);
        per_code[c] = count_failures(instances[c], m, stream, 0, tpc);
      }
    };
    for (uint32_t w = 0; w < std::min(threads, n_codes); ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    uint64_t failures = 0;
    for (uint64_t f : per_code) failures += f;
    SimResult r;
    r.delta = delta;
    r.trials = static_cast<uint64_t>(n_codes) * tpc;
    r.failures = failures;
    r.p_hat = static_cast<double>(failures) / r.trials;

    // code-level bootstrap, percentile method
    const uint32_t kResamples = 1000;
    std::vector<double> means(kResamples);
    Rng boot(mix_seed(campaign.seed, 0xB007 + di));
    for (uint32_t b = 0; b < kResamples; ++b) {
      uint64_t sum = 0;
      for (uint32_t i = 0; i < n_codes; ++i) sum += per_code[boot.below(n_codes)];
      means[b] = static_cast<double>(sum) / (static_cast<double>(n_codes) * tpc);
    }
    std::sort(means.begin(), means.end());
    double alpha = (1 - campaign.ci_level) / 2;
    r.ci_low = means[static_cast<size_t>(std::floor(alpha * (kResamples - 1)))];
    r.ci_high = means[static_cast<size_t>(std::ceil((1 - alpha) * (kResamples - 1)))];
    run.results.push_back(r);
  }
  return run;
}

std::pair<double, double> clopper_pearson(uint64_t failures, uint64_t trials, double level) {
  if (trials == 0 || failures > trials || level <= 0 || level >= 1)
    throw ConfigError("invalid Clopper-Pearson arguments");
  double alpha = (1 - level) / 2;
  double low = failures == 0
                   ? 0.0
                   : beta_inv(static_cast<double>(failures),
                              static_cast<double>(trials - failures + 1), alpha);
  double high = failures == trials
                    ? 1.0
                    : beta_inv(static_cast<double>(failures + 1),
                               static_cast<double>(trials - failures), 1 - alpha);
  return {low, high};
}

void write_sim_csv(std::ostream& out, std::span<const SimResult> rows) {
  out << "delta,trials,failures,p_hat,ci_low,ci_high\n";
  for (const SimResult& r : rows)
    out << r.delta << "," << r.trials << "," << r.failures << "," << format_sig17(r.p_hat) << ","
        << format_sig17(r.ci_low) << "," << format_sig17(r.ci_high) << "\n";
}

}  // namespace raptor
