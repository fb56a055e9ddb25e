#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "raptor/raptor.hpp"

namespace raptor {

struct SimResult {
  uint32_t delta = 0;
  uint64_t trials = 0;
  uint64_t failures = 0;
  double p_hat = 0;
  double ci_low = 0, ci_high = 1;
};

// Decoding-failure campaign against one fixed outer code. Stops per delta at
// target_failures or max_trials, whichever comes first, at a deterministic
// batch boundary so results do not depend on the worker count.
struct SingleCampaign {
  std::vector<uint32_t> deltas;
  uint64_t target_failures = 100;
  uint64_t max_trials = 1'000'000;
  uint64_t seed = 1;
  double ci_level = 0.95;  // Clopper-Pearson
  uint32_t threads = 1;
};

std::vector<SimResult> run_single(const RaptorInstance& instance, const SingleCampaign& campaign);

// Ensemble campaign: n_codes outer codes, trials_per_code decoding attempts
// per code and delta, always with m = k + delta collected symbols (nominal k).
// The confidence interval is a code-level bootstrap (1000 resamples,
// percentile method); realized dimensions k_C are reported alongside.
struct EnsembleCampaign {
  OuterEnsembleSpec outer;
  Construction construction;
  std::vector<uint32_t> deltas;
  uint32_t n_codes = 100;
  uint32_t trials_per_code = 100;
  uint64_t seed = 1;
  double ci_level = 0.95;
  uint32_t threads = 1;
};

struct EnsembleRun {
  std::vector<SimResult> results;
  std::vector<uint32_t> realized_k;  // k_C per sampled code
};

EnsembleRun run_ensemble(const EnsembleCampaign& campaign);

// Exact binomial interval by regularized-incomplete-beta inversion
// (bisection to 1e-12).
std::pair<double, double> clopper_pearson(uint64_t failures, uint64_t trials, double level);

// CSV: delta,trials,failures,p_hat,ci_low,ci_high
void write_sim_csv(std::ostream& out, std::span<const SimResult> rows);

}  // namespace raptor
