#include <benchmark/benchmark.h>

#include "raptor/montecarlo.hpp"
#include "raptor/raptor.hpp"

using namespace raptor;

namespace {

RaptorInstance hamming_instance() {
  FieldSpec f2 = FieldSpec::make(2, 1);
  Construction c;
  c.variant = ConstructionVariant::kGfq;
  c.field = f2;
  c.omega = omega_r10();
  return RaptorInstance(hamming_generator(6), std::move(c));
}

RaptorInstance gf4_instance() {
  FieldSpec f4 = FieldSpec::make(2, 2);
  Rng rng(1);
  LinearCode code = sample_uniform_pc(70, 64, f4, rng);
  Construction c;
  c.variant = ConstructionVariant::kGfq;
  c.field = f4;
  c.omega = omega_r10();
  return RaptorInstance(std::move(code), std::move(c));
}

void decode_loop(benchmark::State& state, const RaptorInstance& inst, uint32_t m) {
  Rng rng(12345);
  std::vector<LTColumn> cols(m);
  uint64_t failures = 0;
  for (auto _ : state) {
    for (uint32_t i = 0; i < m; ++i) cols[i] = sample_column(inst.construction(), inst.outer().h, rng);
    failures += inst.ml_failure(cols);
  }
  benchmark::DoNotOptimize(failures);
}

void BM_DecodeHamming63(benchmark::State& state) {
  RaptorInstance inst = hamming_instance();
  decode_loop(state, inst, 57 + 10);
}
BENCHMARK(BM_DecodeHamming63);

void BM_DecodeGF4_h70(benchmark::State& state) {
  RaptorInstance inst = gf4_instance();
  decode_loop(state, inst, inst.outer().k + 10);
}
BENCHMARK(BM_DecodeGF4_h70);

void BM_InactivationHamming63(benchmark::State& state) {
  RaptorInstance inst = hamming_instance();
  Rng rng(9);
  uint32_t m = 57 + 10;
  std::vector<LTColumn> cols(m);
  uint64_t failures = 0;
  for (auto _ : state) {
    for (uint32_t i = 0; i < m; ++i) cols[i] = sample_column(inst.construction(), 63, rng);
    failures += inst.inactivation_failure(cols);
  }
  benchmark::DoNotOptimize(failures);
}
BENCHMARK(BM_InactivationHamming63);

}  // namespace

BENCHMARK_MAIN();
