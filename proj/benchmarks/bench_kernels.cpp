#include <benchmark/benchmark.h>

#include "raptor/bounds.hpp"
#include "raptor/outercodes.hpp"

using namespace raptor;

namespace {

void BM_PiL_Hamming63(benchmark::State& state) {
  DegreeDistribution omega = omega_r10();
  uint32_t l = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pi_l(l, omega, 63, 2));
    l = l % 63 + 1;
  }
}
BENCHMARK(BM_PiL_Hamming63);

void BM_UbGfq01_GF4_h70(benchmark::State& state) {
  FieldSpec f4 = FieldSpec::make(2, 2);
  DegreeDistribution omega = omega_r10();
  WeightEnumerator a = uniform_pc_weight_enum(70, 64, 4);
  CompositionEnumerator comp = composition_from_weight(a, f4);
  for (auto _ : state) benchmark::DoNotOptimize(ub_gfq01(comp, omega, 64, 10, f4));
}
BENCHMARK(BM_UbGfq01_GF4_h70)->Unit(benchmark::kMillisecond);

void BM_S2Binary_Hamming63(benchmark::State& state) {
  DegreeDistribution omega = omega_r10();
  JointWeightEnumeratorMap jw = uniform_pc_joint_weight_binary(63, 57);
  for (auto _ : state) benchmark::DoNotOptimize(s2_binary(jw, omega, 67, 63));
}
BENCHMARK(BM_S2Binary_Hamming63)->Unit(benchmark::kMillisecond);

}  // namespace
