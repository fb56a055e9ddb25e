#pragma once

#include <functional>
#include <iosfwd>
#include <span>

#include "raptor/degree.hpp"
#include "raptor/quad.hpp"

namespace raptor {

// Exponential growth rate (bits) of the expected weight enumerator at
// normalized weight omega, for a code ensemble sequence of fixed rate.
struct SpectralShape {
  double rate = 0;
  uint32_t q = 2;
  std::function<double(double)> value;  // omega in (0, 1] -> G(omega)
};

// G(omega) = Hb(omega) + omega log2(q-1) - (1-R) log2 q
SpectralShape uniform_pc_spectral_shape(double rate, uint32_t q);

// Two closed forms for the large-h limit of the one-column zero
// probability; for q = 2 they are exact complements, so both stay
// selectable and the reported decoding thresholds pin the default.
enum class KernelVariant {
  kPiLimit,     // 1/q + (q-1)/q sum_j Omega_j (1 - q omega/(q-1))^j
  kVarrho       // (1/2) sum_j Omega_j [1 - (1-2 omega)^j]
};

struct AsymptoticKernel {
  KernelVariant variant = KernelVariant::kPiLimit;
  std::function<double(double)> value;
};

AsymptoticKernel make_kernel(KernelVariant variant, const DegreeDistribution& omega, uint32_t q);

// Verified against the published decoding thresholds; see the errexp tests.
constexpr KernelVariant kDefaultKernel = KernelVariant::kPiLimit;

// E(eps) >= -sup_{omega in (0,1]} [G(omega)/R + (1+eps) log2 kernel(omega)],
// located on a 2048-point grid refined by golden section to 1e-9 in omega.
double errexp_lower_bound(double eps, const SpectralShape& shape, const AsymptoticKernel& kernel);

// Zero crossing of the bound on [0, 10] by bisection to 1e-8; the bound must
// be negative at eps = 0 and positive by eps = 10.
double ml_threshold_upper(const SpectralShape& shape, const AsymptoticKernel& kernel);

// Linear random fountain code reference: eps * log2 q.
double lrfc_errexp(double eps, uint32_t q);

// Finite-h kernel against both limits, for convergence measurements.
struct KernelCheck {
  double pi_l_value = 0;
  double pi_limit = 0;
  double varrho = 0;
};
KernelCheck kernel_limit_check(const DegreeDistribution& omega, uint32_t h, uint32_t q,
                               double omega_point);

// CSV: epsilon,bound_bits_per_symbol; threshold on a trailing comment line.
void write_errexp_csv(std::ostream& out, const SpectralShape& shape,
                      const AsymptoticKernel& kernel, std::span<const double> eps_values);

}  // namespace raptor
