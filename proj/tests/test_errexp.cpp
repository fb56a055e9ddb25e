#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "raptor/bounds.hpp"
#include "raptor/errexp.hpp"

using namespace raptor;

TEST_CASE("linear random fountain reference") {
  CHECK(lrfc_errexp(0.1, 2) == 0.1);
  CHECK(lrfc_errexp(0.1, 4) == 0.2);
  CHECK(lrfc_errexp(0, 16) == 0);
}

TEST_CASE("kernels coincide and split where expected") {
  DegreeDistribution deg1 = DegreeDistribution::from_terms({{1, Rat(1)}});
  KernelCheck mid = kernel_limit_check(deg1, 1000, 2, 0.5);
  CHECK(mid.pi_l_value == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid.pi_limit == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mid.varrho == doctest::Approx(0.5).epsilon(1e-12));

  KernelCheck quarter = kernel_limit_check(deg1, 4000, 2, 0.25);
  CHECK(quarter.pi_limit == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(quarter.varrho == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(quarter.pi_l_value == doctest::Approx(0.75).epsilon(1e-3));
}

TEST_CASE("the two kernels are complementary for q = 2") {
  DegreeDistribution omega = omega_r10();
  AsymptoticKernel lim = make_kernel(KernelVariant::kPiLimit, omega, 2);
  AsymptoticKernel rho = make_kernel(KernelVariant::kVarrho, omega, 2);
  for (int i = 1; i <= 64; ++i) {
    double w = static_cast<double>(i) / 65;
    CHECK(lim.value(w) + rho.value(w) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("pi_limit is the uniform limit of pi_l") {
  DegreeDistribution omega = omega_r10();
  for (uint32_t q : {2u, 4u}) {
    AsymptoticKernel lim = make_kernel(KernelVariant::kPiLimit, omega, q);
    double prev_gap = 1e9;
    for (uint32_t h : {100u, 400u, 1600u}) {
      double gap = 0;
      for (int i = 1; i <= 64; ++i) {
        double w = static_cast<double>(i) / 65;
        uint32_t l = static_cast<uint32_t>(std::floor(w * h));
        double fin = to_double(pi_l(l, omega, h, q));
        gap = std::max(gap, std::fabs(fin - lim.value(w)));
      }
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("error exponent bound: finiteness and monotonicity") {
  DegreeDistribution omega = omega_r10();
  SpectralShape shape = uniform_pc_spectral_shape(0.95, 2);
  AsymptoticKernel kernel = make_kernel(kDefaultKernel, omega, 2);
  double prev = -1e18;
  for (double eps : {0.0, 0.01, 0.05, 0.1, 0.5, 1.0}) {
    double v = errexp_lower_bound(eps, shape, kernel);
    CHECK(std::isfinite(v));
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
}

TEST_CASE("published decoding thresholds pin the default kernel") {
  DegreeDistribution omega = omega_r10();
  AsymptoticKernel kernel = make_kernel(kDefaultKernel, omega, 2);
  double t95 = ml_threshold_upper(uniform_pc_spectral_shape(0.95, 2), kernel);
  double t98 = ml_threshold_upper(uniform_pc_spectral_shape(0.98, 2), kernel);
  double t90 = ml_threshold_upper(uniform_pc_spectral_shape(0.90, 2), kernel);
  CHECK(std::fabs(t95 - 1.33e-2) <= 0.05 * 1.33e-2);
  CHECK(std::fabs(t98 - 6e-2) <= 0.05 * 6e-2);
  CHECK(std::fabs(t90 - 5e-4) <= 0.20 * 5e-4);
}

TEST_CASE("bound approaches the LRFC line as the outer rate vanishes") {
  DegreeDistribution omega = omega_r10();
  AsymptoticKernel kernel = make_kernel(kDefaultKernel, omega, 2);
  double target = lrfc_errexp(0.1, 2);
  double prev = -1e18;
  for (double rate : {0.5, 0.2, 0.05}) {
    double v = errexp_lower_bound(0.1, uniform_pc_spectral_shape(rate, 2), kernel);
    CHECK(v <= target + 1e-12);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(target - prev <= 1e-3);
}

TEST_CASE("errexp CSV carries the threshold summary line") {
  DegreeDistribution omega = omega_r10();
  SpectralShape shape = uniform_pc_spectral_shape(0.95, 2);
  AsymptoticKernel kernel = make_kernel(kDefaultKernel, omega, 2);
  std::vector<double> eps = {0.0, 0.05, 0.1};
  std::ostringstream out;
  write_errexp_csv(out, shape, kernel, eps);
  std::string text = out.str();
  CHECK(text.rfind("epsilon,bound_bits_per_symbol\n", 0) == 0);
  CHECK(text.find("# ml_threshold_upper=") != std::string::npos);
}
