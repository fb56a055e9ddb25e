#include "raptor/errexp.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include "raptor/bounds.hpp"
#include "raptor/errors.hpp"

namespace raptor {

namespace {

double binary_entropy(double w) {
  if (w <= 0 || w >= 1) return 0;
  return -w * std::log2(w) - (1 - w) * std::log2(1 - w);
}

constexpr double kNegInf = -1e300;

}  // namespace

SpectralShape uniform_pc_spectral_shape(double rate, uint32_t q) {
  if (rate <= 0 || rate > 1) throw ConfigError("rate must lie in (0, 1]");
  SpectralShape shape;
  shape.rate = rate;
  shape.q = q;
  shape.value = [rate, q](double w) {
    return binary_entropy(w) + w * std::log2(static_cast<double>(q - 1)) -
           (1 - rate) * std::log2(static_cast<double>(q));
  };
  return shape;
}

AsymptoticKernel make_kernel(KernelVariant variant, const DegreeDistribution& omega, uint32_t q) {
  std::vector<std::pair<uint32_t, double>> terms;
  for (const auto& [d, p] : omega.terms()) terms.emplace_back(d, to_double(to_f128(p)));
  AsymptoticKernel kernel;
  kernel.variant = variant;
  if (variant == KernelVariant::kPiLimit) {
    kernel.value = [terms, q](double w) {
      double mix = 0;
      for (const auto& [d, p] : terms) mix += p * std::pow(1 - q * w / (q - 1), d);
      return 1.0 / q + (q - 1.0) / q * mix;
    };
  } else {
    kernel.value = [terms](double w) {
      double acc = 0;
      for (const auto& [d, p] : terms) acc += p * (1 - std::pow(1 - 2 * w, d));
      return 0.5 * acc;
    };
  }
  return kernel;
}

namespace {

double objective(double w, const SpectralShape& shape, const AsymptoticKernel& kernel,
                 double eps) {
  double kv = kernel.value(w);
  if (kv <= 0) return kNegInf;
  double g = shape.value(w);
  if (!std::isfinite(g)) throw ConfigError("spectral shape undefined on (0, 1]");
  return g / shape.rate + (1 + eps) * std::log2(kv);
}

double sup_objective(const SpectralShape& shape, const AsymptoticKernel& kernel, double eps) {
  const int kGrid = 2048;
  double best = kNegInf, best_w = 1.0 / kGrid;
  for (int i = 1; i <= kGrid; ++i) {
    double w = static_cast<double>(i) / kGrid;
    double v = objective(w, shape, kernel, eps);
    if (v > best) {
      best = v;
      best_w = w;
    }
  }
  // golden-section refinement around the best grid point
  const double gr = (std::sqrt(5.0) - 1) / 2;
  double lo = std::max(best_w - 1.0 / kGrid, 1e-12);
  double hi = std::min(best_w + 1.0 / kGrid, 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = objective(c, shape, kernel, eps), fd = objective(d, shape, kernel, eps);
  while (hi - lo > 1e-9) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = objective(c, shape, kernel, eps);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = objective(d, shape, kernel, eps);
    }
  }
  return std::max(best, std::max(fc, fd));
}

}  // namespace

double errexp_lower_bound(double eps, const SpectralShape& shape, const AsymptoticKernel& kernel) {
  if (eps < 0) throw ConfigError("relative overhead must be nonnegative");
  return -sup_objective(shape, kernel, eps);
}

double ml_threshold_upper(const SpectralShape& shape, const AsymptoticKernel& kernel) {
  double at0 = errexp_lower_bound(0, shape, kernel);
  double at10 = errexp_lower_bound(10, shape, kernel);
  if (at0 >= 0 || at10 <= 0)
    throw ConfigError("no sign change of the error-exponent bound in [0, 10]");
  double lo = 0, hi = 10;
  while (hi - lo > 1e-8) {
    double mid = 0.5 * (lo + hi);
    if (errexp_lower_bound(mid, shape, kernel) < 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double lrfc_errexp(double eps, uint32_t q) { return eps * std::log2(static_cast<double>(q)); }

KernelCheck kernel_limit_check(const DegreeDistribution& omega, uint32_t h, uint32_t q,
                               double omega_point) {
  if (omega_point <= 0 || omega_point >= 1) throw ConfigError("omega must lie in (0, 1)");
  KernelCheck check;
  uint32_t l = static_cast<uint32_t>(std::floor(omega_point * h));
  check.pi_l_value = to_double(pi_l(l, omega, h, q));
  check.pi_limit = make_kernel(KernelVariant::kPiLimit, omega, q).value(omega_point);
  check.varrho = make_kernel(KernelVariant::kVarrho, omega, q).value(omega_point);
  return check;
}

void write_errexp_csv(std::ostream& out, const SpectralShape& shape,
                      const AsymptoticKernel& kernel, std::span<const double> eps_values) {
  out << "epsilon,bound_bits_per_symbol\n";
  for (double eps : eps_values)
    out << format_sig17(eps) << "," << format_sig17(errexp_lower_bound(eps, shape, kernel))
        << "\n";
  try {
    out << "# ml_threshold_upper=" << format_sig17(ml_threshold_upper(shape, kernel)) << "\n";
  } catch (const ConfigError&) {
    out << "# ml_threshold_upper=none (no crossing in [0, 10])\n";
  }
}

}  // namespace raptor
