#pragma once

#include <quadmath.h>

#include <string>
#include <vector>

namespace raptor {

using f128 = __float128;

inline double to_double(f128 x) { return static_cast<double>(x); }

// 17 significant digits: round-trips through a double parse within 1 ulp.
std::string format_sig17(double x);

// Log-domain accumulator: add log-terms, read back log(sum of exp terms).
// Reduction is done in insertion order against the running maximum, so the
// result is deterministic for a fixed term sequence.
class LogSumExp {
 public:
  void add(f128 log_term) { terms_.push_back(log_term); }
  bool empty() const { return terms_.empty(); }
  f128 log_sum() const;   // -inf when empty
  f128 sum() const;       // exp(log_sum), 0 when empty

 private:
  std::vector<f128> terms_;
};

}  // namespace raptor
