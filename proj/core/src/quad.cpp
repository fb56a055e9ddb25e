#include "raptor/quad.hpp"

#include <cmath>
#include <cstdio>

namespace raptor {

std::string format_sig17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

f128 LogSumExp::log_sum() const {
  if (terms_.empty()) return -HUGE_VALQ;
  f128 max = terms_[0];
  for (f128 t : terms_)
    if (t > max) max = t;
  if (isinfq(max) && max < 0) return -HUGE_VALQ;
  f128 acc = 0;
  for (f128 t : terms_) acc += expq(t - max);
  return max + logq(acc);
}

f128 LogSumExp::sum() const {
  f128 ls = log_sum();
  if (isinfq(ls) && ls < 0) return 0;
  return expq(ls);
}

}  // namespace raptor
