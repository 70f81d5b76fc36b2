#pragma once

#include <quadmath.h>

#include <cmath>
#include <utility>
#include <vector>

namespace testutil {

// Independent Mittag-Leffler oracle: direct series in quad precision with
// adaptive truncation (200+ terms for typical arguments).  Deliberately naive
// and separate from the library's evaluation path.  Trustworthy while the
// alternating-series cancellation stays inside quad headroom, i.e. for
// |z|^(1/alpha) below ~46; callers must stay within that bound.
inline double ml_series_oracle(double alpha, double beta, double z) {
  __float128 sum = 0.0;
  __float128 zp = 1.0;
  __float128 absum = 0.0;
  const __float128 zq = z;
  double peak = 0.0;
  for (int n = 0; n < 20000; ++n) {
    __float128 a = static_cast<__float128>(alpha) * n + beta;
    __float128 t = zp * expq(-lgammaq(a));
    sum += t;
    absum += fabsq(t);
    double at = static_cast<double>(fabsq(t));
    if (at > peak) peak = at;
    if (at < peak && at < 1e-40 * static_cast<double>(absum)) break;
    zp *= zq;
  }
  return static_cast<double>(sum);
}

inline double ml_oracle_safe_z(double alpha) { return std::pow(46.0, alpha); }

inline std::pair<double, double> mean_se(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s2 = 0.0;
  for (double x : v) s2 += (x - m) * (x - m);
  s2 /= static_cast<double>(v.size() - 1);
  return {m, std::sqrt(s2 / static_cast<double>(v.size()))};
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

}  // namespace testutil
