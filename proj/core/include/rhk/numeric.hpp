#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace rhk {

// Gamma function via a Lanczos approximation (g = 7, 9 coefficients),
// accurate to ~15 significant digits on the positive axis.  Negative
// non-integer arguments go through the reflection formula.
double gamma_fn(double x);

// log|Gamma(x)| for x > 0.
double lgamma_fn(double x);

// 1/Gamma(x) for any real x; returns 0 at the poles x = 0, -1, -2, ...
double rgamma_fn(double x);

// sin(pi*x) with argument reduction done on x, so large arguments keep
// full relative accuracy near the zeros.
double sinpi(double x);

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Fast evaluator for x^(-alpha) on [1, 2^63).  One Chebyshev fit of
// m^(-alpha) on the mantissa interval plus an exact table of octave
// scale factors.  Relative error is below 5e-15; see unit tests.
// Used on the hot path of grid compensator sums where std::pow is the
// dominant cost.
class PowNeg {
 public:
  explicit PowNeg(double alpha);
  double operator()(double x) const;
  double alpha() const { return alpha_; }

 private:
  double alpha_ = 0.0;
  double cheb_[24] = {};      // Chebyshev coefficients on [0.5, 1]
  double octave_[1088] = {};  // 2^(-e*alpha), e = -63..1023 (offset 64)
};

// Least-squares line fit y ~ a + b*x. Returns {intercept, slope,
// slope_stderr}.
struct LineFit {
  double intercept = 0.0;
  double slope = 0.0;
  double slope_stderr = 0.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace rhk
