#pragma once

#include <memory>
#include <string>

#include "rhk/numeric.hpp"

namespace rhk {

enum class KernelFamily { ShiftedPareto, ParetoFrom1 };

// A heavy-tailed excitation kernel with unit mass and exact power tail:
//   ShiftedPareto:  phi(x) = alpha (1+x)^-(1+alpha),  F(x) = 1 - (1+x)^-alpha
//   ParetoFrom1:    phi(x) = alpha x^-(1+alpha) 1{x>=1},  F(x) = 1 - x^-alpha
// Both have tail constant K = lim alpha x^alpha (1 - F(x)) = alpha, so the
// regime constant delta = K Gamma(1-alpha)/alpha collapses to Gamma(1-alpha).
struct KernelSpec {
  KernelFamily family = KernelFamily::ShiftedPareto;
  double alpha = 0.0;  // tail index, in (0, 1)
};

void validate(const KernelSpec& k);

// Density value at x >= 0.
double phi(const KernelSpec& k, double x);

// Closed-form CDF.
double cdf(const KernelSpec& k, double x);

// Inverse-CDF sampling; u must lie strictly inside (0, 1).
double sample_delay(const KernelSpec& k, double u);

// Tail constant K of Assumption-style normalization; alpha for both families.
double tail_const(const KernelSpec& k);

// Left edge of the support (0 or 1).
double support_left(const KernelSpec& k);

// Laplace transform of the density, int_0^inf e^(-z x) phi(x) dx, by
// tanh-sinh quadrature split at the 1/z scale.  Exactly 1 at z = 0.
double laplace_phi(const KernelSpec& k, double z);

KernelFamily kernel_family_from_string(const std::string& name);
std::string to_string(KernelFamily f);

// Batch CDF evaluator used on grid-compensator hot paths: identical values to
// cdf() up to ~1e-14 relative, several times cheaper than std::pow.
class FastCdf {
 public:
  explicit FastCdf(const KernelSpec& k);
  double operator()(double x) const {
    if (family_ == KernelFamily::ShiftedPareto) return 1.0 - pw_(1.0 + x);
    return x <= 1.0 ? 0.0 : 1.0 - pw_(x);
  }

 private:
  KernelFamily family_;
  PowNeg pw_;
};

}  // namespace rhk
