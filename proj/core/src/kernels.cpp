#include "rhk/kernels.hpp"

#include <cmath>

#include "rhk/errors.hpp"
#include "rhk/quadrature.hpp"

namespace rhk {

void validate(const KernelSpec& k) {
  if (!(k.alpha > 0.0) || !(k.alpha < 1.0))
    throw DomainError("KernelSpec: alpha must be in (0, 1)");
}

double phi(const KernelSpec& k, double x) {
  validate(k);
  if (x < 0.0) return 0.0;
  switch (k.family) {
    case KernelFamily::ShiftedPareto:
      return k.alpha * std::pow(1.0 + x, -(1.0 + k.alpha));
    case KernelFamily::ParetoFrom1:
      return x < 1.0 ? 0.0 : k.alpha * std::pow(x, -(1.0 + k.alpha));
  }
  return 0.0;
}

double cdf(const KernelSpec& k, double x) {
  validate(k);
  if (x <= 0.0) return 0.0;
  switch (k.family) {
    case KernelFamily::ShiftedPareto:
      return 1.0 - std::pow(1.0 + x, -k.alpha);
    case KernelFamily::ParetoFrom1:
      return x <= 1.0 ? 0.0 : 1.0 - std::pow(x, -k.alpha);
  }
  return 0.0;
}

double sample_delay(const KernelSpec& k, double u) {
  validate(k);
  if (!(u > 0.0) || !(u < 1.0))
    throw DomainError("sample_delay: u must be in (0, 1)");
  double q = std::pow(1.0 - u, -1.0 / k.alpha);
  switch (k.family) {
    case KernelFamily::ShiftedPareto:
      return q - 1.0;
    case KernelFamily::ParetoFrom1:
      return q;
  }
  return 0.0;
}

double tail_const(const KernelSpec& k) {
  validate(k);
  return k.alpha;
}

double support_left(const KernelSpec& k) {
  return k.family == KernelFamily::ParetoFrom1 ? 1.0 : 0.0;
}

double laplace_phi(const KernelSpec& k, double z) {
  validate(k);
  if (z < 0.0) throw DomainError("laplace_phi: z must be >= 0");
  if (z == 0.0) return 1.0;

  auto g = [&](double x) { return std::exp(-z * x) * phi(k, x); };
  const double lo = support_left(k);
  // segments split at the 1/z scale; contribution past 60/z is below
  // e^-60 (1 - F) and ignored
  double s1 = std::max(lo, 1.0 / z);
  double s2 = std::max(lo, 10.0 / z);
  double s3 = std::max(lo, 60.0 / z);
  double total = 0.0;
  if (s1 > lo) total += tanh_sinh(g, lo, s1, 1e-12);
  if (s2 > s1) total += tanh_sinh(g, s1, s2, 1e-12);
  if (s3 > s2) total += tanh_sinh(g, s2, s3, 1e-12);
  return total;
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "shifted-pareto" || name == "ShiftedPareto")
    return KernelFamily::ShiftedPareto;
  if (name == "pareto1" || name == "ParetoFrom1") return KernelFamily::ParetoFrom1;
  throw ConfigError("unknown kernel family: " + name);
}

std::string to_string(KernelFamily f) {
  return f == KernelFamily::ShiftedPareto ? "shifted-pareto" : "pareto1";
}

FastCdf::FastCdf(const KernelSpec& k) : family_(k.family), pw_(k.alpha) {
  validate(k);
}

}  // namespace rhk
