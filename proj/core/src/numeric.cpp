#include "rhk/numeric.hpp"

#include <cmath>
#include <limits>

#include "rhk/errors.hpp"

namespace rhk {

namespace {

// Lanczos coefficients for g = 7 (Godfrey's set).
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,     676.5203681218851,    -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,  12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kSqrtTwoPi = 2.5066282746310002;

double lanczos_lgamma_pos(double x) {
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0 + i);
  double t = x - 0.5 + kLanczosG;
  return std::log(kSqrtTwoPi * a) + (x - 0.5) * std::log(t) - t;
}

double lanczos_gamma_pos(double x) {
  // valid for x >= 0.5; t^(x-1/2) overflows before Gamma(x) does, so large
  // arguments go through the log form
  if (x > 140.0) return std::exp(lanczos_lgamma_pos(x));
  double a = kLanczos[0];
  for (int i = 1; i < 9; ++i) a += kLanczos[i] / (x - 1.0 + i);
  double t = x - 0.5 + kLanczosG;
  return kSqrtTwoPi * std::pow(t, x - 0.5) * std::exp(-t) * a;
}

}  // namespace

double sinpi(double x) {
  // reduce to r in [-0.5, 0.5]; sin(pi x) has period 2 in x
  double r = std::remainder(x, 2.0);  // r in [-1, 1]
  if (r > 0.5) {
    r = 1.0 - r;
  } else if (r < -0.5) {
    r = -1.0 - r;
  }
  return std::sin(M_PI * r);
}

double gamma_fn(double x) {
  if (std::isnan(x)) return x;
  if (x >= 0.5) {
    if (x > 171.62) return std::numeric_limits<double>::infinity();
    return lanczos_gamma_pos(x);
  }
  // reflection: Gamma(x) = pi / (sin(pi x) * Gamma(1 - x))
  double s = sinpi(x);
  if (s == 0.0)
    throw DomainError("gamma_fn: pole at non-positive integer argument");
  return M_PI / (s * lanczos_gamma_pos(1.0 - x));
}

double lgamma_fn(double x) {
  if (x <= 0.0) throw DomainError("lgamma_fn: requires x > 0");
  if (x < 0.5) return std::log(gamma_fn(x));
  return lanczos_lgamma_pos(x);
}

double rgamma_fn(double x) {
  if (x >= 0.5) {
    if (x > 171.62) {
      // 1/Gamma underflows smoothly; go through logs
      return std::exp(-lanczos_lgamma_pos(x));
    }
    return 1.0 / lanczos_gamma_pos(x);
  }
  // 1/Gamma(x) = sin(pi x) * Gamma(1 - x) / pi, entire in x
  double s = sinpi(x);
  if (s == 0.0) return 0.0;
  double y = 1.0 - x;
  if (y > 171.62) {
    // assemble in log space, sign from sinpi
    double mag = std::exp(lanczos_lgamma_pos(y) + std::log(std::abs(s) / M_PI));
    return s > 0 ? mag : -mag;
  }
  return s * lanczos_gamma_pos(y) / M_PI;
}

PowNeg::PowNeg(double alpha) : alpha_(alpha) {
  if (!(alpha > 0.0) || !(alpha < 2.0))
    throw DomainError("PowNeg: alpha must be in (0, 2)");
  // Chebyshev interpolation of m^(-alpha) on [0.5, 1].
  constexpr int N = 24;
  double fv[N];
  for (int k = 0; k < N; ++k) {
    double theta = M_PI * (k + 0.5) / N;
    double m = 0.75 + 0.25 * std::cos(theta);
    fv[k] = std::pow(m, -alpha);
  }
  for (int j = 0; j < N; ++j) {
    double c = 0.0;
    for (int k = 0; k < N; ++k)
      c += fv[k] * std::cos(M_PI * j * (k + 0.5) / N);
    cheb_[j] = 2.0 / N * c;
  }
  for (int e = -64; e < 1024; ++e)
    octave_[e + 64] = std::pow(2.0, -static_cast<double>(e) * alpha);
}

double PowNeg::operator()(double x) const {
  int e;
  double m = std::frexp(x, &e);  // x = m * 2^e, m in [0.5, 1)
  // Clenshaw on [0.5, 1]
  double u = (m - 0.75) / 0.25;
  double u2 = 2.0 * u;
  double b0 = 0.0, b1 = 0.0;
  for (int j = 23; j >= 1; --j) {
    double t = u2 * b0 - b1 + cheb_[j];
    b1 = b0;
    b0 = t;
  }
  double poly = u * b0 - b1 + 0.5 * cheb_[0];
  return poly * octave_[e + 64];
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw DomainError("fit_line: need two same-length vectors, n >= 2");
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DegenerateError("fit_line: x values are constant");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - f.intercept - f.slope * x[i];
    ss += r * r;
  }
  if (n > 2) f.slope_stderr = std::sqrt(ss / (static_cast<double>(n - 2) * sxx));
  return f;
}

}  // namespace rhk
