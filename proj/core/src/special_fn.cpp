#include "rhk/special_fn.hpp"

#include <quadmath.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rhk/errors.hpp"
#include "rhk/numeric.hpp"

namespace rhk {

void validate(const MLQuery& q) {
  if (!(q.alpha > 0.0) || q.alpha > 1.0)
    throw DomainError("ml_eval: alpha must be in (0, 1]");
  if (!(q.beta > 0.0)) throw DomainError("ml_eval: beta must be > 0");
  if (!(q.rel_tol > 0.0) || q.rel_tol > 1e-3)
    throw DomainError("ml_eval: rel_tol must be in (0, 1e-3]");
  if (std::isnan(q.z)) throw DomainError("ml_eval: z is NaN");
}

void validate(const FracKernelParams& p) {
  // alpha = 1 is admitted as the exponential edge case f = lambda e^(-lambda x)
  if (!(p.alpha > 0.0) || p.alpha > 1.0)
    throw DomainError("frac kernel: alpha must be in (0, 1]");
  if (!(p.lambda > 0.0)) throw DomainError("frac kernel: lambda must be > 0");
}

namespace detail {

namespace {

constexpr double kQuadEps = 1.9e-34;  // 2^-112
constexpr int kSeriesMaxTerms = 4096;

// Per-(alpha, beta) table of 1/Gamma(alpha n + beta) in quad precision.
// The series is always evaluated against one of a handful of parameter
// pairs per run (f, F, a few fractional orders), so a tiny cache keyed on
// (alpha, beta) removes the lgammaq cost from batch CDF evaluation.
struct SeriesTable {
  double alpha = -1.0;
  double beta = -1.0;
  std::vector<__float128> rgam;  // 1/Gamma(alpha n + beta)

  void ensure(std::size_t n) {
    for (std::size_t k = rgam.size(); k <= n; ++k) {
      __float128 a = static_cast<__float128>(alpha) * k + beta;
      rgam.push_back(expq(-lgammaq(a)));
    }
  }
};

SeriesTable& table_for(double alpha, double beta) {
  thread_local SeriesTable cache[8];
  thread_local int next_slot = 0;
  for (auto& t : cache)
    if (t.alpha == alpha && t.beta == beta) return t;
  SeriesTable& t = cache[next_slot];
  next_slot = (next_slot + 1) % 8;
  t.alpha = alpha;
  t.beta = beta;
  t.rgam.clear();
  return t;
}

}  // namespace

double ml_series(double alpha, double beta, double z, double* rel_err) {
  SeriesTable& tab = table_for(alpha, beta);
  tab.ensure(64);

  const __float128 zq = z;
  __float128 term = tab.rgam[0];  // n = 0
  __float128 sum = term;
  __float128 abs_sum = fabsq(term);
  double peak = static_cast<double>(fabsq(term));
  int n = 1;
  __float128 zpow = 1.0;
  for (; n < kSeriesMaxTerms; ++n) {
    if (static_cast<std::size_t>(n) >= tab.rgam.size()) tab.ensure(n + 64);
    zpow *= zq;
    term = zpow * tab.rgam[n];
    sum += term;
    double at = static_cast<double>(fabsq(term));
    abs_sum += fabsq(term);
    if (at > peak) peak = at;
    // past the peak, terms decay monotonically; stop when they are noise
    if (at < peak && at <= kQuadEps * static_cast<double>(abs_sum)) break;
  }
  double value = static_cast<double>(sum);
  double noise = kQuadEps * static_cast<double>(abs_sum);
  double denom = std::max(std::abs(value), 1e-300);
  double err = noise / denom + 2.0 * std::numeric_limits<double>::epsilon();
  if (n >= kSeriesMaxTerms) err = 1.0;  // did not converge
  if (rel_err) *rel_err = err;
  return value;
}

double ml_asymptotic(double alpha, double beta, double z, double* rel_err) {
  // E_{alpha,beta}(-y) ~ sum_{k>=1} (-1)^(k+1) y^(-k) / Gamma(beta - alpha k),
  // valid on the negative real axis for alpha in (0, 1).
  if (z >= 0.0)
    throw DomainError("ml_asymptotic: defined for negative arguments");
  const double y = -z;
  const double logy = std::log(y);
  constexpr int kMax = 220;

  // The reflection factor makes |term_k| oscillate on its way down, so the
  // optimal truncation point is the global minimum of the magnitudes, not the
  // first local uptick.  Scan, then sum through the argmin.
  std::vector<double> terms;
  terms.reserve(64);
  double smallest = std::numeric_limits<double>::infinity();
  int argmin = -1;
  for (int k = 1; k <= kMax; ++k) {
    double x = beta - alpha * k;
    // beta - alpha k can land a rounding error away from a pole; the true
    // coefficient there is 0 and the noise must not enter the truncation logic
    double g;
    if (x < 0.5 && std::abs(x - std::nearbyint(x)) < 1e-9 &&
        std::nearbyint(x) <= 0.0)
      g = 0.0;
    else
      g = rgamma_fn(x);
    double term = ((k & 1) ? 1.0 : -1.0) * std::exp(-k * logy) * g;
    terms.push_back(term);
    double tmag = std::abs(term);
    if (g != 0.0) {
      if (tmag < smallest) {
        smallest = tmag;
        argmin = k;
      }
      if (tmag > 1e8 * smallest || tmag < 1e-320) break;  // clearly past the turn
    }
  }
  CompensatedSum acc;
  double err_abs = std::numeric_limits<double>::infinity();
  if (argmin > 0) {
    for (int k = 1; k <= argmin; ++k) acc.add(terms[k - 1]);
    // first omitted nonzero term bounds the truncation error
    err_abs = smallest;
    for (std::size_t i = argmin; i < terms.size(); ++i)
      if (terms[i] != 0.0) {
        err_abs = std::abs(terms[i]);
        break;
      }
  }
  if (alpha == 1.0) {
    // the algebraic expansion terminates for integer alpha; the remainder is
    // the exponentially small contribution
    err_abs = std::min(err_abs, std::exp(-y));
    if (argmin < 0)
      for (double t : terms) acc.add(t);
  }
  double value = acc.value();
  double denom = std::max(std::abs(value), 1e-300);
  double err = std::isfinite(err_abs) ? err_abs / denom : 1.0;
  if (rel_err) *rel_err = err + 2.0 * std::numeric_limits<double>::epsilon();
  return value;
}

double ml_switch_point(double alpha, double beta) {
  // Crossing of the two truncation bounds:
  //   series:     eps_quad * E_{alpha,beta}(y) ~ eps_quad * (1/alpha)
  //               * y^((1-beta)/alpha) * exp(y^(1/alpha))
  //   asymptotic: ~ exp(-y^(1/alpha))
  // Equate and solve for u = y^(1/alpha); one refinement step for the
  // algebraic prefactor.
  double u = 0.5 * std::log(1.0 / kQuadEps);  // ~38.8
  double y = std::pow(u, alpha);
  double pref = std::log(1.0 / alpha) + (1.0 - beta) / alpha * std::log(std::max(y, 1.0));
  u = 0.5 * (std::log(1.0 / kQuadEps) - pref);
  if (u < 2.0) u = 2.0;
  y = std::pow(u, alpha);
  return std::min(std::max(y, 1.0), 100.0);
}

}  // namespace detail

double ml_eval(const MLQuery& q) {
  validate(q);
  const double alpha = q.alpha, beta = q.beta, z = q.z;

  if (z == 0.0) return rgamma_fn(beta);
  if (alpha == 1.0 && beta == 1.0) return std::exp(z);  // exact special case

  if (z > 0.0) {
    double err;
    double v = detail::ml_series(alpha, beta, z, &err);
    if (std::isinf(v)) return v;  // function value overflows double
    if (err > q.rel_tol)
      throw AccuracyError("ml_eval: series did not attain rel_tol for z > 0");
    return v;
  }

  const double y = -z;
  const double zsw = detail::ml_switch_point(alpha, beta);

  double err_first;
  double v_first;
  bool series_first = y <= zsw;
  if (series_first)
    v_first = detail::ml_series(alpha, beta, z, &err_first);
  else
    v_first = detail::ml_asymptotic(alpha, beta, z, &err_first);
  if (err_first <= q.rel_tol) return v_first;

  double err_second;
  double v_second;
  if (series_first)
    v_second = detail::ml_asymptotic(alpha, beta, z, &err_second);
  else
    v_second = detail::ml_series(alpha, beta, z, &err_second);
  if (err_second <= q.rel_tol) return v_second;

  throw AccuracyError("ml_eval: neither series nor asymptotic regime attains rel_tol");
}

double f_frac(const FracKernelParams& p, double x) {
  validate(p);
  if (!(x > 0.0)) throw DomainError("f_frac: x must be > 0 (singular at 0)");
  double e = ml_eval({p.alpha, p.alpha, -p.lambda * std::pow(x, p.alpha), 1e-10});
  return p.lambda * std::pow(x, p.alpha - 1.0) * e;
}

double F_frac(const FracKernelParams& p, double t) {
  validate(p);
  if (t < 0.0) throw DomainError("F_frac: t must be >= 0");
  if (t == 0.0) return 0.0;
  double e = ml_eval({p.alpha, 1.0, -p.lambda * std::pow(t, p.alpha), 1e-10});
  return 1.0 - e;
}

double frac_deriv_f(const FracKernelParams& p, double nu, double x) {
  validate(p);
  if (nu < 0.0 || nu >= p.alpha)
    throw DomainError("frac_deriv_f: requires 0 <= nu < alpha");
  if (!(x > 0.0)) throw DomainError("frac_deriv_f: x must be > 0");
  double e =
      ml_eval({p.alpha, p.alpha - nu, -p.lambda * std::pow(x, p.alpha), 1e-10});
  return p.lambda * std::pow(x, p.alpha - 1.0 - nu) * e;
}

double frac_integ_f(const FracKernelParams& p, double nu_p, double x) {
  validate(p);
  if (!(nu_p > 0.0)) throw DomainError("frac_integ_f: nu_p must be > 0");
  if (!(x > 0.0)) throw DomainError("frac_integ_f: x must be > 0");
  double e =
      ml_eval({p.alpha, p.alpha + nu_p, -p.lambda * std::pow(x, p.alpha), 1e-10});
  return p.lambda * std::pow(x, p.alpha - 1.0 + nu_p) * e;
}

double f_frac_first_moment(const FracKernelParams& p, double x) {
  validate(p);
  if (x == 0.0) return 0.0;
  if (!(x > 0.0)) throw DomainError("f_frac_first_moment: x must be >= 0");
  // int_0^x u f(u) du = x F(x) - I^2 f(x)
  return x * F_frac(p, x) - frac_integ_f(p, 2.0, x);
}

std::vector<double> kernel_weights(const FracKernelParams& p, double grid_step,
                                   std::size_t n) {
  validate(p);
  if (!(grid_step > 0.0)) throw DomainError("kernel_weights: grid_step must be > 0");
  if (n == 0) throw DomainError("kernel_weights: n must be >= 1");
  if (grid_step * static_cast<double>(n) > 1.0 + grid_step * (1.0 + 1e-12))
    throw DomainError("kernel_weights: grid must not extend past 1 + grid_step");
  std::vector<double> w(n);
  double prev = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double cur = F_frac(p, grid_step * static_cast<double>(k));
    w[k - 1] = cur - prev;
    prev = cur;
  }
  return w;
}

}  // namespace rhk
