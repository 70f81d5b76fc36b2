#include "rhk/fractional_calc.hpp"

#include <cmath>
#include <limits>

#include "rhk/errors.hpp"
#include "rhk/numeric.hpp"

namespace rhk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_grid(const GridFn& f, const char* who) {
  if (f.values.size() < 3) throw DomainError(std::string(who) + ": grid too small");
  if (!(f.step > 0.0)) throw DomainError(std::string(who) + ": bad step");
  if (f.singularity &&
      (!(*f.singularity > 0.0) || !(*f.singularity < 1.0)))
    throw DomainError(std::string(who) + ": singularity exponent must be in (0,1)");
  if (f.moments && (f.moments->m0.size() != f.cells() ||
                    f.moments->m1.size() != f.cells()))
    throw DomainError(std::string(who) + ": moment arrays must have one entry per cell");
}

// Leading coefficient C of the declared model f ~ C x^(-sigma): prefer the
// exact first-cell mass when moments are attached, else match the first node.
// A declared exponent that disagrees with the data by 50% between the first
// two nodes means the first-cell closed form would be integrating the wrong
// power; refuse instead of silently degrading.
double model_coeff(const GridFn& f, double sigma) {
  const double h = f.step;
  double c1 = f.values[1] * std::pow(h, sigma);
  double c2 = f.values[2] * std::pow(2.0 * h, sigma);
  if (!(std::abs(c2 / c1 - 1.0) < 0.25))
    throw AccuracyError(
        "declared singularity exponent is inconsistent with the first grid cells");
  if (f.moments)
    return f.moments->m0[0] * (1.0 - sigma) / std::pow(h, 1.0 - sigma);
  return c1;
}

// f minus the model C x^(-sigma); remainder vanishes at 0.
std::vector<double> model_remainder(const GridFn& f, double C, double sigma) {
  std::vector<double> r(f.values.size());
  r[0] = 0.0;
  for (std::size_t i = 1; i < f.values.size(); ++i) {
    double t = f.step * static_cast<double>(i);
    r[i] = f.values[i] - C * std::pow(t, -sigma);
  }
  return r;
}

// Product integration of int_0^{x_k} v(t) (x_k - t)^(nu-1) dt / Gamma(nu)
// for piecewise-linear v with v finite everywhere.
std::vector<double> pi_weights_A(double h, double nu, std::size_t n) {
  std::vector<double> A(n + 1, 0.0);
  const double hn = std::pow(h, nu);
  double prev = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    double cur = std::pow(static_cast<double>(m), nu);
    A[m] = hn * (cur - prev) / nu;
    prev = cur;
  }
  return A;
}

std::vector<double> pi_weights_B(double h, double nu, std::size_t n,
                                 const std::vector<double>& A) {
  std::vector<double> B(n + 1, 0.0);
  const double hn1 = std::pow(h, nu + 1.0);
  double prev = 0.0;
  for (std::size_t m = 1; m <= n; ++m) {
    double cur = std::pow(static_cast<double>(m), nu + 1.0);
    double d0 = h * static_cast<double>(m);
    B[m] = d0 * A[m] - hn1 * (cur - prev) / (nu + 1.0);
    prev = cur;
  }
  return B;
}

std::vector<double> product_integral(const std::vector<double>& v, double h,
                                     double nu) {
  const std::size_t n = v.size() - 1;
  auto A = pi_weights_A(h, nu, n);
  auto B = pi_weights_B(h, nu, n, A);
  const double rg = rgamma_fn(nu);
  std::vector<double> out(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t m = k - j;
      double slope = (v[j + 1] - v[j]) / h;
      acc.add(v[j] * A[m] + slope * B[m]);
    }
    out[k] = acc.value() * rg;
  }
  return out;
}

}  // namespace

GridFn grid_f_frac(const FracKernelParams& p, std::size_t n) {
  validate(p);
  if (n < 2) throw DomainError("grid_f_frac: need n >= 2");
  GridFn g;
  g.step = 1.0 / static_cast<double>(n);
  g.values.resize(n + 1);
  g.values[0] = p.alpha == 1.0 ? p.lambda : kInf;
  for (std::size_t i = 1; i <= n; ++i)
    g.values[i] = f_frac(p, g.step * static_cast<double>(i));
  if (p.alpha < 1.0) g.singularity = 1.0 - p.alpha;
  CellMoments mom;
  mom.m0 = kernel_weights(p, g.step, n);
  mom.m1.resize(n);
  double prevG = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double t1 = g.step * static_cast<double>(j + 1);
    double curG = f_frac_first_moment(p, t1);
    mom.m1[j] = (curG - prevG) - g.step * static_cast<double>(j) * mom.m0[j];
    prevG = curG;
  }
  g.moments = std::move(mom);
  return g;
}

GridFn grid_frac_integ(const FracKernelParams& p, double nu, std::size_t n) {
  validate(p);
  if (!(nu > 0.0)) throw DomainError("grid_frac_integ: nu must be > 0");
  if (n < 2) throw DomainError("grid_frac_integ: need n >= 2");
  GridFn g;
  g.step = 1.0 / static_cast<double>(n);
  g.values.resize(n + 1);
  const double sig = 1.0 - p.alpha - nu;
  g.values[0] = sig > 0.0 ? kInf : 0.0;
  for (std::size_t i = 1; i <= n; ++i)
    g.values[i] = frac_integ_f(p, nu, g.step * static_cast<double>(i));
  if (sig > 0.0 && sig < 1.0) g.singularity = sig;
  CellMoments mom;
  mom.m0.resize(n);
  mom.m1.resize(n);
  double prevQ = 0.0, prevM = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double t1 = g.step * static_cast<double>(j + 1);
    double curQ = frac_integ_f(p, nu + 1.0, t1);
    double curM = t1 * curQ - frac_integ_f(p, nu + 2.0, t1);
    mom.m0[j] = curQ - prevQ;
    mom.m1[j] = (curM - prevM) - g.step * static_cast<double>(j) * mom.m0[j];
    prevQ = curQ;
    prevM = curM;
  }
  g.moments = std::move(mom);
  return g;
}

GridFn rl_integral(const GridFn& f, double nu) {
  check_grid(f, "rl_integral");
  if (!(nu > 0.0) || nu > 1.0)
    throw DomainError("rl_integral: nu must be in (0, 1]");
  const std::size_t n = f.cells();
  const double h = f.step;

  GridFn out;
  out.step = h;
  out.values.assign(n + 1, 0.0);

  if (!f.singularity) {
    out.values = product_integral(f.values, h, nu);
    return out;
  }

  // split off the declared model C x^(-sigma)
  const double sigma = *f.singularity;
  const double C = model_coeff(f, sigma);
  auto r = model_remainder(f, C, sigma);
  auto reg = product_integral(r, h, nu);

  // I^nu x^(-sigma) = Gamma(1-sigma)/Gamma(1+nu-sigma) x^(nu-sigma)
  const double pref = C * gamma_fn(1.0 - sigma) * rgamma_fn(1.0 + nu - sigma);
  for (std::size_t k = 1; k <= n; ++k) {
    double x = h * static_cast<double>(k);
    out.values[k] = reg[k] + pref * std::pow(x, nu - sigma);
  }
  if (sigma > nu) {
    out.singularity = sigma - nu;
    out.values[0] = kInf;
  } else {
    out.values[0] = sigma == nu ? pref : 0.0;
  }
  return out;
}

GridFn rl_derivative(const GridFn& f, double nu) {
  check_grid(f, "rl_derivative");
  if (!(nu > 0.0) || !(nu < 1.0))
    throw DomainError("rl_derivative: nu must be in (0, 1)");
  const std::size_t n = f.cells();
  const double h = f.step;

  // D^nu f = d/dx I^(1-nu) f; a declared singular model is differentiated in
  // closed form so the finite differences only ever touch the remainder.
  double C = 0.0, sigma = 0.0;
  std::vector<double> base;
  if (f.singularity) {
    sigma = *f.singularity;
    C = model_coeff(f, sigma);
    base = model_remainder(f, C, sigma);
  } else {
    base = f.values;
  }
  auto g = product_integral(base, h, 1.0 - nu);

  GridFn out;
  out.step = h;
  out.values.assign(n + 1, 0.0);
  for (std::size_t i = 0; i <= n; ++i) {
    double d;
    if (i == 0)
      d = (-3.0 * g[0] + 4.0 * g[1] - g[2]) / (2.0 * h);
    else if (i == n)
      d = (3.0 * g[n] - 4.0 * g[n - 1] + g[n - 2]) / (2.0 * h);
    else
      d = (g[i + 1] - g[i - 1]) / (2.0 * h);
    out.values[i] = d;
  }
  // under the operation's precondition (f Hoelder of order > nu), f(0) = 0
  // forces D^nu f(0) = 0; the one-sided stencil cannot see that through the
  // x^(1+lambda-nu) shape of I^(1-nu) f
  if (!f.singularity && f.values[0] == 0.0) out.values[0] = 0.0;

  if (f.singularity) {
    // D^nu x^(-sigma) = Gamma(1-sigma)/Gamma(1-sigma-nu) x^(-sigma-nu)
    const double pref = C * gamma_fn(1.0 - sigma) * rgamma_fn(1.0 - sigma - nu);
    for (std::size_t i = 1; i <= n; ++i) {
      double x = h * static_cast<double>(i);
      out.values[i] += pref * std::pow(x, -sigma - nu);
    }
    out.values[0] = kInf;
    if (sigma + nu < 1.0) out.singularity = sigma + nu;
  }
  return out;
}

GridFn conv_singular(const GridFn& f, const GridFn& g) {
  check_grid(f, "conv_singular");
  check_grid(g, "conv_singular");
  if (f.values.size() != g.values.size() || f.step != g.step)
    throw DomainError("conv_singular: f and g must share one grid");
  if (!std::isfinite(g.values[0]))
    throw DomainError("conv_singular: g must be continuous at 0");
  const std::size_t n = f.cells();
  const double h = f.step;

  // per-cell mass and first moment of f
  std::vector<double> m0(n), m1(n);
  if (f.moments) {
    m0 = f.moments->m0;
    m1 = f.moments->m1;
  } else if (f.singularity) {
    const double sigma = *f.singularity;
    const double C = model_coeff(f, sigma);
    auto r = model_remainder(f, C, sigma);
    double prev1 = 0.0, prev2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double t0 = h * static_cast<double>(j);
      double t1 = h * static_cast<double>(j + 1);
      double cur1 = std::pow(t1, 1.0 - sigma);
      double cur2 = std::pow(t1, 2.0 - sigma);
      double p0 = (cur1 - prev1) / (1.0 - sigma);
      double p1 = (cur2 - prev2) / (2.0 - sigma) - t0 * p0;
      m0[j] = C * p0 + 0.5 * h * (r[j] + r[j + 1]);
      m1[j] = C * p1 + h * h * (r[j] / 6.0 + r[j + 1] / 3.0);
      prev1 = cur1;
      prev2 = cur2;
    }
  } else {
    for (std::size_t j = 0; j < n; ++j) {
      m0[j] = 0.5 * h * (f.values[j] + f.values[j + 1]);
      m1[j] = h * h * (f.values[j] / 6.0 + f.values[j + 1] / 3.0);
    }
  }

  GridFn out;
  out.step = h;
  out.values.assign(n + 1, 0.0);
  for (std::size_t k = 1; k <= n; ++k) {
    CompensatedSum acc;
    for (std::size_t j = 0; j < k; ++j) {
      // u in cell j, g(x_k - u) linear between g_{k-j} and g_{k-j-1}
      double ghi = g.values[k - j];
      double glo = g.values[k - j - 1];
      double slope = (ghi - glo) / h;
      acc.add(ghi * m0[j] - slope * m1[j]);
    }
    out.values[k] = acc.value();
  }
  return out;
}

}  // namespace rhk
