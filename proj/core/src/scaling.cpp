#include "rhk/scaling.hpp"

#include <cmath>

#include "rhk/errors.hpp"
#include "rhk/numeric.hpp"
#include "rhk/parallel.hpp"

namespace rhk {

ScalingRegime make_regime(double alpha, double lambda, double mu_star, double K,
                          double T) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw DomainError("make_regime: alpha must be in (0, 1)");
  if (!(lambda > 0.0)) throw DomainError("make_regime: lambda must be > 0");
  if (!(mu_star > 0.0)) throw DomainError("make_regime: mu_star must be > 0");
  if (!(K > 0.0)) throw DomainError("make_regime: K must be > 0");
  if (!(T > 0.0)) throw DomainError("make_regime: T must be > 0");

  ScalingRegime r;
  r.alpha = alpha;
  r.lambda = lambda;
  r.mu_star = mu_star;
  r.tail_const = K;
  r.horizon = T;
  r.delta = K * gamma_fn(1.0 - alpha) / alpha;
  r.a_T = 1.0 - lambda * r.delta * std::pow(T, -alpha);
  if (!(r.a_T > 0.0) || !(r.a_T < 1.0))
    throw DomainError(
        "make_regime: T at or below the admissibility boundary (lambda*delta)^(1/alpha)");
  r.mu_T = mu_star / r.delta * std::pow(T, alpha - 1.0);
  r.v_T = std::pow(T, alpha) * (1.0 - r.a_T) / r.delta;
  r.gamma_T = 1.0 / std::sqrt(r.mu_T * T * (1.0 - r.a_T));
  return r;
}

HawkesParams hawkes_params(const ScalingRegime& reg, const KernelSpec& kernel,
                           std::uint64_t max_events) {
  HawkesParams p;
  p.mu = reg.mu_T;
  p.a = reg.a_T;
  p.kernel = kernel;
  p.horizon = reg.horizon;
  p.max_events = max_events;
  return p;
}

PsiGrid psi_grid(const KernelSpec& kernel, double branching, double T,
                 std::size_t n) {
  validate(kernel);
  if (!(branching > 0.0) || !(branching < 1.0))
    throw DomainError("psi_grid: branching ratio must be in (0, 1)");
  if (n < 1000) throw DomainError("psi_grid: need n >= 1000");
  const double h = T / static_cast<double>(n);
  const double a = branching;

  // exact cell masses of phi: M_m = F(m h) - F((m-1) h)
  std::vector<double> M(n + 1, 0.0);
  {
    double prev = 0.0;
    for (std::size_t m = 1; m <= n; ++m) {
      double cur = cdf(kernel, h * static_cast<double>(m));
      M[m] = cur - prev;
      prev = cur;
    }
  }

  // psi = a phi + a phi * psi, solved forward with psi piecewise linear
  // (midpoint values against exact kernel masses); the i-th node only
  // involves psi_i through the most recent cell, solved implicitly.
  PsiGrid out;
  out.step = h;
  out.values.assign(n + 1, 0.0);
  std::vector<double>& psi = out.values;
  psi[0] = a * phi(kernel, 0.0);
  const double c_impl = 0.5 * a * M[1];
  for (std::size_t i = 1; i <= n; ++i) {
    double conv = 0.0;
    for (std::size_t j = 0; j + 1 < i; ++j)
      conv += 0.5 * (psi[j] + psi[j + 1]) * M[i - j];
    conv += 0.5 * psi[i - 1] * M[1];  // half of the newest cell
    double rhs = a * phi(kernel, h * static_cast<double>(i)) + a * conv;
    psi[i] = rhs / (1.0 - c_impl);
  }

  double mass = 0.5 * (psi[0] + psi[n]);
  for (std::size_t i = 1; i < n; ++i) mass += psi[i];
  out.mass = mass * h;

  double cap = a / (1.0 - a);
  if (out.mass > cap * (1.0 + 1e-3))
    throw AccuracyError("psi_grid: grid mass exceeds the geometric-series cap");
  return out;
}

PsiGrid psi_grid(const ScalingRegime& reg, const KernelSpec& kernel,
                 std::size_t n) {
  return psi_grid(kernel, reg.a_T, reg.horizon, n);
}

double expected_count(const HawkesParams& p, double t, std::size_t psi_cells) {
  validate(p);
  if (t < 0.0 || t > p.horizon)
    throw DomainError("expected_count: t outside [0, horizon]");
  if (t == 0.0) return 0.0;
  PsiGrid g = psi_grid(p.kernel, p.a, t, psi_cells);
  const double h = g.step;
  const std::size_t n = psi_cells;
  // int_0^t psi(u) (t - u) du with psi piecewise linear, exact per cell
  CompensatedSum acc;
  for (std::size_t j = 0; j < n; ++j) {
    double d = t - h * static_cast<double>(j);
    double s = (g.values[j + 1] - g.values[j]) / h;
    acc.add(g.values[j] * (d * h - 0.5 * h * h) +
            s * (0.5 * d * h * h - h * h * h / 3.0));
  }
  return p.mu * t + p.mu * acc.value();
}

double expected_count(const ScalingRegime& reg, const KernelSpec& kernel,
                      double t, std::size_t psi_cells) {
  return expected_count(hawkes_params(reg, kernel), t, psi_cells);
}

RescaledPaths rescale_paths(const EventRecord& r, const ScalingRegime& reg,
                            std::size_t n) {
  if (n < 1) throw DomainError("rescale_paths: need n >= 1");
  auto close = [](double x, double y) {
    return std::abs(x - y) <= 1e-9 * std::max(std::abs(x), std::abs(y));
  };
  if (!close(r.params.mu, reg.mu_T) || !close(r.params.a, reg.a_T) ||
      r.params.horizon != reg.horizon)
    throw ConsistencyError(
        "rescale_paths: record parameters do not match the regime");

  const double T = reg.horizon;
  const double scale = (1.0 - reg.a_T) / reg.space_norm();
  const double mart = std::sqrt(reg.space_norm() / (1.0 - reg.a_T));
  FastCdf fast_cdf(r.params.kernel);

  std::vector<double> X(n + 1), L(n + 1), Z(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double t = T * static_cast<double>(i) / static_cast<double>(n);
    X[i] = scale * static_cast<double>(r.count_until(t));
    double s = 0.0;
    for (double e : r.times) {
      if (e >= t) break;
      s += fast_cdf(t - e);
    }
    L[i] = scale * (r.params.mu * t + r.params.a * s);
    Z[i] = mart * (X[i] - L[i]);
  }
  RescaledPaths out{
      make_grid_path(1.0 / static_cast<double>(n), std::move(X), PathLabel::X_T),
      make_grid_path(1.0 / static_cast<double>(n), std::move(L),
                     PathLabel::Lambda_T),
      make_grid_path(1.0 / static_cast<double>(n), std::move(Z), PathLabel::Z_T)};
  return out;
}

std::vector<double> sample_JT(const ScalingRegime& reg, const KernelSpec& kernel,
                              std::uint64_t seed, std::size_t n_samples) {
  validate(kernel);
  if (n_samples < 1) throw DomainError("sample_JT: need n_samples >= 1");
  constexpr std::size_t kBlock = 65536;
  const std::size_t n_blocks = (n_samples + kBlock - 1) / kBlock;
  std::vector<double> out(n_samples);
  parallel_for(n_blocks, 0, [&](std::size_t b) {
    RngStream rng(seed, b);
    std::size_t lo = b * kBlock;
    std::size_t hi = std::min(lo + kBlock, n_samples);
    for (std::size_t i = lo; i < hi; ++i) {
      std::uint64_t count = rng.geometric_from1(1.0 - reg.a_T);
      double s = 0.0;
      for (std::uint64_t k = 0; k < count; ++k)
        s += sample_delay(kernel, rng.uniform01());
      out[i] = s / reg.horizon;
    }
  });
  return out;
}

}  // namespace rhk
