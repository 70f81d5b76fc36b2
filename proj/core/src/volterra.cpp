#include "rhk/volterra.hpp"

#include <cmath>

#include "rhk/errors.hpp"
#include "rhk/fractional_calc.hpp"
#include "rhk/rng.hpp"

namespace rhk {

double LimitParams::diffusion_coeff() const {
  return zero_noise ? 0.0 : 1.0 / std::sqrt(mu_star * lambda);
}

void validate(const LimitParams& p) {
  if (!(p.alpha > 0.5) || !(p.alpha < 1.0))
    throw DomainError("simulate_Y: requires alpha in (1/2, 1)");
  if (!(p.lambda > 0.0)) throw DomainError("LimitParams: lambda must be > 0");
  if (!(p.mu_star > 0.0)) throw DomainError("LimitParams: mu_star must be > 0");
  if (p.n < 256) throw DomainError("LimitParams: need n >= 256");
}

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// one gaussian per dyadic node, keyed so every refinement level sees the
// same tree
double node_gauss(std::uint64_t seed, std::uint64_t path, unsigned level,
                  std::uint64_t k) {
  std::uint64_t stream = (path << 40) ^ (static_cast<std::uint64_t>(level) << 32) ^ k;
  RngStream rng(seed, stream);
  return rng.normal();
}

}  // namespace

std::vector<double> brownian_increments(std::uint64_t seed,
                                        std::uint64_t path_index,
                                        std::size_t n) {
  if (n == 0) throw DomainError("brownian_increments: n must be >= 1");
  if (is_pow2(n)) {
    // Levy midpoint construction: start from B(1), split every interval;
    // children sum to their parent increment exactly.
    std::vector<double> inc{node_gauss(seed, path_index, 0, 0)};
    unsigned level = 1;
    while (inc.size() < n) {
      std::vector<double> next(inc.size() * 2);
      double len = 1.0 / static_cast<double>(inc.size());
      double half_sd = 0.5 * std::sqrt(len);
      for (std::size_t k = 0; k < inc.size(); ++k) {
        double xi = half_sd * node_gauss(seed, path_index, level, k);
        next[2 * k] = 0.5 * inc[k] + xi;
        next[2 * k + 1] = 0.5 * inc[k] - xi;
      }
      inc.swap(next);
      ++level;
    }
    return inc;
  }
  // non-dyadic grids: plain sequential increments
  RngStream rng(seed, path_index << 40);
  std::vector<double> inc(n);
  double sd = std::sqrt(1.0 / static_cast<double>(n));
  for (auto& d : inc) d = sd * rng.normal();
  return inc;
}

VolterraPath simulate_Y(const LimitParams& p) {
  validate(p);
  const std::size_t n = p.n;
  const double h = 1.0 / static_cast<double>(n);
  const FracKernelParams kp{p.alpha, p.lambda};
  const double c = p.diffusion_coeff();

  std::vector<double> w = kernel_weights(kp, h, n);
  std::vector<double> drift(n + 1);
  drift[0] = 0.0;
  {
    double acc = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      acc += w[i - 1];
      drift[i] = acc;  // F(t_i) by telescoping
    }
  }

  std::vector<double> dB =
      p.zero_noise ? std::vector<double>(n, 0.0)
                   : brownian_increments(p.seed, p.path_index, n);

  std::vector<double> y(n + 1);
  std::vector<double> shock(n, 0.0);  // sqrt(Y_j^+) dB_j, filled as we go
  y[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double conv = 0.0;
    for (std::size_t j = 0; j < i; ++j) conv += w[i - 1 - j] * shock[j];
    y[i] = drift[i] + c * conv / h;
    if (i < n) {
      double pos = y[i] > 0.0 ? y[i] : 0.0;
      shock[i] = std::sqrt(pos) * dB[i];
    }
  }
  // shock[0] stays 0 since Y_0 = 0

  VolterraPath out;
  out.Y = GridPath{h, std::move(y), PathLabel::Y_limit};
  out.dB = std::move(dB);
  return out;
}

GridPath integrate_Y_to_X(const GridPath& y) {
  if (y.values.size() < 2) throw DomainError("integrate_Y_to_X: path too short");
  const std::size_t n = y.values.size() - 1;
  std::vector<double> x(n + 1);
  x[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i)
    x[i] = x[i - 1] + 0.5 * y.step * (y.values[i - 1] + y.values[i]);
  return GridPath{y.step, std::move(x), PathLabel::X_limit};
}

double integrated_drift(const FracKernelParams& p, double t) {
  if (t == 0.0) return 0.0;
  return frac_integ_f(p, 2.0, t);
}

double integral_equation_residual(const LimitParams& p, const VolterraPath& ypath,
                     const GridPath& x) {
  const std::size_t n = ypath.Y.values.size() - 1;
  if (x.values.size() != n + 1 || ypath.dB.size() != n)
    throw ConsistencyError("integral_equation_residual: inconsistent simulation triple");
  const double h = ypath.Y.step;
  const FracKernelParams kp{p.alpha, p.lambda};
  const double c = p.diffusion_coeff();

  // Z_i = sum_{j<i} sqrt(Y_j^+) dB_j, matching the scheme's left-point rule
  GridFn z;
  z.step = h;
  z.values.assign(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    double yj = ypath.Y.values[i - 1];
    double pos = yj > 0.0 ? yj : 0.0;
    z.values[i] = z.values[i - 1] + std::sqrt(pos) * ypath.dB[i - 1];
  }

  GridFn fk = grid_f_frac(kp, n);
  GridFn conv = conv_singular(fk, z);

  double worst = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    double t = h * static_cast<double>(i);
    double rhs = integrated_drift(kp, t) + c * conv.values[i];
    worst = std::max(worst, std::abs(x.values[i] - rhs));
  }
  return worst;
}

}  // namespace rhk
