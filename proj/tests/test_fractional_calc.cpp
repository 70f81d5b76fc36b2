#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>

#include "rhk/diagnostics.hpp"
#include "rhk/errors.hpp"
#include "rhk/fractional_calc.hpp"
#include "rhk/numeric.hpp"
#include "rhk/volterra.hpp"

using namespace rhk;

TEST_SUITE_BEGIN("fractional_calc");

namespace {

double sup_rel_err(const GridFn& got, const std::function<double(double)>& want,
                   double x_min, double x_max = 1.0) {
  double worst = 0.0;
  for (std::size_t i = 0; i <= got.cells(); ++i) {
    double x = got.step * static_cast<double>(i);
    if (x < x_min || x > x_max) continue;
    double w = want(x);
    worst = std::max(worst, std::abs(got.values[i] - w) / std::abs(w));
  }
  return worst;
}

}  // namespace

TEST_CASE("rl_integral power identities") {
  const std::size_t n = 2048;
  auto one = grid_fn_from([](double) { return 1.0; }, n);
  auto r = rl_integral(one, 0.5);
  CHECK(sup_rel_err(r, [](double x) { return std::sqrt(x) / gamma_fn(1.5); },
                    0.01) < 1e-6);

  auto lin = grid_fn_from([](double x) { return x; }, n);
  for (double nu : {0.25, 0.6, 1.0}) {
    auto q = rl_integral(lin, nu);
    CHECK(sup_rel_err(q,
                      [&](double x) {
                        return gamma_fn(2.0) * rgamma_fn(2.0 + nu) *
                               std::pow(x, 1.0 + nu);
                      },
                      0.01) < 1e-6);
  }
}

TEST_CASE("rl_integral of the singular kernel matches the closed form") {
  FracKernelParams p{0.6, 1.0};
  auto f = grid_f_frac(p, 4096);
  auto r = rl_integral(f, 0.3);
  CHECK(sup_rel_err(r, [&](double x) { return frac_integ_f(p, 0.3, x); }, 0.05) <
        1e-4);

  // half-order instance probed at x = 0.7
  auto r5 = rl_integral(f, 0.5);
  std::size_t i = static_cast<std::size_t>(0.7 * 4096.0 + 0.5);
  double want = frac_integ_f(p, 0.5, 0.7);
  CHECK(std::abs(r5.values[i] - want) / want < 1e-4);
}

TEST_CASE("rl_derivative power identity") {
  const std::size_t n = 4096;
  auto f = grid_fn_from([](double x) { return std::pow(x, 0.8); }, n);
  auto d = rl_derivative(f, 0.5);
  CHECK(sup_rel_err(d,
                    [](double x) {
                      return gamma_fn(1.8) / gamma_fn(1.3) * std::pow(x, 0.3);
                    },
                    0.05, 0.95) < 1e-3);
}

TEST_CASE("derivative inverts the integral on smooth functions") {
  const std::size_t n = 4096;
  auto f = grid_fn_from([](double x) { return x * (1.0 - x); }, n);
  for (double nu : {0.3, 0.5, 0.7}) {
    auto d = rl_derivative(rl_integral(f, nu), nu);
    CHECK(sup_rel_err(d, [](double x) { return x * (1.0 - x); }, 0.05, 0.95) <
          1e-3);
  }
}

TEST_CASE("rl_derivative matches frac_deriv_f away from zero") {
  FracKernelParams p{0.75, 1.0};
  auto f = grid_f_frac(p, 4096);
  auto d = rl_derivative(f, 0.25);
  CHECK(sup_rel_err(d, [&](double x) { return frac_deriv_f(p, 0.25, x); }, 0.05,
                    0.95) < 1e-3);

  // spec instance: alpha = 0.75, lambda = 2, nu = 0.4 at x = 0.3
  FracKernelParams p2{0.75, 2.0};
  auto f2 = grid_f_frac(p2, 4096);
  auto d2 = rl_derivative(f2, 0.4);
  std::size_t i = static_cast<std::size_t>(0.3 * 4096.0 + 0.5);
  double want = frac_deriv_f(p2, 0.4, 0.3);
  CHECK(std::abs(d2.values[i] - want) / std::abs(want) < 1e-3);
}

TEST_CASE("semigroup property I^a I^b = I^(a+b)") {
  const std::size_t n = 4096;
  auto f = grid_fn_from([](double x) { return x * (1.0 - x); }, n);
  auto lhs = rl_integral(rl_integral(f, 0.3), 0.4);
  auto direct = rl_integral(f, 0.7);
  double worst = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    double x = static_cast<double>(i) / n;
    if (x < 0.05) continue;
    worst = std::max(worst, std::abs(lhs.values[i] - direct.values[i]) /
                                std::abs(direct.values[i]));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("conv_singular with unit g recovers the kernel CDF") {
  FracKernelParams p{0.6, 1.0};
  const std::size_t n = 1024;
  auto f = grid_f_frac(p, n);
  auto one = grid_fn_from([](double) { return 1.0; }, n);
  auto c = conv_singular(f, one);
  double worst = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    worst = std::max(worst, std::abs(c.values[i] - F_frac(p, t)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("conv_singular without exact moments still integrates the kernel") {
  FracKernelParams p{0.6, 1.0};
  const std::size_t n = 4096;
  auto f = grid_f_frac(p, n);
  f.moments.reset();  // generic path: declared singularity only
  auto one = grid_fn_from([](double) { return 1.0; }, n);
  auto c = conv_singular(f, one);
  double worst = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    double t = static_cast<double>(i) / n;
    worst = std::max(worst, std::abs(c.values[i] - F_frac(p, t)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("fractional integration by parts (both sides numerically)") {
  // int phi(t-s) psi(s) ds = int I^a phi(t-s) D^a psi(s) ds
  // with phi = f^{0.6,1}, psi = x^0.9, a = 0.3
  FracKernelParams p{0.6, 1.0};
  const std::size_t n = 4096;
  auto f = grid_f_frac(p, n);
  auto psi = grid_fn_from([](double x) { return std::pow(x, 0.9); }, n);

  auto lhs = conv_singular(f, psi);
  auto If = grid_frac_integ(p, 0.3, n);
  auto Dpsi = rl_derivative(psi, 0.3);
  auto rhs = conv_singular(If, Dpsi);

  double worst = 0.0;
  for (std::size_t i = 0; i <= n; ++i)
    worst = std::max(worst, std::abs(lhs.values[i] - rhs.values[i]));
  CHECK(worst < 1e-3);
}

TEST_CASE("identity errors shrink by at least 2x per grid doubling") {
  auto inversion_err = [](std::size_t n) {
    auto f = grid_fn_from([](double x) { return x * (1.0 - x); }, n);
    auto d = rl_derivative(rl_integral(f, 0.5), 0.5);
    return sup_rel_err(d, [](double x) { return x * (1.0 - x); }, 0.05, 0.95);
  };
  auto semigroup_err = [](std::size_t n) {
    auto f = grid_fn_from([](double x) { return x * (1.0 - x); }, n);
    auto lhs = rl_integral(rl_integral(f, 0.3), 0.4);
    auto direct = rl_integral(f, 0.7);
    double worst = 0.0;
    for (std::size_t i = n / 20; i <= n; ++i)
      worst = std::max(worst, std::abs(lhs.values[i] - direct.values[i]) /
                                  std::abs(direct.values[i]));
    return worst;
  };
  CHECK(inversion_err(2048) / inversion_err(4096) >= 2.0);
  CHECK(semigroup_err(2048) / semigroup_err(4096) >= 2.0);
}

TEST_CASE("Holder surrogate: fractional derivative of x^0.7") {
  // D^0.4 x^0.7 ~ x^0.3; worst-case modulus estimated by sup-increment scaling
  const std::size_t n = 4096;
  auto f = grid_fn_from([](double x) { return std::pow(x, 0.7); }, n);
  auto d = rl_derivative(f, 0.4);
  auto est = holder_estimate_sup(d.values, d.step);
  CHECK(est.exponent == doctest::Approx(0.3).epsilon(0.34));
  CHECK(std::abs(est.exponent - 0.3) < 0.1);
}

TEST_CASE("Holder surrogates: singular-kernel convolutions") {
  // conv of f^{0.6,1} (a x^(-0.4)-type kernel) with a Brownian path: the
  // output picks up alpha + H_g of smoothness
  const std::size_t n = 4096;
  FracKernelParams p{0.6, 1.0};
  auto f = grid_f_frac(p, n);

  auto inc = brownian_increments(99, 0, n);
  std::vector<double> b(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) b[i + 1] = b[i] + inc[i];
  GridFn g{1.0 / static_cast<double>(n), b, {}, {}};

  auto c = conv_singular(f, g);
  auto est = holder_estimate(c.values, c.step);
  CHECK(std::abs(est.exponent - std::min(1.0, 0.6 + 0.5)) < 0.15);

  // continuous g against an x^(-beta) kernel keeps exponent >= (1-beta) - 0.1
  const double beta = 0.45;
  auto kfn = grid_fn_from(
      [&](double x) { return x == 0.0 ? 0.0 : std::pow(x, -beta); }, n);
  kfn.values[0] = std::numeric_limits<double>::infinity();
  kfn.singularity = beta;
  auto c2 = conv_singular(kfn, g);
  auto est2 = holder_estimate(c2.values, c2.step);
  CHECK(est2.exponent >= (1.0 - beta) - 0.1);
}

TEST_CASE("domain checks") {
  auto f = grid_fn_from([](double x) { return x; }, 64);
  CHECK_THROWS_AS(rl_integral(f, 0.0), DomainError);
  CHECK_THROWS_AS(rl_integral(f, 1.5), DomainError);
  CHECK_THROWS_AS(rl_derivative(f, 1.0), DomainError);
  GridFn bad = f;
  bad.singularity = 1.7;
  CHECK_THROWS_AS(rl_integral(bad, 0.5), DomainError);
}

TEST_CASE("a wrong declared exponent is rejected, not silently integrated") {
  FracKernelParams p{0.6, 1.0};
  auto f = grid_f_frac(p, 512);  // true leading behavior x^(-0.4)
  f.moments.reset();
  f.singularity = 0.95;
  CHECK_THROWS_AS(rl_integral(f, 0.5), AccuracyError);
  auto one = grid_fn_from([](double) { return 1.0; }, 512);
  CHECK_THROWS_AS(conv_singular(f, one), AccuracyError);
}

TEST_SUITE_END();
