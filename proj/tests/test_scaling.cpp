#include <doctest.h>

#include <cmath>
#include <vector>

#include "rhk/diagnostics.hpp"
#include "rhk/errors.hpp"
#include "rhk/numeric.hpp"
#include "rhk/parallel.hpp"
#include "rhk/scaling.hpp"
#include "rhk/special_fn.hpp"
#include "test_util.hpp"

using namespace rhk;

TEST_SUITE_BEGIN("scaling");

namespace {
const KernelSpec kSP06{KernelFamily::ShiftedPareto, 0.6};
}

TEST_CASE("make_regime reproduces the worked constants") {
  ScalingRegime r = make_regime(0.6, 1.0, 1.0, 0.6, 1000.0);
  // extended-precision arithmetic oracle for a_T and mu_T
  long double delta = 2.21815954375768822306L;  // Gamma(0.4)
  long double aT = 1.0L - delta * powl(1000.0L, -0.6L);
  long double muT = powl(1000.0L, -0.4L) / delta;
  CHECK(r.delta == doctest::Approx(static_cast<double>(delta)).epsilon(1e-13));
  CHECK(r.a_T == doctest::Approx(static_cast<double>(aT)).epsilon(1e-14));
  CHECK(r.a_T == doctest::Approx(0.9648).epsilon(5e-4));
  CHECK(r.mu_T == doctest::Approx(static_cast<double>(muT)).epsilon(1e-14));
  CHECK(r.gamma_T ==
        doctest::Approx(1.0 / std::sqrt(r.mu_T * 1000.0 * (1.0 - r.a_T)))
            .epsilon(1e-14));
}

TEST_CASE("admissibility boundary raises DomainError") {
  double alpha = 0.6, lam = 1.0, K = 0.6;
  double delta = K * gamma_fn(1.0 - alpha) / alpha;
  double boundary = std::pow(lam * delta, 1.0 / alpha);
  CHECK_THROWS_AS(make_regime(alpha, lam, 1.0, K, boundary), DomainError);
  CHECK_THROWS_AS(make_regime(alpha, lam, 1.0, K, 0.5 * boundary), DomainError);
  CHECK_NOTHROW(make_regime(alpha, lam, 1.0, K, 1.01 * boundary));
}

TEST_CASE("v_T equals lambda exactly across random regimes") {
  RngStream rng(31, 0);
  for (int i = 0; i < 10; ++i) {
    double alpha = 0.25 + 0.65 * rng.uniform01();
    double lam = 0.2 + 3.0 * rng.uniform01();
    double mu_star = 0.2 + 3.0 * rng.uniform01();
    double K = 0.2 + 2.0 * rng.uniform01();
    double delta = K * gamma_fn(1.0 - alpha) / alpha;
    double T = std::pow(lam * delta, 1.0 / alpha) * (2.0 + 100.0 * rng.uniform01());
    ScalingRegime r = make_regime(alpha, lam, mu_star, K, T);
    CHECK(std::abs(r.v_T - lam) <= 1e-12 * lam);
    // the construction pins T (1 - a_T) mu_T to mu* lambda exactly
    CHECK(std::abs(T * (1.0 - r.a_T) * r.mu_T - mu_star * lam) <=
          1e-12 * mu_star * lam);
  }
}

TEST_CASE("psi_grid solves the renewal equation") {
  ScalingRegime reg = make_regime(0.6, 1.0, 1.0, 0.6, 1000.0);
  PsiGrid g = psi_grid(reg, kSP06, 4000);
  const double a = reg.a_T;

  // leading term near zero: psi = a phi + a phi * psi, where the convolution
  // part vanishes at the rate F(h)
  double corr = cdf(kSP06, g.step);
  CHECK(std::abs(g.values[1] - a * phi(kSP06, g.step)) <=
        2.0 * corr * a * phi(kSP06, 0.0));

  // mass below the geometric cap
  double cap = a / (1.0 - a);
  CHECK(g.mass <= cap * (1.0 + 1e-6));

  // cross-validate the grid mass against the Monte Carlo tail of J^T:
  // int_0^T psi = ||psi||_1 P(J^T <= 1)
  std::vector<double> jt = sample_JT(reg, kSP06, 4242, 200000);
  double inside = 0.0;
  for (double x : jt) inside += x <= 1.0 ? 1.0 : 0.0;
  inside /= static_cast<double>(jt.size());
  CHECK(std::abs(g.mass - cap * inside) <= 0.01 * cap);

  // Laplace identity psi_hat = a phi_hat / (1 - a phi_hat): the grid only
  // carries [0, T], so at z = 1/T the unresolved tail admits the rigorous
  // bound e^(-zT) (||psi|| - grid mass); at z = 10/T the tail is negligible
  // and the identity must hold to 2% outright
  auto grid_laplace = [&](double z) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < g.values.size(); ++i) {
      double t0 = g.step * static_cast<double>(i);
      s += 0.5 * g.step *
           (std::exp(-z * t0) * g.values[i] +
            std::exp(-z * (t0 + g.step)) * g.values[i + 1]);
    }
    return s;
  };
  {
    double z = 1.0 / reg.horizon;
    double ph = laplace_phi(kSP06, z);
    double want = ph * a / (1.0 - a * ph);
    double got = grid_laplace(z);
    double tail_bound = std::exp(-1.0) * (cap - g.mass);
    CHECK(got <= want * 1.02);
    CHECK(got >= (want - tail_bound) * 0.98);
  }
  {
    double z = 10.0 / reg.horizon;
    double ph = laplace_phi(kSP06, z);
    double want = ph * a / (1.0 - a * ph);
    CHECK(std::abs(grid_laplace(z) - want) <= 0.02 * want);
  }

  CHECK_THROWS_AS(psi_grid(reg, kSP06, 999), DomainError);
}

TEST_CASE("expected_count limits and bounds") {
  HawkesParams tiny;
  tiny.mu = 1.3;
  tiny.a = 1e-9;
  tiny.kernel = kSP06;
  tiny.horizon = 50.0;
  double e = expected_count(tiny, 20.0);
  CHECK(std::abs(e - tiny.mu * 20.0) / (tiny.mu * 20.0) < 1e-6);

  HawkesParams p;
  p.mu = 1.0;
  p.a = 0.8;
  p.kernel = kSP06;
  p.horizon = 50.0;
  for (double t : {12.5, 25.0, 50.0}) {
    double v = expected_count(p, t);
    CHECK(v <= t * p.mu * (1.0 + p.a / (1.0 - p.a)) + 1e-9);
    CHECK(v >= t * p.mu);
  }
}

TEST_CASE("expected_count matches cluster means along the horizon") {
  HawkesParams p;
  p.mu = 1.0;
  p.a = 0.6;
  p.kernel = kSP06;
  p.horizon = 40.0;
  const std::size_t R = 10000;
  std::vector<double> q1(R), q2(R), q4(R);
  parallel_for(R, 0, [&](std::size_t r) {
    EventRecord rec = simulate_cluster(p, 31000 + r);
    q1[r] = static_cast<double>(rec.count_until(p.horizon / 4.0));
    q2[r] = static_cast<double>(rec.count_until(p.horizon / 2.0));
    q4[r] = static_cast<double>(rec.count());
  });
  for (auto [samples, t] : {std::pair{&q1, p.horizon / 4.0},
                            std::pair{&q2, p.horizon / 2.0},
                            std::pair{&q4, p.horizon}}) {
    auto [m, se] = testutil::mean_se(*samples);
    CHECK(std::abs(m - expected_count(p, t)) <= 3.0 * se);
  }
}

TEST_CASE("rescale_paths on an empty record") {
  ScalingRegime reg = make_regime(0.6, 1.0, 1.0, 0.6, 1000.0);
  EventRecord r;
  r.params = hawkes_params(reg, kSP06);
  RescaledPaths paths = rescale_paths(r, reg, 100);
  double scale = (1.0 - reg.a_T) / reg.space_norm();
  double mart = std::sqrt(reg.space_norm() / (1.0 - reg.a_T));
  for (std::size_t i = 0; i <= 100; ++i) {
    double t = static_cast<double>(i) / 100.0;
    CHECK(paths.X.values[i] == 0.0);
    CHECK(paths.Lambda.values[i] ==
          doctest::Approx(scale * reg.mu_T * reg.horizon * t).epsilon(1e-12));
    CHECK(paths.Z.values[i] ==
          doctest::Approx(-mart * paths.Lambda.values[i]).epsilon(1e-12));
  }
}

TEST_CASE("bracket identity holds to 1e-12 per path") {
  ScalingRegime reg = make_regime(0.6, 1.0, 1.0, 0.6, 500.0);
  HawkesParams hp = hawkes_params(reg, kSP06);
  std::vector<EventRecord> records;
  for (std::uint64_t s = 0; s < 50; ++s)
    records.push_back(simulate_cluster(hp, 600 + s));
  BracketReport rep = bracket_report(records, reg);
  CHECK(rep.identity_ok);
  CHECK(rep.worst_identity_gap <= 1e-12);
  CHECK(rep.max_jump ==
        doctest::Approx(std::sqrt((1.0 - reg.a_T) / reg.space_norm()))
            .epsilon(1e-14));
}

TEST_CASE("mean of X_1 matches the rescaled expectation formula") {
  ScalingRegime reg = make_regime(0.6, 1.0, 1.0, 0.6, 300.0);
  HawkesParams hp = hawkes_params(reg, kSP06);
  const std::size_t R = 4000;
  std::vector<double> x1(R);
  double scale = (1.0 - reg.a_T) / reg.space_norm();
  parallel_for(R, 0, [&](std::size_t r) {
    x1[r] = scale * static_cast<double>(simulate_cluster(hp, 52000 + r).count());
  });
  auto [m, se] = testutil::mean_se(x1);
  double want = scale * expected_count(reg, kSP06, reg.horizon);
  CHECK(std::abs(m - want) <= 3.0 * se);
}

TEST_CASE("rescale_paths rejects mismatched records") {
  ScalingRegime reg = make_regime(0.6, 1.0, 1.0, 0.6, 1000.0);
  HawkesParams other = hawkes_params(reg, kSP06);
  other.mu *= 1.5;
  EventRecord r;
  r.params = other;
  CHECK_THROWS_AS(rescale_paths(r, reg, 100), ConsistencyError);
}

TEST_CASE("J^T collapses to a single delay when a_T is tiny") {
  // T just above the admissibility boundary makes a_T ~ 0, so I = 1 almost
  // always and T J^T is one kernel delay
  double alpha = 0.6, K = 0.6;
  double delta = K * gamma_fn(1.0 - alpha) / alpha;
  double T = std::pow(delta, 1.0 / alpha) * 1.0001;
  ScalingRegime reg = make_regime(alpha, 1.0, 1.0, K, T);
  CHECK(reg.a_T < 1e-3);
  std::vector<double> jt = sample_JT(reg, kSP06, 8, 10000);
  for (auto& x : jt) x *= reg.horizon;
  auto ks = ks_analytic(jt, [&](double x) { return cdf(kSP06, x); });
  CHECK(ks.p_value > 0.005);
}

TEST_CASE("sample_JT approaches F^{alpha,lambda} with growing T") {
  ScalingRegime small = make_regime(0.6, 1.0, 1.0, 0.6, 300.0);
  ScalingRegime big = make_regime(0.6, 1.0, 1.0, 0.6, 3000.0);
  FracKernelParams fk{0.6, 1.0};
  auto limit_cdf = [&](double x) { return x <= 0.0 ? 0.0 : F_frac(fk, x); };
  auto d_small = ecdf_distance(sample_JT(small, kSP06, 5, 100000), limit_cdf);
  auto d_big = ecdf_distance(sample_JT(big, kSP06, 5, 100000), limit_cdf);
  // a tenfold horizon should at least roughly halve the sup distance
  CHECK(d_big.ks < d_small.ks);
  CHECK(d_small.ks / d_big.ks > 1.4);
}

TEST_CASE("near-zero branching collapses the martingale gap to Poisson scale") {
  double alpha = 0.6, K = 0.6;
  double delta = K * gamma_fn(1.0 - alpha) / alpha;
  double T = std::pow(delta, 1.0 / alpha) * 1.002;
  ScalingRegime reg = make_regime(alpha, 1.0, 1.0, K, T);
  REQUIRE(reg.a_T < 2e-3);
  HawkesParams hp = hawkes_params(reg, kSP06);
  const std::size_t R = 2000;
  std::vector<double> sup2(R);
  parallel_for(R, 0, [&](std::size_t r) {
    EventRecord rec = simulate_cluster(hp, 88000 + r);
    RescaledPaths paths = rescale_paths(rec, reg, 200);
    double worst = 0.0;
    for (std::size_t i = 0; i < paths.X.values.size(); ++i) {
      double d = paths.X.values[i] - paths.Lambda.values[i];
      worst = std::max(worst, d * d);
    }
    sup2[r] = worst;
  });
  double mean = 0.0;
  for (double v : sup2) mean += v;
  mean /= static_cast<double>(R);
  // Doob: E[(X-Lambda)_1^2] <= E[sup^2] <= 4 E[(X-Lambda)_1^2], and at a ~ 0
  // the end variance is (1-a)^2 E[N_T] / (mu_T T)^2 ~ (1-a)^2 / (mu_T T)
  double poisson_scale = (1.0 - reg.a_T) * (1.0 - reg.a_T) / (reg.mu_T * reg.horizon);
  CHECK(mean >= 0.5 * poisson_scale);
  CHECK(mean <= 6.0 * poisson_scale);
}

TEST_CASE("decay-fit machinery produces a positive decay slope") {
  std::vector<DecayPoint> pts;
  for (double T : {400.0, 1600.0, 6400.0}) {
    ScalingRegime reg = make_regime(0.6, 1.0, 1.0, 0.6, T);
    HawkesParams hp = hawkes_params(reg, kSP06);
    const std::size_t R = 300;
    std::vector<double> sup2(R);
    parallel_for(R, 0, [&](std::size_t r) {
      EventRecord rec = simulate_cluster(hp, 77000 + r);
      RescaledPaths paths = rescale_paths(rec, reg, 400);
      double worst = 0.0;
      for (std::size_t i = 0; i < paths.X.values.size(); ++i) {
        double d = paths.X.values[i] - paths.Lambda.values[i];
        worst = std::max(worst, d * d);
      }
      sup2[r] = worst;
    });
    double mean = 0.0;
    for (double v : sup2) mean += v;
    pts.push_back({T, (1.0 - reg.a_T) / std::pow(T, 0.6),
                   mean / static_cast<double>(R)});
  }
  DecayFit fit = martingale_gap_decay(pts);
  CHECK(fit.slope > 0.4);
  CHECK(fit.slope < 1.6);
}

TEST_SUITE_END();
