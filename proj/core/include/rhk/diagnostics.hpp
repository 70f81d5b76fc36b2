#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rhk/grid_path.hpp"
#include "rhk/hawkes.hpp"
#include "rhk/scaling.hpp"

namespace rhk {

// ---- roughness estimation ----

struct HolderEstimate {
  double exponent = 0.0;   // capped at 1.5 when reporting
  double stderr_ = 0.0;
  std::vector<double> q_orders;
  double h_min = 0.0, h_max = 0.0;  // lag range used
};

// Moment-scaling regression: for each q regress log mean|path(t+h)-path(t)|^q
// on log h over dyadic lags; the exponent is the average slope/q.  Suited to
// stochastic paths with quasi-stationary increments.  DegenerateError on
// constant paths; qs must be a subset of {0.5, 1, 2}; needs >= 512 points.
HolderEstimate holder_estimate(std::span<const double> values, double step,
                               const std::vector<double>& qs = {0.5, 1.0, 2.0});
HolderEstimate holder_estimate(const GridPath& path,
                               const std::vector<double>& qs = {0.5, 1.0, 2.0});

// Sup-increment scaling variant: regress log max|path(t+h)-path(t)| on log h.
// The right tool for deterministic power-type paths, whose worst-case modulus
// lives at isolated points that mean-based moments average away.
HolderEstimate holder_estimate_sup(std::span<const double> values, double step);

// ---- distribution distances ----

struct EcdfDistance {
  double ks = 0.0;  // Kolmogorov-Smirnov sup distance
  double w1 = 0.0;  // first Wasserstein distance
};

// Two-sample version; both sides need >= 1000 points.
EcdfDistance ecdf_distance(std::span<const double> a, std::span<const double> b);

// Sample against an analytic CDF (assumed continuous and nondecreasing).
EcdfDistance ecdf_distance(std::span<const double> samples,
                           const std::function<double(double)>& cdf);

// ---- martingale bracket ----

struct BracketReport {
  std::size_t paths = 0;
  double worst_identity_gap = 0.0;  // max |sum dZ^2 - X_1| over paths
  double max_jump = 0.0;            // observed max |dZ|
  double max_jump_closed_form = 0.0;
  bool identity_ok = false;
};

// Verifies sum of squared Z-jumps = X^T_1 per path (an algebraic identity of
// the rescaling) and tabulates the maximal jump, which has the closed form
// sqrt((1-a_T)/(mu_T T)).
BracketReport bracket_report(const std::vector<EventRecord>& records,
                             const ScalingRegime& reg, double tol = 1e-12);

// ---- decay fits ----

struct DecayPoint {
  double horizon = 0.0;   // T
  double rate = 0.0;      // (1 - a_T) / T^alpha
  double estimate = 0.0;  // MC estimate of E[sup (X^T - Lambda^T)^2]
};

struct DecayFit {
  double slope = 0.0;
  double slope_stderr = 0.0;
  double log_const = 0.0;  // fitted log C
};

// log estimate ~ log C + slope * log rate; needs >= 3 ladder points.
DecayFit martingale_gap_decay(const std::vector<DecayPoint>& points);

// ---- statistical tests (shared by simulators' cross-validation) ----

// Two-sample KS statistic and asymptotic p-value (conservative under ties).
struct KsTest {
  double statistic = 0.0;
  double p_value = 0.0;
};
KsTest ks_two_sample(std::span<const double> a, std::span<const double> b);

// One-sample KS against an analytic CDF, with Stephens' finite-n correction.
KsTest ks_analytic(std::span<const double> samples,
                   const std::function<double(double)>& cdf);

// Survival function of the Kolmogorov distribution.
double kolmogorov_sf(double t);

// Upper critical value of the chi-square distribution (Wilson-Hilferty).
double chi2_critical(double dof, double upper_tail_prob);

}  // namespace rhk
