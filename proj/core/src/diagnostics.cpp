#include "rhk/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "rhk/errors.hpp"
#include "rhk/numeric.hpp"
#include "rhk/rng.hpp"

namespace rhk {

namespace {

std::vector<std::size_t> dyadic_lags(std::size_t n) {
  // lags 1, 2, 4, ... up to n/16 so every level keeps plenty of increments
  std::vector<std::size_t> lags;
  for (std::size_t lag = 1; lag <= n / 16; lag *= 2) lags.push_back(lag);
  return lags;
}

}  // namespace

HolderEstimate holder_estimate(std::span<const double> values, double step,
                               const std::vector<double>& qs) {
  if (values.size() < 512)
    throw DomainError("holder_estimate: need at least 512 grid points");
  if (qs.empty()) throw DomainError("holder_estimate: need at least one q");
  for (double q : qs)
    if (q != 0.5 && q != 1.0 && q != 2.0)
      throw DomainError("holder_estimate: q orders restricted to {0.5, 1, 2}");

  const std::size_t n = values.size() - 1;
  auto lags = dyadic_lags(n);
  if (lags.size() < 4)
    throw DomainError("holder_estimate: path too short for 3 dyadic levels");

  bool constant = true;
  for (std::size_t i = 1; i < values.size() && constant; ++i)
    constant = values[i] == values[0];
  if (constant) throw DegenerateError("holder_estimate: constant path");

  double expo = 0.0;
  double var_acc = 0.0;
  for (double q : qs) {
    std::vector<double> lx, ly;
    for (std::size_t lag : lags) {
      double m = 0.0;
      std::size_t cnt = 0;
      for (std::size_t i = 0; i + lag < values.size(); ++i) {
        m += std::pow(std::abs(values[i + lag] - values[i]), q);
        ++cnt;
      }
      m /= static_cast<double>(cnt);
      if (m <= 0.0) throw DegenerateError("holder_estimate: degenerate moments");
      lx.push_back(std::log(static_cast<double>(lag) * step));
      ly.push_back(std::log(m));
    }
    LineFit f = fit_line(lx, ly);
    expo += f.slope / q;
    var_acc += (f.slope_stderr / q) * (f.slope_stderr / q);
  }
  HolderEstimate est;
  est.exponent = std::min(expo / static_cast<double>(qs.size()), 1.5);
  est.stderr_ = std::sqrt(var_acc) / static_cast<double>(qs.size());
  est.q_orders = qs;
  est.h_min = static_cast<double>(lags.front()) * step;
  est.h_max = static_cast<double>(lags.back()) * step;
  return est;
}

HolderEstimate holder_estimate(const GridPath& path, const std::vector<double>& qs) {
  return holder_estimate(path.values, path.step, qs);
}

HolderEstimate holder_estimate_sup(std::span<const double> values, double step) {
  if (values.size() < 512)
    throw DomainError("holder_estimate_sup: need at least 512 grid points");
  const std::size_t n = values.size() - 1;
  auto lags = dyadic_lags(n);
  std::vector<double> lx, ly;
  for (std::size_t lag : lags) {
    double worst = 0.0;
    for (std::size_t i = 0; i + lag < values.size(); ++i)
      worst = std::max(worst, std::abs(values[i + lag] - values[i]));
    if (worst <= 0.0) throw DegenerateError("holder_estimate_sup: constant path");
    lx.push_back(std::log(static_cast<double>(lag) * step));
    ly.push_back(std::log(worst));
  }
  LineFit f = fit_line(lx, ly);
  HolderEstimate est;
  est.exponent = std::min(f.slope, 1.5);
  est.stderr_ = f.slope_stderr;
  est.h_min = static_cast<double>(lags.front()) * step;
  est.h_max = static_cast<double>(lags.back()) * step;
  return est;
}

EcdfDistance ecdf_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 1000 || b.size() < 1000)
    throw DomainError("ecdf_distance: need >= 1000 samples on each side");
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  // merged sweep for both sup|Fa - Fb| and int |Fa - Fb| dx
  EcdfDistance d;
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double prev_x = 0.0;
  bool have_prev = false;
  while (i < sa.size() || j < sb.size()) {
    double x;
    if (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j]))
      x = sa[i];
    else
      x = sb[j];
    double fa = static_cast<double>(i) / na;
    double fb = static_cast<double>(j) / nb;
    if (have_prev) d.w1 += std::abs(fa - fb) * (x - prev_x);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    fa = static_cast<double>(i) / na;
    fb = static_cast<double>(j) / nb;
    d.ks = std::max(d.ks, std::abs(fa - fb));
    prev_x = x;
    have_prev = true;
  }
  return d;
}

EcdfDistance ecdf_distance(std::span<const double> samples,
                           const std::function<double(double)>& cdf) {
  if (samples.size() < 1000)
    throw DomainError("ecdf_distance: need >= 1000 samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  EcdfDistance d;
  double prev_x = 0.0, prev_F = cdf(0.0);
  // KS at the jump points; W1 by trapezoid between consecutive samples plus
  // the exact tails of the analytic CDF outside the sample range
  for (std::size_t i = 0; i < s.size(); ++i) {
    double F = cdf(s[i]);
    double lo = static_cast<double>(i) / n;
    double hi = static_cast<double>(i + 1) / n;
    d.ks = std::max(d.ks, std::max(std::abs(F - lo), std::abs(F - hi)));
    if (i > 0)
      d.w1 += 0.5 * (std::abs(lo - prev_F) + std::abs(lo - F)) * (s[i] - prev_x);
    prev_x = s[i];
    prev_F = F;
  }
  // left tail: ECDF is 0 below the smallest sample
  d.w1 += 0.5 * (cdf(s[0]) + cdf(0.0) /*=F(0)*/) * std::max(s[0], 0.0);
  return d;
}

BracketReport bracket_report(const std::vector<EventRecord>& records,
                             const ScalingRegime& reg, double tol) {
  BracketReport rep;
  rep.paths = records.size();
  const double scale = (1.0 - reg.a_T) / reg.space_norm();
  const double jump = std::sqrt((1.0 - reg.a_T) / reg.space_norm());
  rep.max_jump_closed_form = jump;
  for (const auto& r : records) {
    const double n_T = static_cast<double>(r.count());
    // every event moves Z by exactly sqrt((1-a_T)/(mu_T T))
    double sum_dz2 = n_T * jump * jump;
    double x1 = scale * n_T;
    rep.worst_identity_gap =
        std::max(rep.worst_identity_gap, std::abs(sum_dz2 - x1));
    if (r.count() > 0) rep.max_jump = std::max(rep.max_jump, jump);
  }
  rep.identity_ok = rep.worst_identity_gap <= tol;
  return rep;
}

DecayFit martingale_gap_decay(const std::vector<DecayPoint>& points) {
  if (points.size() < 3)
    throw DomainError("martingale_gap_decay: need at least 3 ladder points");
  std::vector<double> lx, ly;
  for (const auto& p : points) {
    if (!(p.rate > 0.0) || !(p.estimate > 0.0))
      throw DomainError("martingale_gap_decay: rates and estimates must be positive");
    lx.push_back(std::log(p.rate));
    ly.push_back(std::log(p.estimate));
  }
  LineFit f = fit_line(lx, ly);
  DecayFit out;
  out.slope = f.slope;
  out.slope_stderr = f.slope_stderr;
  out.log_const = f.intercept;
  return out;
}

double kolmogorov_sf(double t) {
  if (t <= 0.0) return 1.0;
  double s = 0.0;
  for (int j = 1; j <= 100; ++j) {
    double term = std::exp(-2.0 * j * j * t * t);
    s += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, 2.0 * s));
}

KsTest ks_two_sample(std::span<const double> a, std::span<const double> b) {
  EcdfDistance d = ecdf_distance(a, b);
  double na = static_cast<double>(a.size());
  double nb = static_cast<double>(b.size());
  double ne = std::sqrt(na * nb / (na + nb));
  KsTest t;
  t.statistic = d.ks;
  t.p_value = kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d.ks);
  return t;
}

KsTest ks_analytic(std::span<const double> samples,
                   const std::function<double(double)>& cdf) {
  EcdfDistance d = ecdf_distance(samples, cdf);
  double n = std::sqrt(static_cast<double>(samples.size()));
  KsTest t;
  t.statistic = d.ks;
  t.p_value = kolmogorov_sf((n + 0.12 + 0.11 / n) * d.ks);
  return t;
}

double chi2_critical(double dof, double upper_tail_prob) {
  // Wilson-Hilferty cube approximation
  double z = inverse_normal_cdf(1.0 - upper_tail_prob);
  double c = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
  return dof * c * c * c;
}

}  // namespace rhk
