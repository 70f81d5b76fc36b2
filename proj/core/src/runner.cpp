#include "rhk/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "rhk/diagnostics.hpp"
#include "rhk/errors.hpp"
#include "rhk/io.hpp"
#include "rhk/parallel.hpp"
#include "rhk/scaling.hpp"
#include "rhk/volterra.hpp"

namespace rhk {

namespace {

using nlohmann::json;

double num(const json& p, const std::string& key, double def) {
  if (!p.contains(key)) return def;
  const auto& v = p.at(key);
  if (v.is_string()) return parse_double(v.get<std::string>());
  if (v.is_number()) return v.get<double>();
  throw ConfigError("parameter '" + key + "' must be a number or decimal string");
}

std::size_t count_of(const json& p, const std::string& key, std::size_t def) {
  double v = num(p, key, static_cast<double>(def));
  if (!(v >= 0.0) || v != std::floor(v))
    throw ConfigError("parameter '" + key + "' must be a nonnegative integer");
  return static_cast<std::size_t>(v);
}

std::vector<double> num_list(const json& p, const std::string& key,
                             std::vector<double> def) {
  if (!p.contains(key)) return def;
  const auto& v = p.at(key);
  if (!v.is_array()) throw ConfigError("parameter '" + key + "' must be a list");
  std::vector<double> out;
  for (const auto& e : v) {
    if (e.is_string())
      out.push_back(parse_double(e.get<std::string>()));
    else
      out.push_back(e.get<double>());
  }
  return out;
}

KernelSpec kernel_of(const json& p, double alpha) {
  std::string fam = p.value("family", std::string("shifted-pareto"));
  return KernelSpec{kernel_family_from_string(fam), alpha};
}

// Per-replica seeds derived as a pure function of (master seed, purpose, i).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t purpose, std::uint64_t i) {
  RngStream s(seed, (purpose << 48) ^ i);
  return s.next_u64();
}

// Collects named artifacts; writes CSVs when a directory is attached.
struct ArtifactSink {
  std::filesystem::path dir;
  bool enabled = false;
  json entries = json::object();

  void add(const std::string& name, const CsvTable& table) {
    std::string file = name + ".csv";
    entries[name] = {{"file", file}, {"rows", table.rows.size()}};
    if (enabled) write_atomic(dir / file, to_csv(table));
  }
};

using ScenarioFn =
    std::function<ScenarioResult(const ExperimentConfig&, ArtifactSink&)>;

Criterion crit(std::string id, bool pass, double observed, std::string req) {
  return Criterion{std::move(id), pass, observed, std::move(req)};
}

// ---- scenarios ----

ScenarioResult scenario_bracket_identity(const ExperimentConfig& cfg,
                                         ArtifactSink& sink) {
  const json& p = cfg.params;
  const double alpha = num(p, "alpha", 0.6);
  KernelSpec k = kernel_of(p, alpha);
  ScalingRegime reg =
      make_regime(alpha, num(p, "lambda", 1.0), num(p, "mu_star", 1.0),
                  tail_const(k), num(p, "T", 100.0));
  const std::size_t replicas = count_of(p, "replicas", 10);
  HawkesParams hp = hawkes_params(reg, k);

  std::vector<EventRecord> records(replicas);
  parallel_for(replicas, cfg.threads, [&](std::size_t r) {
    records[r] = simulate_cluster(hp, mix_seed(cfg.seed, 1, r));
  });

  BracketReport rep = bracket_report(records, reg);

  CsvTable t;
  t.header = {"replica", "events", "x1", "sum_dz2"};
  const double scale = (1.0 - reg.a_T) / reg.space_norm();
  for (std::size_t r = 0; r < replicas; ++r) {
    double n_T = static_cast<double>(records[r].count());
    CompensatedSum s;
    for (std::size_t e = 0; e < records[r].count(); ++e)
      s.add(rep.max_jump_closed_form * rep.max_jump_closed_form);
    t.rows.push_back({static_cast<double>(r), n_T, scale * n_T, s.value()});
  }
  sink.add("bracket", t);

  ScenarioResult res;
  res.criteria.push_back(crit("bracket-identity", rep.identity_ok,
                              rep.worst_identity_gap,
                              "sum dZ^2 = X_1 per path to 1e-12"));
  double vgap = std::abs(reg.v_T - reg.lambda);
  res.criteria.push_back(
      crit("v-equals-lambda", vgap <= 1e-12 * std::max(1.0, reg.lambda), vgap,
           "v_T = lambda to machine precision"));
  return res;
}

ScenarioResult scenario_sim_cross_check(const ExperimentConfig& cfg,
                                        ArtifactSink& sink) {
  const json& p = cfg.params;
  HawkesParams hp;
  hp.mu = num(p, "mu", 1.0);
  hp.a = num(p, "a", 0.9);
  hp.kernel = kernel_of(p, num(p, "alpha", 0.6));
  hp.horizon = num(p, "T", 50.0);
  const std::size_t replicas = count_of(p, "replicas", 10000);

  std::vector<double> n_cluster(replicas), n_thinning(replicas);
  parallel_for(replicas, cfg.threads, [&](std::size_t r) {
    n_cluster[r] = static_cast<double>(
        simulate_cluster(hp, mix_seed(cfg.seed, 2, r)).count());
  });
  parallel_for(replicas, cfg.threads, [&](std::size_t r) {
    n_thinning[r] = static_cast<double>(
        simulate_thinning(hp, mix_seed(cfg.seed, 3, r)).count());
  });

  KsTest ks = ks_two_sample(n_cluster, n_thinning);
  double expected = expected_count(hp, hp.horizon);

  auto mean_se = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double s2 = 0.0;
    for (double x : v) s2 += (x - m) * (x - m);
    s2 /= static_cast<double>(v.size() - 1);
    return std::pair<double, double>(m, std::sqrt(s2 / static_cast<double>(v.size())));
  };
  auto [mc, sec] = mean_se(n_cluster);
  auto [mt, set] = mean_se(n_thinning);

  CsvTable t;
  t.header = {"replica", "count_cluster", "count_thinning"};
  for (std::size_t r = 0; r < replicas; ++r)
    t.rows.push_back({static_cast<double>(r), n_cluster[r], n_thinning[r]});
  sink.add("counts", t);

  ScenarioResult res;
  res.criteria.push_back(crit("ks-cluster-vs-thinning", ks.p_value > 0.01,
                              ks.p_value, "two-sample KS p-value > 0.01"));
  res.criteria.push_back(crit("expected-count-cluster",
                              std::abs(mc - expected) <= 3.0 * sec,
                              (mc - expected) / sec,
                              "cluster mean N_T within 3 SE of E[N_T]"));
  res.criteria.push_back(crit("expected-count-thinning",
                              std::abs(mt - expected) <= 3.0 * set,
                              (mt - expected) / set,
                              "thinning mean N_T within 3 SE of E[N_T]"));
  return res;
}

ScenarioResult scenario_jt_ecdf(const ExperimentConfig& cfg, ArtifactSink& sink) {
  const json& p = cfg.params;
  const double alpha = num(p, "alpha", 0.6);
  const double lambda = num(p, "lambda", 1.0);
  KernelSpec k = kernel_of(p, alpha);
  const std::size_t samples = count_of(p, "samples", 1000000);
  std::vector<double> ladder = num_list(p, "T_ladder", {1e3, 1e4, 1e5});
  const double thr_T = num(p, "threshold_T", 1e4);
  const double thr_ks = num(p, "threshold_ks", 0.02);

  FracKernelParams fk{alpha, lambda};
  auto limit_cdf = [&](double x) { return x <= 0.0 ? 0.0 : F_frac(fk, x); };

  CsvTable stats;
  stats.header = {"T", "ks", "w1_truncated"};
  std::vector<double> ks_ladder;
  for (std::size_t ti = 0; ti < ladder.size(); ++ti) {
    ScalingRegime reg = make_regime(alpha, lambda, 1.0, tail_const(k), ladder[ti]);
    std::vector<double> s =
        sample_JT(reg, k, mix_seed(cfg.seed, 4, ti), samples);
    EcdfDistance d = ecdf_distance(s, limit_cdf);
    ks_ladder.push_back(d.ks);
    stats.rows.push_back({ladder[ti], d.ks, d.w1});

    // downsampled order statistics for plotting: (T, x, ecdf)
    std::sort(s.begin(), s.end());
    CsvTable ecdf;
    ecdf.header = {"T", "x", "ecdf"};
    std::size_t stride = std::max<std::size_t>(1, s.size() / 65536);
    for (std::size_t i = 0; i < s.size(); i += stride)
      ecdf.rows.push_back({ladder[ti], s[i],
                           static_cast<double>(i + 1) / static_cast<double>(s.size())});
    sink.add("ecdf_" + std::to_string(static_cast<long long>(ladder[ti])), ecdf);
  }
  sink.add("jt_stats", stats);

  ScenarioResult res;
  bool monotone = true;
  for (std::size_t i = 1; i < ks_ladder.size(); ++i)
    monotone = monotone && ks_ladder[i] < ks_ladder[i - 1];
  res.criteria.push_back(crit("jt-ks-monotone", monotone,
                              ks_ladder.empty() ? 0.0 : ks_ladder.back(),
                              "KS(ECDF(J^T), F) decreasing along the T ladder"));
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] == thr_T)
      res.criteria.push_back(
          crit("jt-ks-threshold", ks_ladder[i] < thr_ks, ks_ladder[i],
               "KS < " + format_double(thr_ks) + " at T = " + format_double(thr_T)));
  }
  return res;
}

ScenarioResult scenario_martingale_gap_decay(const ExperimentConfig& cfg,
                                      ArtifactSink& sink) {
  const json& p = cfg.params;
  const double alpha = num(p, "alpha", 0.6);
  KernelSpec k = kernel_of(p, alpha);
  const double lambda = num(p, "lambda", 1.0);
  const double mu_star = num(p, "mu_star", 1.0);
  std::vector<double> ladder = num_list(p, "T_ladder", {1e3, 1e4, 1e5});
  const std::size_t replicas = count_of(p, "replicas", 1000);
  const std::size_t n = count_of(p, "n", 1000);
  const double slope_lo = num(p, "slope_lo", 0.7);
  const double slope_hi = num(p, "slope_hi", 1.3);

  std::vector<DecayPoint> points;
  CsvTable stats;
  stats.header = {"T", "rate", "estimate"};
  for (std::size_t ti = 0; ti < ladder.size(); ++ti) {
    ScalingRegime reg = make_regime(alpha, lambda, mu_star, tail_const(k), ladder[ti]);
    HawkesParams hp = hawkes_params(reg, k);
    std::vector<double> sup2(replicas);
    parallel_for(replicas, cfg.threads, [&](std::size_t r) {
      EventRecord rec = simulate_cluster(hp, mix_seed(cfg.seed, 5 + ti, r));
      RescaledPaths paths = rescale_paths(rec, reg, n);
      double worst = 0.0;
      for (std::size_t i = 0; i < paths.X.values.size(); ++i) {
        double d = paths.X.values[i] - paths.Lambda.values[i];
        worst = std::max(worst, d * d);
      }
      sup2[r] = worst;
    });
    double mean = 0.0;
    for (double v : sup2) mean += v;
    mean /= static_cast<double>(replicas);
    DecayPoint pt;
    pt.horizon = ladder[ti];
    pt.rate = (1.0 - reg.a_T) / std::pow(ladder[ti], alpha);
    pt.estimate = mean;
    points.push_back(pt);
    stats.rows.push_back({pt.horizon, pt.rate, pt.estimate});
  }
  sink.add("decay", stats);

  DecayFit fit = martingale_gap_decay(points);
  ScenarioResult res;
  res.criteria.push_back(
      crit("gap-decay-slope", fit.slope >= slope_lo && fit.slope <= slope_hi,
           fit.slope, "log-log decay slope within [0.7, 1.3]"));
  return res;
}

ScenarioResult scenario_limit_properties(const ExperimentConfig& cfg,
                                         ArtifactSink& sink) {
  const json& p = cfg.params;
  LimitParams lp;
  lp.alpha = num(p, "alpha", 0.75);
  lp.lambda = num(p, "lambda", 1.0);
  lp.mu_star = num(p, "mu_star", 1.0);
  lp.n = count_of(p, "n", 1024);
  lp.seed = cfg.seed;
  const std::size_t paths = count_of(p, "paths", 10000);
  const std::size_t holder_paths = count_of(p, "holder_paths", 100);
  const std::size_t residual_paths = count_of(p, "residual_paths", 32);
  std::vector<double> mean_ts = num_list(p, "mean_times", {0.25, 0.5, 1.0});
  const double holder_lo = num(p, "holder_lo", 0.15);
  const double holder_hi = num(p, "holder_hi", 0.35);
  const double x_holder_min = num(p, "x_holder_min", 0.9);
  const double residual_factor = num(p, "residual_factor", 1.5);
  validate(lp);

  const FracKernelParams fk{lp.alpha, lp.lambda};

  // mean identity E[Y_t] = F(t) and per-path roughness in one sweep
  std::vector<std::size_t> idx(mean_ts.size());
  for (std::size_t m = 0; m < mean_ts.size(); ++m)
    idx[m] = static_cast<std::size_t>(
        std::llround(mean_ts[m] * static_cast<double>(lp.n)));
  std::vector<std::vector<double>> y_at(mean_ts.size(),
                                        std::vector<double>(paths));
  std::vector<double> holder_y(holder_paths), holder_x(holder_paths);
  parallel_for(paths, cfg.threads, [&](std::size_t path) {
    LimitParams mine = lp;
    mine.path_index = path;
    VolterraPath vp = simulate_Y(mine);
    for (std::size_t m = 0; m < idx.size(); ++m)
      y_at[m][path] = vp.Y.values[idx[m]];
    if (path < holder_paths) {
      holder_y[path] = holder_estimate(vp.Y).exponent;
      holder_x[path] = holder_estimate(integrate_Y_to_X(vp.Y)).exponent;
    }
  });

  ScenarioResult res;
  CsvTable mean_t;
  mean_t.header = {"t", "mc_mean", "analytic", "se"};
  for (std::size_t m = 0; m < mean_ts.size(); ++m) {
    double mean = 0.0;
    for (double v : y_at[m]) mean += v;
    mean /= static_cast<double>(paths);
    double s2 = 0.0;
    for (double v : y_at[m]) s2 += (v - mean) * (v - mean);
    double se = std::sqrt(s2 / (static_cast<double>(paths) *
                                static_cast<double>(paths - 1)));
    double target = F_frac(fk, mean_ts[m]);
    mean_t.rows.push_back({mean_ts[m], mean, target, se});
    res.criteria.push_back(crit(
        "mean-Y-at-" + format_double(mean_ts[m]),
        std::abs(mean - target) <= 3.0 * se, (mean - target) / se,
        "E[Y_t] = F(t) within 3 SE"));
  }
  sink.add("mean_identity", mean_t);

  double hy = 0.0, hx = 0.0;
  CsvTable ht;
  ht.header = {"path", "holder_Y", "holder_X"};
  for (std::size_t i = 0; i < holder_paths; ++i) {
    hy += holder_y[i];
    hx += holder_x[i];
    ht.rows.push_back({static_cast<double>(i), holder_y[i], holder_x[i]});
  }
  hy /= static_cast<double>(holder_paths);
  hx /= static_cast<double>(holder_paths);
  sink.add("holder", ht);
  res.criteria.push_back(crit("holder-Y", hy >= holder_lo && hy <= holder_hi, hy,
                              "ensemble Y exponent within [" +
                                  format_double(holder_lo) + ", " +
                                  format_double(holder_hi) + "]"));
  res.criteria.push_back(crit("holder-X", hx >= x_holder_min, hx,
                              "ensemble X exponent >= " +
                                  format_double(x_holder_min)));

  // residual self-convergence on a shared Brownian tree
  std::vector<std::size_t> ns = {lp.n / 4, lp.n / 2, lp.n};
  std::vector<double> medians;
  CsvTable rt;
  rt.header = {"n", "median_residual"};
  for (std::size_t nn : ns) {
    std::vector<double> residuals(residual_paths);
    parallel_for(residual_paths, cfg.threads, [&](std::size_t path) {
      LimitParams mine = lp;
      mine.n = nn;
      mine.path_index = path;
      VolterraPath vp = simulate_Y(mine);
      GridPath x = integrate_Y_to_X(vp.Y);
      residuals[path] = integral_equation_residual(mine, vp, x);
    });
    std::sort(residuals.begin(), residuals.end());
    medians.push_back(residuals[residual_paths / 2]);
    rt.rows.push_back({static_cast<double>(nn), medians.back()});
  }
  sink.add("residuals", rt);
  bool conv = true;
  for (std::size_t i = 1; i < medians.size(); ++i)
    conv = conv && medians[i - 1] / medians[i] >= residual_factor;
  res.criteria.push_back(
      crit("residual-self-convergence", conv,
           medians.size() > 1 ? medians[medians.size() - 2] / medians.back() : 0.0,
           "median residual shrinks by >= " + format_double(residual_factor) +
               " per grid doubling"));
  return res;
}

ScenarioResult scenario_wasserstein(const ExperimentConfig& cfg,
                                    ArtifactSink& sink) {
  const json& p = cfg.params;
  const double alpha = num(p, "alpha", 0.6);
  const double lambda = num(p, "lambda", 1.0);
  const double mu_star = num(p, "mu_star", 1.0);
  KernelSpec k = kernel_of(p, alpha);
  std::vector<double> ladder = num_list(p, "T_ladder", {1e3, 3e3, 1e4});
  const std::size_t replicas = count_of(p, "replicas", 10000);
  const std::size_t paths = count_of(p, "paths", 10000);
  const std::size_t n = count_of(p, "n", 1024);

  // limit-side sample of X_1, shared across the ladder
  std::vector<double> x_limit(paths);
  parallel_for(paths, cfg.threads, [&](std::size_t path) {
    LimitParams lp;
    lp.alpha = alpha;
    lp.lambda = lambda;
    lp.mu_star = mu_star;
    lp.n = n;
    lp.seed = cfg.seed;
    lp.path_index = path;
    VolterraPath vp = simulate_Y(lp);
    GridPath x = integrate_Y_to_X(vp.Y);
    x_limit[path] = x.values.back();
  });

  CsvTable stats;
  stats.header = {"T", "w1", "ks"};
  std::vector<double> w1s;
  for (std::size_t ti = 0; ti < ladder.size(); ++ti) {
    ScalingRegime reg = make_regime(alpha, lambda, mu_star, tail_const(k), ladder[ti]);
    HawkesParams hp = hawkes_params(reg, k);
    const double scale = (1.0 - reg.a_T) / reg.space_norm();
    std::vector<double> x_hawkes(replicas);
    parallel_for(replicas, cfg.threads, [&](std::size_t r) {
      x_hawkes[r] = scale * static_cast<double>(
                                simulate_cluster(hp, mix_seed(cfg.seed, 20 + ti, r))
                                    .count());
    });
    EcdfDistance d = ecdf_distance(x_hawkes, x_limit);
    w1s.push_back(d.w1);
    stats.rows.push_back({ladder[ti], d.w1, d.ks});
  }
  sink.add("wasserstein", stats);

  ScenarioResult res;
  bool decreasing = true;
  for (std::size_t i = 1; i < w1s.size(); ++i)
    decreasing = decreasing && w1s[i] < w1s[i - 1];
  res.criteria.push_back(crit(
      "w1-decreasing", decreasing, w1s.empty() ? 0.0 : w1s.back(),
      "W1(X^T_1, X_1) strictly decreasing along the T ladder"));
  return res;
}

const std::map<std::string, ScenarioFn>& registry() {
  static const std::map<std::string, ScenarioFn> reg = {
      {"bracket-identity", scenario_bracket_identity},
      {"sim-cross-check", scenario_sim_cross_check},
      {"jt-ecdf", scenario_jt_ecdf},
      {"martingale-gap-decay", scenario_martingale_gap_decay},
      {"limit-properties", scenario_limit_properties},
      {"wasserstein", scenario_wasserstein},
  };
  return reg;
}

}  // namespace

ExperimentConfig parse_config(const json& doc) {
  ExperimentConfig cfg;
  if (!doc.contains("scenario") || !doc.at("scenario").is_string())
    throw ConfigError("config: missing 'scenario' string");
  cfg.scenario = doc.at("scenario").get<std::string>();
  cfg.params = doc.value("params", json::object());
  cfg.seed = static_cast<std::uint64_t>(num(doc, "seed", 1.0));
  cfg.threads = static_cast<unsigned>(num(doc, "threads", 0.0));
  if (doc.contains("out")) cfg.out_dir = doc.at("out").get<std::string>();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  json doc;
  try {
    doc = json::parse(read_file(file));
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

std::vector<std::string> validate_config(const ExperimentConfig& cfg) {
  std::vector<std::string> violations;
  if (!registry().count(cfg.scenario)) {
    violations.push_back("unknown scenario id: '" + cfg.scenario + "'");
    return violations;
  }
  const json& p = cfg.params;
  try {
    double alpha = num(p, "alpha", 0.6);
    if (!(alpha > 0.0) || !(alpha < 1.0))
      violations.push_back("alpha must be in (0, 1)");
    double lambda = num(p, "lambda", 1.0);
    if (!(lambda > 0.0)) violations.push_back("lambda must be > 0");
    if (p.contains("family")) kernel_of(p, 0.5);

    const bool needs_limit_paths =
        cfg.scenario == "limit-properties" || cfg.scenario == "wasserstein";
    if (needs_limit_paths) {
      double a = num(p, "alpha", cfg.scenario == "limit-properties" ? 0.75 : 0.6);
      if (!(a > 0.5))
        violations.push_back(
            "scenario '" + cfg.scenario +
            "' simulates the limit volatility, which requires alpha > 1/2");
      if (count_of(p, "n", 1024) < 256)
        violations.push_back("limit grid needs n >= 256");
    }

    const bool needs_regime = cfg.scenario != "sim-cross-check";
    if (needs_regime && alpha > 0.0 && alpha < 1.0 && lambda > 0.0) {
      KernelSpec k = kernel_of(p, alpha);
      std::vector<double> ladder =
          p.contains("T_ladder") ? num_list(p, "T_ladder", {})
                                 : std::vector<double>{num(p, "T", 100.0)};
      for (double T : ladder) {
        try {
          make_regime(alpha, lambda, num(p, "mu_star", 1.0), tail_const(k), T);
        } catch (const DomainError& e) {
          violations.push_back("T = " + format_double(T) + ": " + e.what());
        }
      }
      if (cfg.scenario == "martingale-gap-decay" && ladder.size() < 3)
        violations.push_back("martingale-gap-decay needs a T ladder with >= 3 points");
    }
    if (cfg.scenario == "sim-cross-check") {
      double a = num(p, "a", 0.9);
      if (!(a > 0.0) || !(a < 1.0))
        violations.push_back("branching ratio a must be in (0, 1)");
      if (!(num(p, "mu", 1.0) > 0.0)) violations.push_back("mu must be > 0");
      if (!(num(p, "T", 50.0) > 0.0)) violations.push_back("T must be > 0");
    }
  } catch (const ConfigError& e) {
    violations.push_back(e.what());
  }
  return violations;
}

ScenarioResult run_scenario_result(const ExperimentConfig& cfg) {
  auto it = registry().find(cfg.scenario);
  if (it == registry().end())
    throw ConfigError("unknown scenario id: '" + cfg.scenario + "'");
  auto violations = validate_config(cfg);
  if (!violations.empty()) {
    std::string msg = "invalid config:";
    for (const auto& v : violations) msg += "\n  - " + v;
    throw ConfigError(msg);
  }
  ArtifactSink sink;
  sink.enabled = !cfg.out_dir.empty();
  sink.dir = cfg.out_dir;
  if (sink.enabled) std::filesystem::create_directories(sink.dir);
  auto start = std::chrono::steady_clock::now();
  ScenarioResult res = it->second(cfg, sink);
  auto elapsed = std::chrono::duration<double>(
                     std::chrono::steady_clock::now() - start)
                     .count();

  if (sink.enabled) {
    json criteria = json::array();
    for (const auto& c : res.criteria)
      criteria.push_back({{"id", c.id},
                          {"pass", c.pass},
                          {"observed", c.observed},
                          {"requirement", c.requirement}});
    json report = {
        {"scenario", cfg.scenario}, {"pass", res.all_pass()}, {"criteria", criteria}};
    write_atomic(sink.dir / "criteria.json", report.dump(2) + "\n");

    json manifest = {{"scenario", cfg.scenario},
                     {"version", "0.1.0"},
                     {"seed", cfg.seed},
                     {"threads", cfg.threads},
                     {"params", cfg.params},
                     {"wall_clock_seconds", elapsed},
                     {"artifacts", sink.entries}};
    write_atomic(sink.dir / "manifest.json", manifest.dump(2) + "\n");
  }
  return res;
}

int run_scenario(const ExperimentConfig& cfg) {
  try {
    ScenarioResult res = run_scenario_result(cfg);
    return res.all_pass() ? kExitOk : kExitCriterionFailure;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfigError;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource cap: %s\n", e.what());
    return kExitResourceError;
  }
}

void emit_plotdata(const std::filesystem::path& scenario_dir) {
  std::filesystem::path mf = scenario_dir / "manifest.json";
  if (!std::filesystem::exists(mf))
    throw MissingDataError("emit_plotdata: no manifest.json in " +
                           scenario_dir.string());
  json manifest = json::parse(read_file(mf));
  const std::string scenario = manifest.value("scenario", "");
  const json arts = manifest.value("artifacts", json::object());
  const json params = manifest.value("params", json::object());

  auto check_rows = [&](const std::string& name, const CsvTable& t) {
    std::size_t expect = arts.at(name).at("rows").get<std::size_t>();
    if (t.rows.size() != expect)
      throw MissingDataError("emit_plotdata: artifact '" + name +
                             "' row count does not match the manifest");
  };

  if (scenario == "jt-ecdf") {
    const double alpha = num(params, "alpha", 0.6);
    const double lambda = num(params, "lambda", 1.0);
    FracKernelParams fk{alpha, lambda};
    CsvTable out;
    out.header = {"scenario", "T", "x", "ecdf", "analytic"};
    for (auto it = arts.begin(); it != arts.end(); ++it) {
      if (it.key().rfind("ecdf_", 0) != 0) continue;
      CsvTable t = read_csv(scenario_dir / it.value().at("file").get<std::string>());
      check_rows(it.key(), t);
      for (const auto& row : t.rows)
        out.rows.push_back({0.0, row[0], row[1], row[2],
                            row[1] <= 0.0 ? 0.0 : F_frac(fk, row[1])});
    }
    if (out.rows.empty())
      throw MissingDataError("emit_plotdata: jt-ecdf run has no ecdf artifacts");
    // scenario column is symbolic; write the CSV with a string first column
    std::string body = "scenario,T,x,ecdf,analytic\n";
    for (const auto& row : out.rows) {
      body += scenario;
      for (std::size_t c = 1; c < row.size(); ++c)
        body += "," + format_double(row[c]);
      body += "\n";
    }
    write_atomic(scenario_dir / "plot_ecdf.csv", body);
    return;
  }
  if (scenario == "martingale-gap-decay") {
    CsvTable t = read_csv(scenario_dir / arts.at("decay").at("file").get<std::string>());
    check_rows("decay", t);
    std::string body = "scenario,T,rate,estimate\n";
    for (const auto& row : t.rows)
      body += scenario + "," + format_double(row[0]) + "," +
              format_double(row[1]) + "," + format_double(row[2]) + "\n";
    write_atomic(scenario_dir / "plot_decay.csv", body);
    return;
  }
  if (scenario == "limit-properties") {
    CsvTable t = read_csv(scenario_dir / arts.at("holder").at("file").get<std::string>());
    check_rows("holder", t);
    std::string body = "scenario,path,holder_Y,holder_X\n";
    for (const auto& row : t.rows)
      body += scenario + "," + format_double(row[0]) + "," +
              format_double(row[1]) + "," + format_double(row[2]) + "\n";
    write_atomic(scenario_dir / "plot_holder.csv", body);
    return;
  }
  if (scenario == "wasserstein") {
    CsvTable t =
        read_csv(scenario_dir / arts.at("wasserstein").at("file").get<std::string>());
    check_rows("wasserstein", t);
    std::string body = "scenario,T,w1,ks\n";
    for (const auto& row : t.rows)
      body += scenario + "," + format_double(row[0]) + "," +
              format_double(row[1]) + "," + format_double(row[2]) + "\n";
    write_atomic(scenario_dir / "plot_w1.csv", body);
    return;
  }
  throw MissingDataError("emit_plotdata: scenario '" + scenario +
                         "' has no plottable bundles");
}

}  // namespace rhk
