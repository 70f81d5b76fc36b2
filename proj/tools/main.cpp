// Command-line front end: simulation, special-function evaluation, rescaling
// pipelines, diagnostics, and scenario orchestration.
//
// Exit codes: 0 ok, 1 criterion failure, 2 config error, 3 resource cap.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "rhk/diagnostics.hpp"
#include "rhk/errors.hpp"
#include "rhk/io.hpp"
#include "rhk/parallel.hpp"
#include "rhk/runner.hpp"
#include "rhk/scaling.hpp"
#include "rhk/volterra.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string out;
};

int cmd_ml(double alpha, double beta, double z, double tol, bool batch) {
  if (batch) {
    double a, b, x;
    while (std::cin >> a >> b >> x)
      std::printf("%s\n", rhk::format_double(rhk::ml_eval({a, b, x, tol})).c_str());
    return 0;
  }
  std::printf("%s\n", rhk::format_double(rhk::ml_eval({alpha, beta, z, tol})).c_str());
  return 0;
}

rhk::KernelSpec make_kernel(const std::string& family, double alpha) {
  return rhk::KernelSpec{rhk::kernel_family_from_string(family), alpha};
}

int cmd_kernel_sample(const std::string& family, double alpha, std::size_t n,
                      std::uint64_t seed) {
  rhk::KernelSpec k = make_kernel(family, alpha);
  rhk::RngStream rng(seed, 0);
  for (std::size_t i = 0; i < n; ++i)
    std::printf("%s\n",
                rhk::format_double(rhk::sample_delay(k, rng.uniform01())).c_str());
  return 0;
}

int cmd_kernel_laplace(const std::string& family, double alpha, double z) {
  std::printf("%s\n",
              rhk::format_double(rhk::laplace_phi(make_kernel(family, alpha), z))
                  .c_str());
  return 0;
}

int cmd_hawkes(const GlobalOpts& g, double mu, double a, const std::string& family,
               double alpha, double T, const std::string& method,
               const std::string& out) {
  rhk::HawkesParams p;
  p.mu = mu;
  p.a = a;
  p.kernel = make_kernel(family, alpha);
  p.horizon = T;
  rhk::EventRecord rec = method == "thinning" ? rhk::simulate_thinning(p, g.seed)
                                              : rhk::simulate_cluster(p, g.seed);
  rhk::CsvTable t;
  t.header = {"time", "generation"};
  for (std::size_t i = 0; i < rec.count(); ++i)
    t.rows.push_back({rec.times[i], static_cast<double>(rec.generation[i])});
  rhk::write_atomic(out, rhk::to_csv(t));
  std::fprintf(stderr, "wrote %zu events to %s\n", rec.count(), out.c_str());
  return 0;
}

json regime_json(const rhk::ScalingRegime& reg) {
  return json{{"alpha", reg.alpha},   {"lambda", reg.lambda},
              {"mu_star", reg.mu_star}, {"K", reg.tail_const},
              {"T", reg.horizon},     {"delta", reg.delta},
              {"a_T", reg.a_T},       {"mu_T", reg.mu_T},
              {"v_T", reg.v_T},       {"gamma_T", reg.gamma_T}};
}

int cmd_scaling_run(const GlobalOpts& g, double alpha, double lambda,
                    double mu_star, const std::string& family, double T,
                    std::size_t replicas, std::size_t n, bool with_intensity,
                    const std::string& out) {
  rhk::KernelSpec k = make_kernel(family, alpha);
  rhk::ScalingRegime reg =
      rhk::make_regime(alpha, lambda, mu_star, rhk::tail_const(k), T);
  rhk::HawkesParams hp = rhk::hawkes_params(reg, k);
  fs::path dir(out);
  fs::create_directories(dir);

  std::vector<double> x1(replicas), sup2(replicas);
  rhk::parallel_for(replicas, g.threads, [&](std::size_t r) {
    rhk::RngStream mix(g.seed, r);
    rhk::EventRecord rec = rhk::simulate_cluster(hp, mix.next_u64());
    rhk::RescaledPaths paths = rhk::rescale_paths(rec, reg, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < paths.X.values.size(); ++i) {
      double d = paths.X.values[i] - paths.Lambda.values[i];
      worst = std::max(worst, d * d);
    }
    sup2[r] = worst;
    x1[r] = paths.X.values.back();

    rhk::CsvTable t;
    t.header = {"t", "X", "Lambda", "Z"};
    if (with_intensity) t.header.push_back("C");  // diagnostic only, not tight
    for (std::size_t i = 0; i < paths.X.values.size(); ++i) {
      std::vector<double> row = {paths.X.step * static_cast<double>(i),
                                 paths.X.values[i], paths.Lambda.values[i],
                                 paths.Z.values[i]};
      if (with_intensity) {
        double tt = reg.horizon * paths.X.step * static_cast<double>(i);
        row.push_back((1.0 - reg.a_T) / reg.mu_T *
                      rhk::intensity_at(rec, tt));
      }
      t.rows.push_back(std::move(row));
    }
    char name[32];
    std::snprintf(name, sizeof name, "replica_%05zu.csv", r);
    rhk::write_atomic(dir / name, rhk::to_csv(t));
  });

  double mean_x1 = 0.0, mean_sup2 = 0.0;
  for (std::size_t r = 0; r < replicas; ++r) {
    mean_x1 += x1[r];
    mean_sup2 += sup2[r];
  }
  mean_x1 /= static_cast<double>(replicas);
  mean_sup2 /= static_cast<double>(replicas);

  json summary = {{"regime", regime_json(reg)},
                  {"kernel", rhk::to_string(k.family)},
                  {"replicas", replicas},
                  {"n", n},
                  {"seed", g.seed},
                  {"mean_X1", mean_x1},
                  {"mean_sup2_X_minus_Lambda", mean_sup2},
                  {"max_jump_Z", std::sqrt((1.0 - reg.a_T) / reg.space_norm())}};
  rhk::write_atomic(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_volterra(const GlobalOpts& g, double alpha, double lambda, double mu_star,
                 std::size_t n, std::size_t paths, const std::string& out) {
  fs::path dir(out);
  fs::create_directories(dir);
  std::vector<double> x1(paths), y1(paths);
  rhk::parallel_for(paths, g.threads, [&](std::size_t pi) {
    rhk::LimitParams lp;
    lp.alpha = alpha;
    lp.lambda = lambda;
    lp.mu_star = mu_star;
    lp.n = n;
    lp.seed = g.seed;
    lp.path_index = pi;
    rhk::VolterraPath vp = rhk::simulate_Y(lp);
    rhk::GridPath x = rhk::integrate_Y_to_X(vp.Y);
    x1[pi] = x.values.back();
    y1[pi] = vp.Y.values.back();

    rhk::CsvTable t;
    t.header = {"t", "Y", "X", "Z"};
    double z = 0.0;
    for (std::size_t i = 0; i < vp.Y.values.size(); ++i) {
      t.rows.push_back(
          {vp.Y.step * static_cast<double>(i), vp.Y.values[i], x.values[i], z});
      if (i < vp.dB.size()) {
        double pos = vp.Y.values[i] > 0.0 ? vp.Y.values[i] : 0.0;
        z += std::sqrt(pos) * vp.dB[i];
      }
    }
    char name[32];
    std::snprintf(name, sizeof name, "path_%05zu.csv", pi);
    rhk::write_atomic(dir / name, rhk::to_csv(t));
  });
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < paths; ++i) {
    mx += x1[i];
    my += y1[i];
  }
  json summary = {{"alpha", alpha},
                  {"lambda", lambda},
                  {"mu_star", mu_star},
                  {"n", n},
                  {"paths", paths},
                  {"seed", g.seed},
                  {"mean_X1", mx / static_cast<double>(paths)},
                  {"mean_Y1", my / static_cast<double>(paths)},
                  {"analytic_mean_Y1", rhk::F_frac({alpha, lambda}, 1.0)}};
  rhk::write_atomic(dir / "summary.json", summary.dump(2) + "\n");
  return 0;
}

int cmd_diag_holder(const std::string& in, const std::string& col) {
  rhk::CsvTable t = rhk::read_csv(in);
  std::size_t ci = t.header.size();
  for (std::size_t c = 0; c < t.header.size(); ++c)
    if (t.header[c] == col) ci = c;
  if (ci == t.header.size())
    throw rhk::ConfigError("diag holder: no column '" + col + "' in " + in);
  std::vector<double> v;
  v.reserve(t.rows.size());
  for (const auto& row : t.rows) v.push_back(row[ci]);
  double step = t.rows.size() > 1 ? 1.0 / static_cast<double>(t.rows.size() - 1) : 1.0;
  rhk::HolderEstimate est = rhk::holder_estimate(v, step);
  json out = {{"column", col},
              {"exponent", est.exponent},
              {"stderr", est.stderr_},
              {"h_min", est.h_min},
              {"h_max", est.h_max}};
  std::printf("%s\n", out.dump(2).c_str());
  return 0;
}

int cmd_diag_converge(const std::string& ladder_csv, const std::string& dir) {
  std::vector<double> ladder;
  {
    std::stringstream ss(ladder_csv);
    std::string item;
    while (std::getline(ss, item, ',')) ladder.push_back(rhk::parse_double(item));
  }
  if (ladder.size() < 3)
    throw rhk::ConfigError("diag converge: need a ladder of at least 3 horizons");

  std::vector<rhk::DecayPoint> points;
  std::vector<double> jumps;
  for (double T : ladder) {
    fs::path tdir = fs::path(dir) / ("T_" + rhk::format_double(T));
    if (!fs::exists(tdir / "summary.json"))
      throw rhk::MissingDataError("diag converge: missing " +
                                  (tdir / "summary.json").string());
    json summary = json::parse(rhk::read_file(tdir / "summary.json"));
    double alpha = summary.at("regime").at("alpha").get<double>();
    double a_T = summary.at("regime").at("a_T").get<double>();
    rhk::DecayPoint pt;
    pt.horizon = T;
    pt.rate = (1.0 - a_T) / std::pow(T, alpha);
    pt.estimate = summary.at("mean_sup2_X_minus_Lambda").get<double>();
    points.push_back(pt);
    jumps.push_back(summary.at("max_jump_Z").get<double>());
  }
  rhk::DecayFit fit = rhk::martingale_gap_decay(points);
  bool slope_ok = fit.slope >= 0.7 && fit.slope <= 1.3;
  bool jumps_ok = true;
  for (std::size_t i = 1; i < jumps.size(); ++i)
    jumps_ok = jumps_ok && jumps[i] < jumps[i - 1];

  json report = {
      {"criteria",
       {{{"id", "gap-decay-slope"},
         {"pass", slope_ok},
         {"observed", fit.slope},
         {"requirement", "decay slope within [0.7, 1.3]"}},
        {{"id", "max-jump-decreasing"},
         {"pass", jumps_ok},
         {"observed", jumps.back()},
         {"requirement", "max |dZ| decreasing along the ladder"}}}},
      {"pass", slope_ok && jumps_ok}};
  std::printf("%s\n", report.dump(2).c_str());
  return (slope_ok && jumps_ok) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rough-Hawkes toolkit: nearly unstable heavy-tailed Hawkes "
               "processes and their rough CIR-type scaling limit"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--out", g.out, "output file or directory");

  // ml eval
  auto* ml = app.add_subcommand("ml", "Mittag-Leffler function");
  auto* ml_eval_cmd = ml->add_subcommand("eval", "evaluate E_{alpha,beta}(z)");
  double ml_alpha = 0.6, ml_beta = 1.0, ml_z = 0.0, ml_tol = 1e-10;
  bool ml_batch = false;
  ml_eval_cmd->add_option("--alpha", ml_alpha, "series parameter in (0,1]");
  ml_eval_cmd->add_option("--beta", ml_beta, "second parameter > 0");
  ml_eval_cmd->add_option("--z", ml_z, "evaluation point");
  ml_eval_cmd->add_option("--tol", ml_tol, "relative tolerance");
  ml_eval_cmd->add_flag("--batch", ml_batch,
                        "read whitespace-separated alpha beta z triples from stdin");

  // kernel
  auto* kernel = app.add_subcommand("kernel", "heavy-tailed excitation kernels");
  auto* ks = kernel->add_subcommand("sample", "draw kernel delays");
  std::string k_family = "shifted-pareto";
  double k_alpha = 0.6, k_z = 1.0;
  std::size_t k_n = 10;
  ks->add_option("--family", k_family, "shifted-pareto | pareto1");
  ks->add_option("--alpha", k_alpha, "tail index in (0,1)");
  ks->add_option("--n", k_n, "number of samples");
  auto* kl = kernel->add_subcommand("laplace", "Laplace transform of the density");
  kl->add_option("--family", k_family, "shifted-pareto | pareto1");
  kl->add_option("--alpha", k_alpha, "tail index in (0,1)");
  kl->add_option("--z", k_z, "transform argument >= 0");

  // hawkes simulate
  auto* hawkes = app.add_subcommand("hawkes", "Hawkes process simulation");
  auto* hs = hawkes->add_subcommand("simulate", "simulate one path to CSV");
  double h_mu = 1.0, h_a = 0.9, h_alpha = 0.6, h_T = 100.0;
  std::string h_family = "shifted-pareto", h_method = "cluster", h_out = "hawkes.csv";
  hs->add_option("--mu", h_mu, "baseline rate");
  hs->add_option("--a", h_a, "branching ratio in (0,1)");
  hs->add_option("--family", h_family, "kernel family");
  hs->add_option("--alpha", h_alpha, "tail index");
  hs->add_option("--T", h_T, "horizon");
  hs->add_option("--method", h_method, "cluster | thinning");
  hs->add_option("--out", h_out, "output CSV path");

  // scaling run
  auto* scal = app.add_subcommand("scaling", "nearly unstable regime pipelines");
  auto* sr = scal->add_subcommand("run", "simulate and rescale an ensemble");
  double s_alpha = 0.6, s_lambda = 1.0, s_mustar = 1.0, s_T = 1000.0;
  std::size_t s_replicas = 100, s_n = 1000;
  bool s_intensity = false;
  std::string s_family = "shifted-pareto", s_out = "scaling_out";
  sr->add_option("--alpha", s_alpha, "tail index");
  sr->add_option("--lambda", s_lambda, "regime constant lambda");
  sr->add_option("--mustar", s_mustar, "regime constant mu*");
  sr->add_option("--family", s_family, "kernel family");
  sr->add_option("--T", s_T, "horizon");
  sr->add_option("--replicas", s_replicas, "replica count");
  sr->add_option("--n", s_n, "grid cells on [0,1]");
  sr->add_flag("--with-intensity", s_intensity,
               "emit the rescaled intensity as a diagnostic column C");
  sr->add_option("--out", s_out, "output directory");

  // volterra simulate
  auto* vol = app.add_subcommand("volterra", "rough limit process simulation");
  auto* vs = vol->add_subcommand("simulate", "simulate limit paths to CSV");
  double v_alpha = 0.75, v_lambda = 1.0, v_mustar = 1.0;
  std::size_t v_n = 1024, v_paths = 10;
  std::string v_out = "volterra_out";
  vs->add_option("--alpha", v_alpha, "tail index, must be > 1/2");
  vs->add_option("--lambda", v_lambda, "regime constant lambda");
  vs->add_option("--mustar", v_mustar, "regime constant mu*");
  vs->add_option("--n", v_n, "grid cells on [0,1]");
  vs->add_option("--paths", v_paths, "ensemble size");
  vs->add_option("--out", v_out, "output directory");

  // diag
  auto* diag = app.add_subcommand("diag", "statistical diagnostics");
  auto* dh = diag->add_subcommand("holder", "roughness of a CSV column");
  std::string d_in, d_col = "Y";
  dh->add_option("--in", d_in, "input CSV")->required();
  dh->add_option("--col", d_col, "column name");
  auto* dc = diag->add_subcommand("converge", "convergence report across a T ladder");
  std::string d_ladder, d_dir;
  dc->add_option("--ladder", d_ladder, "comma-separated horizons")->required();
  dc->add_option("--dir", d_dir, "directory with per-T scaling runs")->required();
  auto* dp = diag->add_subcommand(
      "plotdata", "tidy long-format CSV bundles from a completed scenario dir");
  std::string dp_dir;
  dp->add_option("--dir", dp_dir, "scenario output directory")->required();

  // run / validate
  auto* run = app.add_subcommand("run", "run a scenario from a JSON config");
  std::string r_config;
  run->add_option("--config", r_config, "config file")->required();
  auto* val = app.add_subcommand("validate", "validate a JSON config");
  std::string val_config;
  val->add_option("--config", val_config, "config file")->required();

  // let --seed/--threads/--out appear after any subcommand
  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
    for (auto* nested : sub->get_subcommands({})) nested->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (ml_eval_cmd->parsed())
      return cmd_ml(ml_alpha, ml_beta, ml_z, ml_tol, ml_batch);
    if (ks->parsed()) return cmd_kernel_sample(k_family, k_alpha, k_n, g.seed);
    if (kl->parsed()) return cmd_kernel_laplace(k_family, k_alpha, k_z);
    if (hs->parsed())
      return cmd_hawkes(g, h_mu, h_a, h_family, h_alpha, h_T, h_method,
                        g.out.empty() ? h_out : g.out);
    if (sr->parsed())
      return cmd_scaling_run(g, s_alpha, s_lambda, s_mustar, s_family, s_T,
                             s_replicas, s_n, s_intensity,
                             g.out.empty() ? s_out : g.out);
    if (vs->parsed())
      return cmd_volterra(g, v_alpha, v_lambda, v_mustar, v_n, v_paths,
                          g.out.empty() ? v_out : g.out);
    if (dh->parsed()) return cmd_diag_holder(d_in, d_col);
    if (dc->parsed()) return cmd_diag_converge(d_ladder, d_dir);
    if (dp->parsed()) {
      rhk::emit_plotdata(dp_dir);
      return 0;
    }
    if (run->parsed()) {
      rhk::ExperimentConfig cfg = rhk::load_config(r_config);
      if (!g.out.empty()) cfg.out_dir = g.out;
      if (cfg.out_dir.empty()) cfg.out_dir = "scenario_out";
      if (app.count("--seed")) cfg.seed = g.seed;
      if (app.count("--threads")) cfg.threads = g.threads;
      return rhk::run_scenario(cfg);
    }
    if (val->parsed()) {
      rhk::ExperimentConfig cfg = rhk::load_config(val_config);
      auto violations = rhk::validate_config(cfg);
      for (const auto& v : violations) std::printf("violation: %s\n", v.c_str());
      if (violations.empty()) std::printf("config ok\n");
      return violations.empty() ? 0 : rhk::kExitConfigError;
    }
    std::fprintf(stderr, "no action selected\n");
    return rhk::kExitConfigError;
  } catch (const rhk::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return rhk::kExitConfigError;
  } catch (const rhk::MissingDataError& e) {
    std::fprintf(stderr, "missing data: %s\n", e.what());
    return rhk::kExitConfigError;
  } catch (const rhk::ResourceError& e) {
    std::fprintf(stderr, "resource cap: %s\n", e.what());
    return rhk::kExitResourceError;
  } catch (const rhk::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return rhk::kExitConfigError;
  }
}
