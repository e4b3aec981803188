// coxcell: experiment runner for the hybrid planar/on-road cellular model.
// Subcommands sweep one variable, evaluate the analytic and/or Monte Carlo
// engine at every grid point, and write a CSV plus a JSON metadata sidecar.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coxcell/experiment.hpp"
#include "coxcell/sampling.hpp"

namespace {

using namespace coxcell;

struct CommonArgs {
  std::string config_path;
  std::string preset;
  std::uint64_t seed = 1;
  long trials = 100000;
  std::string engine = "both";
  std::string out = "coxcell_out.csv";
  std::string scenario = "planar";
  std::string angular = "isotropic";
  std::optional<double> lambda_b, lambda_u, lambda_l, mu_b, mu_u, alpha, tx_power, threshold_db;
  std::vector<double> grid;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_scenario = true) {
  cmd->add_option("--config", a.config_path, "key=value parameter file");
  cmd->add_option("--preset", a.preset, "named parameter preset")
      ->check(CLI::IsMember({"3gpp", "equal"}));
  cmd->add_option("--seed", a.seed, "master RNG seed");
  cmd->add_option("--trials", a.trials, "Monte Carlo trials per grid point");
  cmd->add_option("--engine", a.engine, "computation engine")
      ->check(CLI::IsMember({"analytic", "mc", "both"}));
  cmd->add_option("--out", a.out, "output CSV path");
  if (with_scenario) {
    cmd->add_option("--scenario", a.scenario, "typical user kind")
        ->check(CLI::IsMember({"planar", "vehicular"}));
  }
  cmd->add_option("--angular", a.angular, "line angle measure (manhattan: mc engine only)")
      ->check(CLI::IsMember({"isotropic", "manhattan"}));
  cmd->add_option("--lambda-b", a.lambda_b, "planar station intensity, 1/km^2");
  cmd->add_option("--lambda-u", a.lambda_u, "planar user intensity, 1/km^2");
  cmd->add_option("--lambda-l", a.lambda_l, "road intensity, 1/km");
  cmd->add_option("--mu-b", a.mu_b, "vehicular station intensity per road, 1/km");
  cmd->add_option("--mu-u", a.mu_u, "vehicular user intensity per road, 1/km");
  cmd->add_option("--alpha", a.alpha, "path-loss exponent");
  cmd->add_option("--tx-power", a.tx_power, "transmit power (cancels in SIR)");
  cmd->add_option("--threshold-db", a.threshold_db, "SIR threshold, dB");
  cmd->add_option("--grid", a.grid, "sweep grid values (comma separated)")->delimiter(',');
}

NetworkConfig build_config(const CommonArgs& a) {
  NetworkConfig cfg;
  if (a.preset == "3gpp") cfg = preset_3gpp_urban();
  else if (a.preset == "equal") cfg = preset_equal_intensity();
  if (!a.config_path.empty()) {
    std::ifstream is(a.config_path);
    if (!is) throw ConfigError("cannot open config file: " + a.config_path);
    cfg = load_config(is, cfg);
  }
  if (a.lambda_b) cfg.lambda_b = *a.lambda_b;
  if (a.lambda_u) cfg.lambda_u = *a.lambda_u;
  if (a.lambda_l) cfg.lambda_l = *a.lambda_l;
  if (a.mu_b) cfg.mu_b = *a.mu_b;
  if (a.mu_u) cfg.mu_u = *a.mu_u;
  if (a.alpha) cfg.alpha = *a.alpha;
  if (a.tx_power) cfg.tx_power = *a.tx_power;
  if (a.threshold_db) cfg.threshold = db_to_linear(*a.threshold_db);
  return cfg;
}

ExperimentSpec build_spec(const CommonArgs& a, std::string name) {
  ExperimentSpec spec;
  spec.name = std::move(name);
  spec.base = build_config(a);
  spec.seed = a.seed;
  spec.n_trials = a.trials;
  spec.out_path = a.out;
  spec.scenario = a.scenario == "vehicular" ? PalmScenario::TypicalVehicularUser
                                            : PalmScenario::TypicalPlanarUser;
  spec.angular = a.angular == "manhattan" ? AngularMeasure::Manhattan
                                          : AngularMeasure::Isotropic;
  spec.engine = a.engine == "analytic" ? Engine::Analytic
                : a.engine == "mc"     ? Engine::MonteCarlo
                                       : Engine::Both;
  spec.grid = a.grid;
  return spec;
}

void print_summary(const RunReport& report) {
  std::printf("wrote %zu rows to %s (%.2f s)\n", report.rows.size(), report.csv_path.c_str(),
              report.wall_seconds);
}

std::string with_suffix(const std::string& path, const std::string& suffix) {
  const auto dot = path.rfind('.');
  if (dot == std::string::npos || path.find('/', dot) != std::string::npos) {
    return path + "." + suffix;
  }
  return path.substr(0, dot) + "." + suffix + path.substr(dot);
}

int cmd_distance(const CommonArgs& a, const std::string& dump_path) {
  NetworkConfig cfg = build_config(a);
  validate(cfg);
  const PalmScenario scenario = a.scenario == "vehicular"
                                    ? PalmScenario::TypicalVehicularUser
                                    : PalmScenario::TypicalPlanarUser;
  if (!dump_path.empty()) {
    const SimulationWindow w = SimulationWindow::tail_bounded(cfg);
    Philox rng(a.seed, 0);
    const Realization real = sample_realization(
        cfg, scenario,
        a.angular == "manhattan" ? AngularMeasure::Manhattan : AngularMeasure::Isotropic, w,
        rng);
    std::ofstream os(dump_path);
    if (!os) throw ConfigError("cannot open realization dump file: " + dump_path);
    write_realization_csv(os, real);
    std::printf("wrote realization snapshot (trial 0) to %s\n", dump_path.c_str());
  }
  std::vector<double> grid = a.grid;
  if (grid.empty()) {
    for (int i = 1; i <= 30; ++i) grid.push_back(0.02 * i);
  }
  const bool want_analytic = a.engine != "mc";
  const bool want_mc = a.engine != "analytic";
  if (a.angular == "manhattan" && want_analytic) {
    throw ConfigError("manhattan angular measure is simulation-only; use the mc engine");
  }

  DistanceStats stats;
  if (want_mc) {
    McOptions opts;
    opts.angular = a.angular == "manhattan" ? AngularMeasure::Manhattan
                                            : AngularMeasure::Isotropic;
    stats = estimate_nearest_distance_cdf(cfg, scenario, a.trials, a.seed, grid, opts);
  }

  std::vector<double> acdf(grid.size(), 0.0), aerr(grid.size(), 0.0);
  if (want_analytic) {
    analytic::QuadTolerances tol;
    double total = 0.0, total_err = 0.0, prev = 0.0;
    auto pdf = [&](double r) {
      const auto v = scenario == PalmScenario::TypicalPlanarUser
                         ? analytic::nearest_dist_pdf_planar_user(cfg, r, tol)
                         : analytic::nearest_dist_pdf_vehicular_user(cfg, r, tol);
      total_err = std::max(total_err, v.error_bound);
      return v.value;
    };
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto q = quad::integrate(pdf, prev > 0.0 ? prev : 1e-9, grid[i], tol.outer);
      total += q.value;
      acdf[i] = total;
      aerr[i] = (i > 0 ? aerr[i - 1] : 0.0) + q.abs_error + total_err * (grid[i] - prev);
      prev = grid[i];
    }
  }

  std::ofstream csv(a.out);
  if (!csv) throw ConfigError("cannot open output file: " + a.out);
  csv << "sweep,analytic,analytic_err,mc,mc_stderr,n_trials,z\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ComparisonRow row;
    row.sweep = grid[i];
    row.n_trials = want_mc ? a.trials : 0;
    if (want_analytic) {
      row.analytic = acdf[i];
      row.analytic_err = aerr[i];
    }
    if (want_mc) {
      row.mc = stats.cdf[i];
      row.mc_stderr = std::sqrt(stats.cdf[i] * (1.0 - stats.cdf[i]) /
                                static_cast<double>(a.trials));
      if (want_analytic) {
        const double denom = std::hypot(*row.mc_stderr, aerr[i]);
        if (denom > 0.0) row.z = std::abs(acdf[i] - stats.cdf[i]) / denom;
      }
    }
    csv << format_csv_row(row) << '\n' << std::flush;
  }

  nlohmann::json meta{{"name", "distance"},
                      {"scenario", a.scenario},
                      {"seed", a.seed},
                      {"n_trials", a.trials},
                      {"grid", grid}};
  if (want_mc) {
    meta["window_radius"] = stats.window_radius;
    meta["mean_nearest_km"] = {{"value", stats.mean_nearest.mean},
                               {"std_err", stats.mean_nearest.std_err}};
    meta["mean_nearest_planar_km"] = {{"value", stats.mean_nearest_planar.mean},
                                      {"std_err", stats.mean_nearest_planar.std_err}};
    meta["mean_nearest_vehicular_km"] = {{"value", stats.mean_nearest_vehicular.mean},
                                         {"std_err", stats.mean_nearest_vehicular.std_err}};
    meta["mean_planar_given_planar_km"] = {{"value", stats.mean_planar_given_planar.mean},
                                           {"std_err", stats.mean_planar_given_planar.std_err}};
    meta["mean_planar_given_vehicular_km"] = {
        {"value", stats.mean_planar_given_vehicular.mean},
        {"std_err", stats.mean_planar_given_vehicular.std_err}};
  }
  std::ofstream meta_os(a.out + ".meta.json");
  meta_os << meta.dump(2) << '\n';
  std::printf("wrote %zu rows to %s\n", grid.size(), a.out.c_str());
  return 0;
}

int cmd_figure(const std::string& which, CommonArgs a) {
  if (a.engine.empty()) a.engine = "analytic";
  auto tdb = default_tdb_grid();

  auto run_curve = [&](ExperimentSpec spec, const std::string& suffix) {
    spec.out_path = with_suffix(a.out, suffix);
    const RunReport r = run(spec);
    print_summary(r);
  };

  if (which == "fig3") {
    if (!a.lambda_l) {
      throw ConfigError(
          "fig3 requires --lambda-l (the per-curve road intensity is not fixed by the preset)");
    }
    CommonArgs b = a;
    if (!b.lambda_b) b.lambda_b = 10.0;
    ExperimentSpec spec = build_spec(b, "fig3");
    spec.scenario = PalmScenario::TypicalPlanarUser;
    spec.quantity = Quantity::AssocToVehicular;
    spec.sweep = SweepVar::MuB;
    if (spec.grid.empty()) {
      for (double s : {1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0}) {
        spec.grid.push_back(s / *a.lambda_l);  // spatial intensity 1..100 per km^2
      }
    }
    run_curve(spec, "lambda_l" + std::to_string(*a.lambda_l));
    return 0;
  }

  if (which == "fig5" || which == "fig6") {
    CommonArgs b = a;
    if (b.preset.empty()) b.preset = which == "fig5" ? "3gpp" : "equal";
    ExperimentSpec spec = build_spec(b, which);
    spec.scenario = which == "fig5" ? PalmScenario::TypicalPlanarUser
                                    : PalmScenario::TypicalVehicularUser;
    spec.sweep = SweepVar::ThresholdDb;
    if (spec.grid.empty()) spec.grid = tdb;
    spec.quantity = Quantity::CoverageToPlanar;
    run_curve(spec, "planar_bs");
    spec.quantity = Quantity::CoverageToVehicular;
    run_curve(spec, "vehicular_bs");
    return 0;
  }

  if (which.rfind("fig7-", 0) == 0) {
    const std::string link = which.substr(5);
    CommonArgs b = a;
    if (b.preset.empty()) b.preset = "3gpp";
    ExperimentSpec spec = build_spec(b, which);
    spec.sweep = SweepVar::ThresholdDb;
    if (spec.grid.empty()) spec.grid = tdb;
    spec.quantity = link == "v2v"   ? Quantity::LinkV2V
                    : link == "i2v" ? Quantity::LinkI2V
                    : link == "v2i" ? Quantity::LinkV2I
                                    : Quantity::LinkI2I;
    if (link == "i2v") {
      // sparse / normal / dense road-and-station mixes
      const std::vector<std::pair<double, double>> mixes{
          {2.5, 3.0}, {5.34, 6.15}, {10.0, 12.0}};
      for (const auto& [ll, lb] : mixes) {
        spec.base.lambda_l = ll;
        spec.base.lambda_b = lb;
        run_curve(spec, "ll" + std::to_string(ll));
      }
      return 0;
    }
    for (double mu : {5.0, 10.0, 15.0}) {
      spec.base.mu_b = mu;
      run_curve(spec, "mu" + std::to_string(static_cast<int>(mu)));
    }
    if (link == "v2v") {
      spec.base.mu_b = 5.0;
      for (double ll : {5.34, 7.55, 10.88}) {
        spec.base.lambda_l = ll;
        run_curve(spec, "ll" + std::to_string(ll));
      }
    }
    return 0;
  }
  throw ConfigError("unknown figure preset: " + which);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coxcell: coverage and association toolkit for cellular networks with "
               "planar and on-road base stations"};
  app.require_subcommand(1);

  CommonArgs assoc_args, dist_args, cov_args, links_args, fig_args, cmp_args;
  std::string assoc_sweep = "mu-b", cov_sweep = "t-db", cmp_sweep = "t-db";
  std::string assoc_event = "to-vehicular", cov_event = "total", cmp_event = "total";
  std::string link_name = "v2v", figure_name;

  auto* assoc = app.add_subcommand("assoc", "association probability sweep");
  add_common(assoc, assoc_args);
  assoc->add_option("--sweep", assoc_sweep, "sweep variable")
      ->check(CLI::IsMember({"mu-b", "lambda-b", "lambda-l", "t-db"}));
  assoc->add_option("--event", assoc_event, "association event")
      ->check(CLI::IsMember({"to-planar", "to-vehicular"}));

  auto* dist = app.add_subcommand("distance", "nearest-station distance distribution");
  add_common(dist, dist_args);
  std::string dump_path;
  dist->add_option("--dump-realization", dump_path,
                   "also write one sampled snapshot (trial 0) as CSV");

  auto* cov = app.add_subcommand("coverage", "coverage probability sweep");
  add_common(cov, cov_args);
  cov->add_option("--sweep", cov_sweep, "sweep variable")
      ->check(CLI::IsMember({"t-db", "mu-b", "lambda-b", "lambda-l"}));
  cov->add_option("--event", cov_event, "joint event")
      ->check(CLI::IsMember({"total", "to-planar", "to-vehicular"}));

  auto* links = app.add_subcommand("links", "conditional link-class coverage sweep");
  add_common(links, links_args, /*with_scenario=*/false);
  links->add_option("--link", link_name, "link class")
      ->check(CLI::IsMember({"v2v", "i2v", "v2i", "i2i"}));

  auto* fig = app.add_subcommand("figure", "bundled figure-data sweeps");
  fig->add_option("name", figure_name, "preset name")
      ->required()
      ->check(CLI::IsMember({"fig3", "fig5", "fig6", "fig7-v2v", "fig7-i2v", "fig7-v2i",
                             "fig7-i2i"}));
  fig_args.engine = "analytic";
  add_common(fig, fig_args);

  auto* cmp = app.add_subcommand("compare", "analytic vs Monte Carlo cross-validation");
  add_common(cmp, cmp_args);
  cmp->add_option("--sweep", cmp_sweep, "sweep variable")
      ->check(CLI::IsMember({"t-db", "mu-b", "lambda-b", "lambda-l"}));
  cmp->add_option("--event", cmp_event, "joint event")
      ->check(CLI::IsMember({"total", "to-planar", "to-vehicular"}));

  try {
    app.parse(argc, argv);

    auto sweep_of = [](const std::string& s) {
      return s == "t-db"      ? SweepVar::ThresholdDb
             : s == "mu-b"     ? SweepVar::MuB
             : s == "lambda-b" ? SweepVar::LambdaB
                               : SweepVar::LambdaL;
    };

    if (assoc->parsed()) {
      ExperimentSpec spec = build_spec(assoc_args, "assoc");
      spec.sweep = sweep_of(assoc_sweep);
      spec.quantity = assoc_event == "to-planar" ? Quantity::AssocToPlanar
                                                 : Quantity::AssocToVehicular;
      print_summary(run(spec));
      return 0;
    }
    if (dist->parsed()) return cmd_distance(dist_args, dump_path);
    if (cov->parsed()) {
      ExperimentSpec spec = build_spec(cov_args, "coverage");
      spec.sweep = sweep_of(cov_sweep);
      spec.quantity = cov_event == "to-planar"      ? Quantity::CoverageToPlanar
                      : cov_event == "to-vehicular" ? Quantity::CoverageToVehicular
                                                    : Quantity::CoverageTotal;
      if (spec.grid.empty() && spec.sweep == SweepVar::ThresholdDb) {
        spec.grid = default_tdb_grid();
      }
      print_summary(run(spec));
      return 0;
    }
    if (links->parsed()) {
      ExperimentSpec spec = build_spec(links_args, "links");
      spec.sweep = SweepVar::ThresholdDb;
      spec.quantity = link_name == "v2v"   ? Quantity::LinkV2V
                      : link_name == "i2v" ? Quantity::LinkI2V
                      : link_name == "v2i" ? Quantity::LinkV2I
                                           : Quantity::LinkI2I;
      if (spec.grid.empty()) spec.grid = default_tdb_grid();
      print_summary(run(spec));
      return 0;
    }
    if (fig->parsed()) return cmd_figure(figure_name, fig_args);
    if (cmp->parsed()) {
      ExperimentSpec spec = build_spec(cmp_args, "compare");
      spec.sweep = sweep_of(cmp_sweep);
      spec.quantity = cmp_event == "to-planar"      ? Quantity::CoverageToPlanar
                      : cmp_event == "to-vehicular" ? Quantity::CoverageToVehicular
                                                    : Quantity::CoverageTotal;
      if (spec.grid.empty() && spec.sweep == SweepVar::ThresholdDb) {
        spec.grid = default_tdb_grid();
      }
      const RunReport report = compare(spec);
      std::printf("max |z| = %.3f -> %s\n", report.max_abs_z,
                  report.pass ? "PASS" : "FAIL");
      print_summary(report);
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  } catch (const coxcell::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 3;
  } catch (const coxcell::quad::NonConvergence& e) {
    std::fprintf(stderr, "quadrature did not converge: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
