#include "coxcell/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace coxcell {

namespace {

const char* kCsvHeader = "sweep,analytic,analytic_err,mc,mc_stderr,n_trials,z";
const char* kVersion = "1.0.0";

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

bool is_link(Quantity q) {
  return q == Quantity::LinkV2V || q == Quantity::LinkI2V || q == Quantity::LinkV2I ||
         q == Quantity::LinkI2I;
}

bool is_coverage(Quantity q) {
  return q == Quantity::CoverageTotal || q == Quantity::CoverageToPlanar ||
         q == Quantity::CoverageToVehicular || is_link(q);
}

PalmScenario scenario_of(const ExperimentSpec& spec) {
  switch (spec.quantity) {
    case Quantity::LinkV2V:
    case Quantity::LinkI2V:
      return PalmScenario::TypicalVehicularUser;
    case Quantity::LinkV2I:
    case Quantity::LinkI2I:
      return PalmScenario::TypicalPlanarUser;
    default:
      return spec.scenario;
  }
}

NetworkConfig apply_sweep(NetworkConfig cfg, SweepVar var, double x) {
  switch (var) {
    case SweepVar::ThresholdDb:
      cfg.threshold = db_to_linear(x);
      break;
    case SweepVar::MuB:
      cfg.mu_b = x;
      break;
    case SweepVar::LambdaB:
      cfg.lambda_b = x;
      break;
    case SweepVar::LambdaL:
      cfg.lambda_l = x;
      break;
  }
  return cfg;
}

std::pair<double, double> analytic_point(const NetworkConfig& cfg, Quantity q,
                                         PalmScenario scenario,
                                         const analytic::QuadTolerances& tol) {
  using namespace analytic;
  const bool planar_user = scenario == PalmScenario::TypicalPlanarUser;
  switch (q) {
    case Quantity::AssocToPlanar: {
      const auto a = planar_user ? assoc_planar_user(cfg, tol) : assoc_vehicular_user(cfg, tol);
      return {a.to_planar.value, a.to_planar.error_bound};
    }
    case Quantity::AssocToVehicular: {
      const auto a = planar_user ? assoc_planar_user(cfg, tol) : assoc_vehicular_user(cfg, tol);
      return {a.to_vehicular.value, a.to_vehicular.error_bound};
    }
    case Quantity::CoverageToPlanar: {
      const auto v = planar_user ? cov_planar_user_planar_bs(cfg, tol)
                                 : cov_vehicular_user_planar_bs(cfg, tol);
      return {v.value, v.error_bound};
    }
    case Quantity::CoverageToVehicular: {
      const auto v = planar_user ? cov_planar_user_vehicular_bs(cfg, tol)
                                 : cov_vehicular_user_vehicular_bs(cfg, tol).total;
      return {v.value, v.error_bound};
    }
    case Quantity::CoverageTotal: {
      if (planar_user) {
        const auto a = cov_planar_user_planar_bs(cfg, tol);
        const auto b = cov_planar_user_vehicular_bs(cfg, tol);
        return {a.value + b.value, a.error_bound + b.error_bound};
      }
      const auto a = cov_vehicular_user_planar_bs(cfg, tol);
      const auto b = cov_vehicular_user_vehicular_bs(cfg, tol).total;
      return {a.value + b.value, a.error_bound + b.error_bound};
    }
    case Quantity::LinkV2V: {
      const auto v = link_coverage(cfg, LinkType::V2V, tol);
      return {v.value, v.error_bound};
    }
    case Quantity::LinkI2V: {
      const auto v = link_coverage(cfg, LinkType::I2V, tol);
      return {v.value, v.error_bound};
    }
    case Quantity::LinkV2I: {
      const auto v = link_coverage(cfg, LinkType::V2I, tol);
      return {v.value, v.error_bound};
    }
    case Quantity::LinkI2I: {
      const auto v = link_coverage(cfg, LinkType::I2I, tol);
      return {v.value, v.error_bound};
    }
  }
  throw std::logic_error("unreachable");
}

EstimateWithCI conditional_from(const EstimateWithCI& joint, const EstimateWithCI& marginal,
                                long n) {
  const long m = std::lround(marginal.value * static_cast<double>(n));
  if (m <= 0) {
    throw analytic::DegenerateConditioning("conditioning event never occurred in the sample");
  }
  const long k = std::lround(joint.value * static_cast<double>(n));
  return bernoulli_estimate(k, m);
}

EstimateWithCI mc_pick(const CoverageEstimate& cov, Quantity q, long n) {
  switch (q) {
    case Quantity::CoverageTotal:
      return cov.total;
    case Quantity::CoverageToPlanar:
      return cov.to_planar;
    case Quantity::CoverageToVehicular:
      return cov.to_vehicular;
    case Quantity::LinkV2V:
    case Quantity::LinkV2I:
      return conditional_from(cov.to_vehicular, cov.assoc_to_vehicular, n);
    case Quantity::LinkI2V:
    case Quantity::LinkI2I:
      return conditional_from(cov.to_planar, cov.assoc_to_planar, n);
    default:
      throw std::logic_error("mc_pick: not a coverage quantity");
  }
}

EstimateWithCI mc_point(const NetworkConfig& cfg, const ExperimentSpec& spec,
                        PalmScenario scenario) {
  McOptions opts;
  opts.angular = spec.angular;
  opts.threads = 1;  // grid points already run concurrently
  if (is_coverage(spec.quantity)) {
    return mc_pick(estimate_coverage(cfg, scenario, spec.n_trials, spec.seed, opts),
                   spec.quantity, spec.n_trials);
  }
  const auto assoc = estimate_association(cfg, scenario, spec.n_trials, spec.seed, opts);
  return spec.quantity == Quantity::AssocToPlanar ? assoc.to_planar : assoc.to_vehicular;
}

void check_spec(const ExperimentSpec& spec) {
  if (spec.grid.empty()) throw ConfigError("sweep grid must be nonempty");
  if (!std::is_sorted(spec.grid.begin(), spec.grid.end())) {
    throw ConfigError("sweep grid must be sorted ascending");
  }
  if (spec.angular == AngularMeasure::Manhattan && spec.engine != Engine::MonteCarlo) {
    throw ConfigError("manhattan angular measure is simulation-only; use the mc engine");
  }
  if (spec.n_trials < 1) throw ConfigError("n_trials must be >= 1");
  validate(spec.base);
}

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::Analytic:
      return "analytic";
    case Engine::MonteCarlo:
      return "mc";
    case Engine::Both:
      return "both";
  }
  return "?";
}

const char* sweep_name(SweepVar s) {
  switch (s) {
    case SweepVar::ThresholdDb:
      return "t_db";
    case SweepVar::MuB:
      return "mu_b";
    case SweepVar::LambdaB:
      return "lambda_b";
    case SweepVar::LambdaL:
      return "lambda_l";
  }
  return "?";
}

const char* quantity_name(Quantity q) {
  switch (q) {
    case Quantity::AssocToPlanar:
      return "assoc_to_planar";
    case Quantity::AssocToVehicular:
      return "assoc_to_vehicular";
    case Quantity::CoverageTotal:
      return "coverage_total";
    case Quantity::CoverageToPlanar:
      return "coverage_to_planar";
    case Quantity::CoverageToVehicular:
      return "coverage_to_vehicular";
    case Quantity::LinkV2V:
      return "link_v2v";
    case Quantity::LinkI2V:
      return "link_i2v";
    case Quantity::LinkV2I:
      return "link_v2i";
    case Quantity::LinkI2I:
      return "link_i2i";
  }
  return "?";
}

nlohmann::json config_json(const NetworkConfig& c) {
  return {{"lambda_b", c.lambda_b}, {"lambda_u", c.lambda_u}, {"lambda_l", c.lambda_l},
          {"mu_b", c.mu_b},         {"mu_u", c.mu_u},         {"alpha", c.alpha},
          {"tx_power", c.tx_power}, {"threshold", c.threshold}};
}

}  // namespace

std::string format_csv_row(const ComparisonRow& row) {
  std::string out = fmt(row.sweep);
  auto push = [&out](const std::optional<double>& v) {
    out += ',';
    if (v) out += fmt(*v);
  };
  push(row.analytic);
  push(row.analytic_err);
  push(row.mc);
  push(row.mc_stderr);
  out += ',' + std::to_string(row.n_trials);
  push(row.z);
  return out;
}

RunReport run(const ExperimentSpec& spec) {
  check_spec(spec);
  const auto t_start = std::chrono::steady_clock::now();
  const PalmScenario scenario = scenario_of(spec);
  const bool want_analytic = spec.engine != Engine::MonteCarlo;
  const bool want_mc = spec.engine != Engine::Analytic;
  const std::size_t n = spec.grid.size();

  std::vector<NetworkConfig> cfgs;
  cfgs.reserve(n);
  for (double x : spec.grid) cfgs.push_back(validate(apply_sweep(spec.base, spec.sweep, x)));

  std::vector<ComparisonRow> rows(n);
  std::vector<std::exception_ptr> errors(n);

  // A threshold sweep of a coverage quantity shares one set of realizations
  // across the whole grid; everything else is estimated point by point.
  std::vector<EstimateWithCI> shared_mc;
  const bool shared_pass =
      want_mc && spec.sweep == SweepVar::ThresholdDb && is_coverage(spec.quantity);
  if (shared_pass) {
    std::vector<double> thresholds;
    thresholds.reserve(n);
    for (double x : spec.grid) thresholds.push_back(db_to_linear(x));
    McOptions opts;
    opts.angular = spec.angular;
    opts.threads = spec.threads;
    const auto grid_est = estimate_coverage_grid(spec.base, scenario, thresholds, spec.n_trials,
                                                 spec.seed, opts);
    shared_mc.reserve(n);
    for (const auto& cov : grid_est) shared_mc.push_back(mc_pick(cov, spec.quantity,
                                                                 spec.n_trials));
  }

  {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          ComparisonRow& row = rows[i];
          row.sweep = spec.grid[i];
          row.n_trials = want_mc ? spec.n_trials : 0;
          if (want_analytic) {
            const auto [v, e] = analytic_point(cfgs[i], spec.quantity, scenario,
                                               spec.tolerances);
            row.analytic = v;
            row.analytic_err = e;
          }
          if (want_mc) {
            const EstimateWithCI est =
                shared_pass ? shared_mc[i] : mc_point(cfgs[i], spec, scenario);
            row.mc = est.value;
            row.mc_stderr = est.std_err;
            row.n_trials = est.n_trials;
          }
          if (row.analytic && row.mc) {
            const double denom =
                std::hypot(row.mc_stderr.value_or(0.0), row.analytic_err.value_or(0.0));
            const double diff = std::abs(*row.analytic - *row.mc);
            row.z = denom > 0.0 ? diff / denom
                                : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
          }
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    const int workers = std::max(1, std::min<int>(effective_threads(spec.threads),
                                                  static_cast<int>(n)));
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  RunReport report;
  report.csv_path = spec.out_path;
  std::ofstream csv;
  if (!spec.out_path.empty()) {
    csv.open(spec.out_path);
    if (!csv) throw ConfigError("cannot open output file: " + spec.out_path);
    csv << kCsvHeader << '\n' << std::flush;
  }
  // Rows go out in grid order; a failed point surfaces after the rows before
  // it have been flushed.
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    report.rows.push_back(rows[i]);
    if (csv.is_open()) csv << format_csv_row(rows[i]) << '\n' << std::flush;
  }

  report.max_abs_z = 0.0;
  for (const auto& row : report.rows) {
    if (row.z) report.max_abs_z = std::max(report.max_abs_z, *row.z);
  }
  report.pass = report.max_abs_z <= 4.0;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (!spec.out_path.empty()) {
    report.meta_path = spec.out_path + ".meta.json";
    nlohmann::json meta{
        {"name", spec.name},
        {"engine", engine_name(spec.engine)},
        {"scenario",
         scenario == PalmScenario::TypicalPlanarUser ? "planar" : "vehicular"},
        {"quantity", quantity_name(spec.quantity)},
        {"sweep", sweep_name(spec.sweep)},
        {"grid", spec.grid},
        {"config", config_json(spec.base)},
        {"angular", spec.angular == AngularMeasure::Isotropic ? "isotropic" : "manhattan"},
        {"n_trials", spec.n_trials},
        {"seed", spec.seed},
        {"threads", spec.threads},
        {"versions", {{"coxcell", kVersion}}},
        {"wall_time_s", report.wall_seconds},
        {"max_abs_z", report.max_abs_z},
        {"rows_written", report.rows.size()}};
    std::ofstream meta_os(report.meta_path);
    if (!meta_os) throw ConfigError("cannot open sidecar file: " + report.meta_path);
    meta_os << meta.dump(2) << '\n';
  }
  return report;
}

RunReport compare(ExperimentSpec spec) {
  spec.engine = Engine::Both;
  return run(spec);
}

NetworkConfig load_config(std::istream& is, NetworkConfig base) {
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\n");
      const auto e = s.find_last_not_of(" \t\r\n");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val_str = trim(line.substr(eq + 1));
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(val_str, &used);
      if (used != val_str.size()) throw std::invalid_argument(val_str);
    } catch (const std::exception&) {
      throw ConfigError("config line " + std::to_string(line_no) + ": bad number '" + val_str +
                        "'");
    }
    if (key == "lambda_b") base.lambda_b = value;
    else if (key == "lambda_u") base.lambda_u = value;
    else if (key == "lambda_l") base.lambda_l = value;
    else if (key == "mu_b") base.mu_b = value;
    else if (key == "mu_u") base.mu_u = value;
    else if (key == "alpha") base.alpha = value;
    else if (key == "tx_power") base.tx_power = value;
    else if (key == "threshold_db") base.threshold = db_to_linear(value);
    else throw ConfigError("config line " + std::to_string(line_no) + ": unknown key '" + key +
                           "'");
  }
  return base;
}

NetworkConfig preset_3gpp_urban() {
  NetworkConfig cfg;
  cfg.lambda_b = 6.15;
  cfg.lambda_l = 5.34;
  cfg.mu_b = 5.0;
  cfg.lambda_u = 6.15;
  cfg.mu_u = 5.0;
  cfg.alpha = 4.0;
  return cfg;
}

NetworkConfig preset_equal_intensity() {
  NetworkConfig cfg;
  cfg.lambda_b = 25.0;
  cfg.lambda_l = 5.0;
  cfg.mu_b = 5.0;
  cfg.lambda_u = 25.0;
  cfg.mu_u = 5.0;
  cfg.alpha = 4.0;
  return cfg;
}

std::vector<double> default_tdb_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 13; ++i) grid.push_back(-10.0 + 2.5 * i);
  return grid;
}

}  // namespace coxcell
