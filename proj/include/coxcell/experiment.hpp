#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "coxcell/analytic.hpp"
#include "coxcell/model.hpp"
#include "coxcell/montecarlo.hpp"

namespace coxcell {

enum class Engine { Analytic, MonteCarlo, Both };
enum class SweepVar { ThresholdDb, MuB, LambdaB, LambdaL };

/// What a sweep evaluates at each grid point.
enum class Quantity {
  AssocToPlanar,
  AssocToVehicular,
  CoverageTotal,       // per-scenario total coverage
  CoverageToPlanar,    // joint coverage with a planar serving station
  CoverageToVehicular, // joint coverage with a vehicular serving station
  LinkV2V,
  LinkI2V,
  LinkV2I,
  LinkI2I,
};

/// A reproducible sweep: one variable, one grid, fixed everything else.
struct ExperimentSpec {
  std::string name = "experiment";
  Engine engine = Engine::Both;
  PalmScenario scenario = PalmScenario::TypicalPlanarUser;
  Quantity quantity = Quantity::CoverageTotal;
  SweepVar sweep = SweepVar::ThresholdDb;
  std::vector<double> grid;  // sweep values; dB for ThresholdDb
  NetworkConfig base;
  AngularMeasure angular = AngularMeasure::Isotropic;
  analytic::QuadTolerances tolerances;
  long n_trials = 100000;
  std::uint64_t seed = 1;
  std::string out_path;  // CSV path; sidecar written next to it as .meta.json
  int threads = 0;
};

/// One grid point of an engine comparison. z = |a-m|/sqrt(se_m^2+err_a^2).
struct ComparisonRow {
  double sweep = 0.0;
  std::optional<double> analytic;
  std::optional<double> analytic_err;
  std::optional<double> mc;
  std::optional<double> mc_stderr;
  long n_trials = 0;
  std::optional<double> z;
};

struct RunReport {
  std::vector<ComparisonRow> rows;
  double max_abs_z = 0.0;  // over rows with a defined z
  bool pass = true;        // max |z| <= 4
  std::string csv_path;
  std::string meta_path;
  double wall_seconds = 0.0;
};

/// Executes the sweep; writes the CSV (header
/// `sweep,analytic,analytic_err,mc,mc_stderr,n_trials,z`, rows flushed as
/// they complete) and the JSON metadata sidecar.
RunReport run(const ExperimentSpec& spec);

/// run() with engine forced to Both plus the PASS/FAIL summary semantics.
RunReport compare(ExperimentSpec spec);

/// Flat key=value config file: lambda_b, lambda_u, lambda_l, mu_b, mu_u,
/// alpha, tx_power, threshold_db. '#' starts a comment. Unknown keys reject.
NetworkConfig load_config(std::istream& is, NetworkConfig base = {});

/// Named parameter presets used by the bundled figure sweeps.
NetworkConfig preset_3gpp_urban();       // lambda_l 5.34, lambda_b 6.15, mu_b 5
NetworkConfig preset_equal_intensity();  // lambda_l 5, mu_b 5, lambda_b 25

/// 13-point threshold grid, -10..20 dB in 2.5 dB steps.
std::vector<double> default_tdb_grid();

std::string format_csv_row(const ComparisonRow& row);

}  // namespace coxcell
