#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "coxcell/model.hpp"
#include "coxcell/rng.hpp"
#include "coxcell/sampling.hpp"
#include "coxcell/window.hpp"

#include "json.hpp"

namespace coxcell {

/// Realization stayed empty of base stations after the configured number of
/// resampling attempts; the intensities are too small for the window.
class EmptyRealization : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of a single network snapshot seen from the typical user.
struct TrialOutcome {
  double nearest_dist = 0.0;                 // km, to the serving station
  AssociationEvent association = AssociationEvent::ToPlanar;
  std::optional<bool> same_line;             // serving station on the user's own road
                                             // (vehicular scenario, ToVehicular only)
  double sir = 0.0;                          // +inf when there are no interferers
  std::optional<double> nearest_planar;      // km, per-class nearest (when the class
  std::optional<double> nearest_vehicular;   //  is non-empty in the window)
};

/// Bernoulli estimate with its standard error sqrt(p(1-p)/n).
struct EstimateWithCI {
  double value = 0.0;
  double std_err = 0.0;
  long n_trials = 0;
};

EstimateWithCI bernoulli_estimate(long count, long n);

/// Sample mean with standard error of the mean.
struct MeanWithCI {
  double mean = 0.0;
  double std_err = 0.0;
  long n = 0;
};

struct McOptions {
  AngularMeasure angular = AngularMeasure::Isotropic;
  std::optional<SimulationWindow> window;  // default: tail-bounded, epsilon 1e-3
  int max_resample = 100;
  int threads = 0;  // 0 = COXCELL_THREADS env var, else hardware concurrency
};

/// Deterministic-fading evaluation of a snapshot: fading[i] is the power fade
/// of station i in storage order (planar stations first, then vehicular).
/// Exposed for tests; run_trial draws i.i.d. Exp(1) fades.
TrialOutcome evaluate_with_fading(const Realization& real, double alpha,
                                  std::span<const double> fading);

/// Samples one snapshot (resampling while it holds no stations, up to
/// max_resample attempts) and evaluates the SIR of the typical user at the
/// origin against its nearest station.
TrialOutcome run_trial(const NetworkConfig& cfg, PalmScenario scenario,
                       const SimulationWindow& window, Philox& rng,
                       AngularMeasure angular = AngularMeasure::Isotropic,
                       int max_resample = 100);

struct AssociationEstimate {
  EstimateWithCI to_planar;
  EstimateWithCI to_vehicular;  // complement: the two values sum to 1 exactly
  double window_radius = 0.0;
};

AssociationEstimate estimate_association(const NetworkConfig& cfg, PalmScenario scenario,
                                         long n_trials, std::uint64_t seed,
                                         const McOptions& opts = {});

/// Joint coverage estimates P(SIR > T, event) for one threshold.
/// same_line/other_line are present only for the vehicular scenario.
/// Association marginals come from the same trials, so every joint count is
/// a subset of its marginal count by construction.
struct CoverageEstimate {
  double threshold = 0.0;  // linear
  EstimateWithCI to_planar;
  EstimateWithCI to_vehicular;
  std::optional<EstimateWithCI> to_vehicular_same_line;
  std::optional<EstimateWithCI> to_vehicular_other_line;
  EstimateWithCI total;  // sum of the joint counts
  EstimateWithCI assoc_to_planar;
  EstimateWithCI assoc_to_vehicular;
  double window_radius = 0.0;
};

CoverageEstimate estimate_coverage(const NetworkConfig& cfg, PalmScenario scenario, long n_trials,
                                   std::uint64_t seed, const McOptions& opts = {});

/// One pass over shared realizations evaluating a whole threshold grid; entry
/// k matches estimate_coverage with cfg.threshold = thresholds[k] and the
/// same seed.
std::vector<CoverageEstimate> estimate_coverage_grid(const NetworkConfig& cfg,
                                                     PalmScenario scenario,
                                                     std::span<const double> thresholds,
                                                     long n_trials, std::uint64_t seed,
                                                     const McOptions& opts = {});

/// Nearest-distance statistics of the typical user.
struct DistanceStats {
  std::vector<double> grid;  // radii, km
  std::vector<double> cdf;   // empirical CDF of the serving distance on grid
  MeanWithCI mean_nearest;
  MeanWithCI mean_nearest_planar;        // unconditional per-class means
  MeanWithCI mean_nearest_vehicular;
  MeanWithCI mean_planar_given_planar;   // nearest planar distance conditioned
  MeanWithCI mean_planar_given_vehicular;  // on the association event
  double window_radius = 0.0;
};

DistanceStats estimate_nearest_distance_cdf(const NetworkConfig& cfg, PalmScenario scenario,
                                            long n_trials, std::uint64_t seed,
                                            std::span<const double> grid,
                                            const McOptions& opts = {});

/// Coverage of the typical user of either type: scenario estimates combined
/// with weights lambda_u and lambda_l*mu_u. Requires lambda_u+lambda_l*mu_u>0.
EstimateWithCI estimate_mixture_coverage(const NetworkConfig& cfg, long n_trials,
                                         std::uint64_t seed, const McOptions& opts = {});

/// JSON record for one estimate, the module's export format.
nlohmann::json estimate_record(PalmScenario scenario, const NetworkConfig& cfg,
                               std::string_view event, const EstimateWithCI& est,
                               std::uint64_t seed, double window_radius);

/// Effective thread count: explicit > 0 wins, else COXCELL_THREADS, else
/// hardware concurrency.
int effective_threads(int requested);

}  // namespace coxcell
