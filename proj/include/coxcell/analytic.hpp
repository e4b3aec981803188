#pragma once

#include <stdexcept>

#include "coxcell/model.hpp"
#include "coxcell/quadrature.hpp"

namespace coxcell::analytic {

/// A probability or density together with its propagated quadrature error.
struct AnalyticValue {
  double value = 0.0;
  double error_bound = 0.0;
};

/// Per-level quadrature tolerances for the nested integrals: outer radial
/// integral, middle line/angle integrals, innermost interference kernels.
struct QuadTolerances {
  quad::Options outer{1e-6, 1e-12, 4000};
  quad::Options middle{1e-7, 1e-13, 4000};
  quad::Options inner{1e-8, 1e-14, 4000};
};

/// The conditioning association event has probability below the floor.
class DegenerateConditioning : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AssociationSplit {
  AnalyticValue to_planar;
  AnalyticValue to_vehicular;  // computed as the complement, never integrated
                               // separately, so the two sum to 1 exactly
};

/// Association probabilities of the typical planar user.
AssociationSplit assoc_planar_user(const NetworkConfig& cfg, const QuadTolerances& tol = {});

/// Association probabilities of the typical vehicular user (extra void factor
/// from the user's own road).
AssociationSplit assoc_vehicular_user(const NetworkConfig& cfg, const QuadTolerances& tol = {});

/// Direct integral of the probability that a vehicular station is the nearest
/// one for the typical planar user. Independent route used by the identity
/// tests against 1 - assoc_planar_user().to_planar.
AnalyticValue assoc_planar_user_to_vehicular_direct(const NetworkConfig& cfg,
                                                    const QuadTolerances& tol = {});

/// Density (1/km) of the distance from the typical planar user to the
/// nearest station of either class.
AnalyticValue nearest_dist_pdf_planar_user(const NetworkConfig& cfg, double r,
                                           const QuadTolerances& tol = {});

/// Same under the vehicular-user conditioning (three-term density with the
/// origin-road void factors).
AnalyticValue nearest_dist_pdf_vehicular_user(const NetworkConfig& cfg, double r,
                                              const QuadTolerances& tol = {});

/// Joint probabilities P(SIR > T, serving class) for the typical planar user.
AnalyticValue cov_planar_user_planar_bs(const NetworkConfig& cfg, const QuadTolerances& tol = {});
AnalyticValue cov_planar_user_vehicular_bs(const NetworkConfig& cfg,
                                           const QuadTolerances& tol = {});

/// Same quantity as cov_planar_user_vehicular_bs along the alternative
/// derivation: a plane integral of three factors (planar Laplace/void,
/// line-process generating functional, origin-line angle average) reduced to
/// polar coordinates. Kept as an independent composition for cross-checks.
AnalyticValue cov_planar_user_vehicular_bs_alt(const NetworkConfig& cfg,
                                                    const QuadTolerances& tol = {});

/// Joint coverage of the typical vehicular user by a planar station.
AnalyticValue cov_vehicular_user_planar_bs(const NetworkConfig& cfg,
                                           const QuadTolerances& tol = {});

struct VehicularCoverageSplit {
  AnalyticValue same_line;   // serving vehicular station on the user's road
  AnalyticValue other_line;  // serving vehicular station on another road
  AnalyticValue total;
};

/// Joint coverage of the typical vehicular user by a vehicular station,
/// split by whether the serving station shares the user's road.
VehicularCoverageSplit cov_vehicular_user_vehicular_bs(const NetworkConfig& cfg,
                                                       const QuadTolerances& tol = {});

/// Coverage of the typical user of either type: the four joint coverages
/// combined with weights lambda_u and lambda_l*mu_u.
AnalyticValue total_coverage(const NetworkConfig& cfg, const QuadTolerances& tol = {});

enum class LinkType { V2V, I2V, V2I, I2I };

/// Conditional coverage of one link class: joint coverage divided by the
/// association probability of the serving class under the matching user
/// conditioning. Throws DegenerateConditioning when that probability is
/// below 1e-12.
AnalyticValue link_coverage(const NetworkConfig& cfg, LinkType link,
                            const QuadTolerances& tol = {});

}  // namespace coxcell::analytic
