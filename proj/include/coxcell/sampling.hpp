#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "coxcell/model.hpp"
#include "coxcell/rng.hpp"
#include "coxcell/window.hpp"

namespace coxcell {

/// Angular measure of the line process: uniform on [0, pi), or concentrated
/// on {0, pi/2} with equal mass (grid-like road layouts). The Manhattan
/// variant is simulation-only.
enum class AngularMeasure { Isotropic, Manhattan };

/// One sampled snapshot of the network inside the window ball.
/// When origin_line is present (typical vehicular user), its stations are
/// stored as the trailing origin_bs_count entries of vehicular_bs.
struct Realization {
  std::vector<LineParams> lines;
  std::vector<CoxPoint> vehicular_bs;
  std::vector<Vec2> planar_bs;
  std::optional<LineParams> origin_line;
  std::size_t origin_bs_count = 0;
  std::uint64_t rng_seed = 0;
};

/// Homogeneous planar PPP restricted to the window ball: Poisson count with
/// mean intensity*pi*R^2, positions i.i.d. uniform in the ball.
std::vector<Vec2> sample_planar_ppp(double intensity, const SimulationWindow& window, Philox& rng);

/// Lines hitting the window ball: count ~ Poisson(lambda_l * 2R), offsets r
/// uniform on [-R, R], angles drawn from the angular measure.
std::vector<LineParams> sample_line_process(double lambda_l, AngularMeasure angular,
                                            const SimulationWindow& window, Philox& rng);

/// Conditionally on the lines, an independent 1-D PPP of intensity mu on each
/// line's chord through the window ball.
std::vector<CoxPoint> sample_cox_on_lines(std::span<const LineParams> lines, double mu,
                                          const SimulationWindow& window, Philox& rng);

/// Full network snapshot under the Palm conditioning of the chosen typical
/// user. A typical planar user changes nothing (Slivnyak); a typical
/// vehicular user adds a line through the origin carrying an independent
/// PPP(mu_b) of stations.
Realization sample_realization(const NetworkConfig& cfg, PalmScenario scenario,
                               AngularMeasure angular, const SimulationWindow& window,
                               Philox& rng);

/// CSV dump for visual inspection: kind in {line,vbs,pbs}, r, theta, t, x, y.
void write_realization_csv(std::ostream& os, const Realization& real);

}  // namespace coxcell
