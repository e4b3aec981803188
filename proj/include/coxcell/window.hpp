#pragma once

#include "coxcell/model.hpp"

namespace coxcell {

/// Finite sampling window: the ball B(0, radius).
///
/// Under the TailBounded policy the radius is solved from the Campbell
/// mean-interference bound: with total station intensity
/// lambda_tot = lambda_b + lambda_l*mu_b the expected interference from radii
/// beyond R is 2*pi*lambda_tot*R^(2-alpha)/(alpha-2); the policy requires it
/// to be less than epsilon times the same integral taken from the
/// nearest-station distance scale r0 = 1/(2 sqrt(lambda_tot)), i.e.
/// (R/r0)^(2-alpha) < epsilon.
struct SimulationWindow {
  enum class Guard { FixedRadius, TailBounded };

  double radius = 1.0;  // km
  Guard guard = Guard::FixedRadius;
  double epsilon = 0.0;  // tail fraction; meaningful under TailBounded

  static SimulationWindow fixed(double radius_km);
  static SimulationWindow tail_bounded(const NetworkConfig& cfg, double epsilon = 1e-3);

  /// Campbell tail integral 2*pi*lambda_tot*R^(2-alpha)/(alpha-2) from `from`.
  static double mean_interference_beyond(double lambda_tot, double alpha, double from);
};

}  // namespace coxcell
