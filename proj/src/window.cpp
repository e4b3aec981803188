#include "coxcell/window.hpp"

#include <cmath>
#include <numbers>

namespace coxcell {

SimulationWindow SimulationWindow::fixed(double radius_km) {
  if (!(radius_km > 0.0)) throw ConfigError("window radius must be > 0");
  return SimulationWindow{radius_km, Guard::FixedRadius, 0.0};
}

double SimulationWindow::mean_interference_beyond(double lambda_tot, double alpha, double from) {
  return 2.0 * std::numbers::pi * lambda_tot * std::pow(from, 2.0 - alpha) / (alpha - 2.0);
}

SimulationWindow SimulationWindow::tail_bounded(const NetworkConfig& cfg, double epsilon) {
  validate(cfg);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("tail epsilon must be in (0,1)");
  const double lambda_tot = cfg.lambda_b + cfg.lambda_l * cfg.mu_b;
  if (!(lambda_tot > 0.0)) {
    throw ConfigError("tail-bounded window needs lambda_b + lambda_l*mu_b > 0");
  }
  const double r0 = 1.0 / (2.0 * std::sqrt(lambda_tot));
  double radius = r0 * std::pow(epsilon, -1.0 / (cfg.alpha - 2.0));
  radius *= 1.0 + 1e-9;  // strict inequality under exact arithmetic too
  if (!(mean_interference_beyond(lambda_tot, cfg.alpha, radius) <
        epsilon * mean_interference_beyond(lambda_tot, cfg.alpha, r0))) {
    throw std::logic_error("tail bound violated at construction");
  }
  return SimulationWindow{radius, Guard::TailBounded, epsilon};
}

}  // namespace coxcell
