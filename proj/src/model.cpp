#include "coxcell/model.hpp"

namespace coxcell {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

NetworkConfig validate(const NetworkConfig& cfg) {
  require(std::isfinite(cfg.lambda_b) && cfg.lambda_b >= 0.0, "lambda_b must be >= 0");
  require(std::isfinite(cfg.lambda_u) && cfg.lambda_u >= 0.0, "lambda_u must be >= 0");
  require(std::isfinite(cfg.lambda_l) && cfg.lambda_l >= 0.0, "lambda_l must be >= 0");
  require(std::isfinite(cfg.mu_b) && cfg.mu_b >= 0.0, "mu_b must be >= 0");
  require(std::isfinite(cfg.mu_u) && cfg.mu_u >= 0.0, "mu_u must be >= 0");
  require(std::isfinite(cfg.alpha) && cfg.alpha > 2.0, "alpha must exceed 2");
  require(std::isfinite(cfg.tx_power) && cfg.tx_power > 0.0, "tx_power must be > 0");
  require(std::isfinite(cfg.threshold) && cfg.threshold > 0.0, "threshold must be > 0");
  return cfg;
}

CoxPoint line_point(const LineParams& line, double t) {
  const double c = std::cos(line.theta);
  const double s = std::sin(line.theta);
  // foot point r*(-s,c); direction (c,s)
  return CoxPoint{line, t, Vec2{t * c - line.r * s, t * s + line.r * c}};
}

}  // namespace coxcell
