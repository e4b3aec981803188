#include "coxcell/sampling.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <random>

namespace coxcell {

namespace {

constexpr double kPi = std::numbers::pi;

long poisson_count(double mean, Philox& rng) {
  if (!(mean > 0.0)) return 0;
  std::poisson_distribution<long> dist(mean);
  return dist(rng);
}

}  // namespace

std::vector<Vec2> sample_planar_ppp(double intensity, const SimulationWindow& window,
                                    Philox& rng) {
  const double R = window.radius;
  const long n = poisson_count(intensity * kPi * R * R, rng);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double r = R * std::sqrt(rng.uniform01());
    const double phi = rng.uniform(0.0, 2.0 * kPi);
    pts.push_back(Vec2{r * std::cos(phi), r * std::sin(phi)});
  }
  return pts;
}

std::vector<LineParams> sample_line_process(double lambda_l, AngularMeasure angular,
                                            const SimulationWindow& window, Philox& rng) {
  const double R = window.radius;
  const long n = poisson_count(lambda_l * 2.0 * R, rng);
  std::vector<LineParams> lines;
  lines.reserve(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const double r = rng.uniform(-R, R);
    const double theta = angular == AngularMeasure::Isotropic
                             ? rng.uniform(0.0, kPi)
                             : (rng.uniform01() < 0.5 ? 0.0 : kPi / 2.0);
    lines.push_back(LineParams{r, theta});
  }
  return lines;
}

std::vector<CoxPoint> sample_cox_on_lines(std::span<const LineParams> lines, double mu,
                                          const SimulationWindow& window, Philox& rng) {
  const double R = window.radius;
  std::vector<CoxPoint> pts;
  for (const LineParams& line : lines) {
    const double chord2 = R * R - line.r * line.r;
    if (chord2 <= 0.0) continue;  // line misses the window ball
    const double h = std::sqrt(chord2);
    const long n = poisson_count(mu * 2.0 * h, rng);
    for (long i = 0; i < n; ++i) {
      pts.push_back(line_point(line, rng.uniform(-h, h)));
    }
  }
  return pts;
}

Realization sample_realization(const NetworkConfig& cfg, PalmScenario scenario,
                               AngularMeasure angular, const SimulationWindow& window,
                               Philox& rng) {
  Realization real;
  real.lines = sample_line_process(cfg.lambda_l, angular, window, rng);
  real.vehicular_bs = sample_cox_on_lines(real.lines, cfg.mu_b, window, rng);
  real.planar_bs = sample_planar_ppp(cfg.lambda_b, window, rng);
  if (scenario == PalmScenario::TypicalVehicularUser) {
    const double theta = angular == AngularMeasure::Isotropic
                             ? rng.uniform(0.0, kPi)
                             : (rng.uniform01() < 0.5 ? 0.0 : kPi / 2.0);
    const LineParams l0{0.0, theta};
    real.origin_line = l0;
    const std::vector<CoxPoint> own =
        sample_cox_on_lines(std::span<const LineParams>(&l0, 1), cfg.mu_b, window, rng);
    real.origin_bs_count = own.size();
    real.vehicular_bs.insert(real.vehicular_bs.end(), own.begin(), own.end());
  }
  return real;
}

void write_realization_csv(std::ostream& os, const Realization& real) {
  os << "kind,r,theta,t,x,y\n";
  for (const LineParams& l : real.lines) {
    os << "line," << l.r << ',' << l.theta << ",,,\n";
  }
  if (real.origin_line) {
    os << "line," << real.origin_line->r << ',' << real.origin_line->theta << ",,,\n";
  }
  for (const CoxPoint& p : real.vehicular_bs) {
    os << "vbs," << p.line.r << ',' << p.line.theta << ',' << p.t << ',' << p.xy.x << ','
       << p.xy.y << '\n';
  }
  for (const Vec2& p : real.planar_bs) {
    os << "pbs,,,," << p.x << ',' << p.y << '\n';
  }
}

}  // namespace coxcell
