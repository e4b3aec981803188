#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace coxcell {

/// Raised when a parameter set violates a model constraint.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Full parameter set of the network model.
///
/// Canonical units: km for lengths, 1/km for linear intensities, 1/km^2 for
/// planar intensities. `threshold` is the SIR threshold in linear scale; dB
/// conversion happens at the CLI boundary only. `tx_power` is carried for
/// completeness but cancels out of every SIR (all stations transmit with the
/// same power), so no computed result may depend on it.
struct NetworkConfig {
  double lambda_b = 0.0;    // planar base stations, 1/km^2
  double lambda_u = 0.0;    // planar users, 1/km^2
  double lambda_l = 0.0;    // line (road) process, 1/km
  double mu_b = 0.0;        // vehicular base stations per line, 1/km
  double mu_u = 0.0;        // vehicular users per line, 1/km
  double alpha = 4.0;       // path-loss exponent, must exceed 2
  double tx_power = 1.0;    // linear units, cancels in SIR
  double threshold = 1.0;   // SIR threshold, linear
};

/// Checks every model invariant and returns the config unchanged.
/// Throws ConfigError naming the first violated constraint.
NetworkConfig validate(const NetworkConfig& cfg);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
};

/// One road, encoded as the point (r, theta) on the cylinder R x [0,pi).
/// theta is the angle between the positive X axis and the line; r is the
/// signed offset of the foot point (the point of the line closest to the
/// origin), so the line satisfies y cos(theta) - x sin(theta) = r. theta
/// always lives in [0, pi); the mirrored representation (-r, theta+pi) is
/// never used.
struct LineParams {
  double r = 0.0;      // signed offset, km
  double theta = 0.0;  // direction angle in [0, pi)
};

/// A point of a Cox process on a line: signed arc-length offset t along
/// `line`, measured from the foot point, plus its Cartesian image.
struct CoxPoint {
  LineParams line;
  double t = 0.0;  // km
  Vec2 xy;
};

/// Maps an arc-length offset on a line to Cartesian coordinates:
/// foot point + t * (line direction). ||xy||^2 = t^2 + r^2 holds to machine
/// precision, as does the line equation x cos(theta) + y sin(theta) = r.
CoxPoint line_point(const LineParams& line, double t);

/// Which typical user sits at the origin. A typical vehicular user implies a
/// road through the origin is added to every realization.
enum class PalmScenario { TypicalPlanarUser, TypicalVehicularUser };

/// Type of the nearest base station. The two events partition the sample
/// space: P(ToPlanar) + P(ToVehicular) = 1.
enum class AssociationEvent { ToPlanar, ToVehicular };

}  // namespace coxcell
