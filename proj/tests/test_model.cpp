#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "coxcell/model.hpp"
#include "coxcell/rng.hpp"

using namespace coxcell;

namespace {

NetworkConfig good_config() {
  NetworkConfig cfg;
  cfg.lambda_b = 10.0;
  cfg.lambda_u = 1.0;
  cfg.lambda_l = 5.0;
  cfg.mu_b = 5.0;
  cfg.mu_u = 1.0;
  cfg.alpha = 4.0;
  cfg.threshold = 1.0;
  return cfg;
}

}  // namespace

TEST_CASE("validate accepts a consistent parameter set") {
  const NetworkConfig cfg = good_config();
  CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("validate names the first violated constraint") {
  NetworkConfig cfg = good_config();
  cfg.alpha = 2.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "alpha must exceed 2", ConfigError);

  cfg = good_config();
  cfg.lambda_l = -1.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "lambda_l must be >= 0", ConfigError);

  cfg = good_config();
  cfg.threshold = 0.0;
  CHECK_THROWS_WITH_AS(validate(cfg), "threshold must be > 0", ConfigError);

  cfg = good_config();
  cfg.lambda_b = -2.0;
  cfg.alpha = 1.0;  // lambda_b is reported first
  CHECK_THROWS_WITH_AS(validate(cfg), "lambda_b must be >= 0", ConfigError);

  cfg = good_config();
  cfg.alpha = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("line_point basic geometry") {
  const CoxPoint a = line_point({0.0, 0.0}, 1.0);
  CHECK(a.xy.x == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.xy.y == doctest::Approx(0.0).epsilon(1e-15));

  const CoxPoint b = line_point({1.0, std::numbers::pi / 2}, 0.0);
  CHECK(b.xy.norm() == doctest::Approx(1.0).epsilon(1e-15));

  // norm equals sqrt(t^2 + r^2) computed independently
  const CoxPoint c = line_point({3.0, 0.7}, 4.0);
  CHECK(c.xy.norm() == doctest::Approx(5.0).epsilon(1e-14));
}

TEST_CASE("line_point norm and line-equation identities hold for random inputs") {
  Philox rng(12345, 0);
  for (int i = 0; i < 10000; ++i) {
    const double r = rng.uniform(-50.0, 50.0);
    const double theta = rng.uniform(0.0, std::numbers::pi);
    const double t = rng.uniform(-50.0, 50.0);
    const CoxPoint p = line_point({r, theta}, t);
    const double expected = std::sqrt(t * t + r * r);
    CHECK(std::abs(p.xy.norm() - expected) < 1e-12 * (1.0 + expected));
    const double residual = p.xy.y * std::cos(theta) - p.xy.x * std::sin(theta) - r;
    CHECK(std::abs(residual) < 1e-12 * (1.0 + std::abs(r)));
  }
}

TEST_CASE("dB conversion round trips") {
  CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(linear_to_db(db_to_linear(-7.5)) == doctest::Approx(-7.5).epsilon(1e-12));
}

TEST_CASE("philox streams are independent and reproducible") {
  Philox a(42, 0), b(42, 0), c(42, 1), d(43, 0);
  CHECK(a() == b());
  CHECK(a() == b());
  Philox a2(42, 0);
  CHECK(a2() != c());  // different stream
  Philox a3(42, 0);
  CHECK(a3() != d());  // different key
  Philox u(7, 7);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform01();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
