#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "coxcell/quadrature.hpp"

using namespace coxcell;
namespace q = coxcell::quad;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct BatteryCase {
  const char* name;
  q::Integrand1D f;
  double a, b;
  double truth;
};

// Ten closed forms spanning all three endpoint classes.
std::vector<BatteryCase> battery() {
  return {
      {"const", {[](double) { return 1.0; }}, 0.0, 1.0, 1.0},
      {"x^2", {[](double x) { return x * x; }}, 0.0, 1.0, 1.0 / 3.0},
      {"sin", {[](double x) { return std::sin(x); }}, 0.0, kPi, 2.0},
      {"exp", {[](double x) { return std::exp(x); }}, 0.0, 1.0, std::exp(1.0) - 1.0},
      {"1/(1+x^2)", {[](double x) { return 1.0 / (1.0 + x * x); }}, 0.0, 1.0, kPi / 4.0},
      {"exp(-x) tail",
       {[](double x) { return std::exp(-x); }, q::Endpoint::SemiInfinite},
       0.0,
       kInf,
       1.0},
      {"x^-2 tail",
       {[](double x) { return 1.0 / (x * x); }, q::Endpoint::SemiInfinite},
       1.0,
       kInf,
       1.0},
      {"rayleigh density",
       {[](double r) { return 2.0 * kPi * 3.0 * r * std::exp(-kPi * 3.0 * r * r); },
        q::Endpoint::SemiInfinite},
       0.0,
       kInf,
       1.0},
      {"arcsin kernel",
       {[](double z) { return 1.0 / std::sqrt(4.0 - z * z); },
        q::Endpoint::InverseSqrtSingularity},
       0.0,
       2.0,
       kPi / 2.0},
      {"z^2 arcsin kernel",
       {[](double z) { return z * z / std::sqrt(1.0 - z * z); },
        q::Endpoint::InverseSqrtSingularity},
       0.0,
       1.0,
       kPi / 4.0},
  };
}

}  // namespace

TEST_CASE("battery reproduces closed forms at every tolerance, monotonically") {
  for (const auto& c : battery()) {
    double prev_err = kInf;
    for (double rel : {1e-4, 1e-6, 1e-8}) {
      q::Options opts;
      opts.rel_tol = rel;
      opts.abs_tol = rel * 1e-6;
      const q::QuadResult res = q::integrate(c.f, c.a, c.b, opts);
      const double err = std::abs(res.value - c.truth);
      CAPTURE(c.name);
      CAPTURE(rel);
      CHECK(err < rel * std::abs(c.truth));
      CHECK(res.converged);
      CHECK(err <= prev_err + 1e-16);  // tightening never hurts on the battery
      prev_err = err;
      CHECK(res.abs_error <= std::max(opts.abs_tol, rel * std::abs(res.value)));
    }
  }
}

TEST_CASE("spec examples") {
  CHECK(q::integrate(q::Integrand1D{[](double) { return 1.0; }}, 0.0, 1.0).value == doctest::Approx(1.0));
  CHECK(q::integrate({[](double x) { return std::exp(-x); }, q::Endpoint::SemiInfinite}, 0.0,
                     kInf)
            .value == doctest::Approx(1.0));
  CHECK(q::integrate({[](double z) { return 1.0 / std::sqrt(4.0 - z * z); },
                      q::Endpoint::InverseSqrtSingularity},
                     0.0, 2.0)
            .value == doctest::Approx(kPi / 2.0));
}

TEST_CASE("budget exhaustion raises NonConvergence with the best estimate") {
  q::Options opts;
  opts.rel_tol = 1e-12;
  opts.abs_tol = 1e-16;
  opts.max_intervals = 4;
  const auto spike = [](double x) { return 1.0 / (std::abs(x - 0.3141) + 1e-9); };
  try {
    q::integrate(q::Integrand1D{spike}, 0.0, 1.0, opts);
    FAIL("expected NonConvergence");
  } catch (const q::NonConvergence& e) {
    CHECK(e.level == 0);
    CHECK(e.best.n_evals > 0);
    // 15 evals per interval; every split re-evaluates two halves
    CHECK(e.best.n_evals <= 15 * (2 * opts.max_intervals - 1));
    CHECK(e.best.abs_error > 0.0);
    CHECK(!e.best.converged);
    CHECK(std::isfinite(e.best.value));
  }
}

TEST_CASE("non-finite integrand values are detected, never silently integrated") {
  const auto bad = [](double x) { return x < 0.5 ? 1.0 : std::nan(""); };
  CHECK_THROWS_AS(q::integrate(q::Integrand1D{bad}, 0.0, 1.0), q::BadIntegrand);
  const auto pole = [](double x) { return 1.0 / (x - 0.37); };  // non-integrable pole
  CHECK_THROWS_AS(q::integrate(q::Integrand1D{pole}, 0.0, 1.0, quad::Options{1e-10, 1e-16, 100000}), std::exception);
}

TEST_CASE("interval preconditions") {
  CHECK_THROWS_AS(q::integrate(q::Integrand1D{[](double) { return 1.0; }}, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(q::integrate({[](double) { return 1.0; }, q::Endpoint::SemiInfinite}, 0.0, 5.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      q::integrate({[](double) { return 1.0; }, q::Endpoint::InverseSqrtSingularity}, -1.0, 2.0),
      std::invalid_argument);
}

TEST_CASE("nested: unit square") {
  q::NestedOptions opts{{q::Options{1e-6, 1e-12, 4000}, q::Options{1e-7, 1e-13, 4000}}};
  const auto res = q::integrate_nested(
      [](double, q::NestedCtx& ctx) {
        return ctx.integrate([](double, q::NestedCtx&) { return 1.0; }, 0.0, 1.0);
      },
      0.0, 1.0, q::Endpoint::Regular, opts);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("nested: probability densities integrate to one") {
  q::NestedOptions opts{{q::Options{1e-6, 1e-12, 4000}, q::Options{1e-7, 1e-13, 4000}}};
  for (double lambda : {0.5, 3.0, 20.0}) {
    const auto res = q::integrate_nested(
        [lambda](double r, q::NestedCtx&) {
          return 2.0 * kPi * lambda * r * std::exp(-kPi * lambda * r * r);
        },
        0.0, kInf, q::Endpoint::SemiInfinite, opts);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("nested: association skeleton reduces to one when lines are silent") {
  // outer r, middle t: 2 pi lb r exp(-pi lb r^2 - 2 ll Int_0^r (1-e^{-2 mu sqrt(r^2-t^2)}) dt)
  q::NestedOptions opts{{q::Options{1e-6, 1e-12, 4000}, q::Options{1e-7, 1e-13, 4000}}};
  const double lb = 7.0;
  for (const auto& [ll, mu] : std::vector<std::pair<double, double>>{{0.0, 5.0}, {4.0, 0.0}}) {
    const auto res = q::integrate_nested(
        [lb, ll = ll, mu = mu](double r, q::NestedCtx& ctx) {
          const double inner = ctx.integrate(
              [mu, r](double t, q::NestedCtx&) {
                return -std::expm1(-2.0 * mu * std::sqrt(std::max(0.0, r * r - t * t)));
              },
              0.0, r > 0 ? r : 1e-12);
          return 2.0 * kPi * lb * r * std::exp(-kPi * lb * r * r - 2.0 * ll * inner);
        },
        0.0, kInf, q::Endpoint::SemiInfinite, opts);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("nested: inner tolerances must tighten by 10x and depth is capped at 3") {
  q::NestedOptions bad{{q::Options{1e-6, 1e-12, 4000}, q::Options{1e-6, 1e-12, 4000}}};
  CHECK_THROWS_AS(q::integrate_nested([](double, q::NestedCtx&) { return 1.0; }, 0.0, 1.0,
                                      q::Endpoint::Regular, bad),
                  std::invalid_argument);
  q::NestedOptions four{std::vector<q::Options>(4, q::Options{})};
  CHECK_THROWS_AS(q::integrate_nested([](double, q::NestedCtx&) { return 1.0; }, 0.0, 1.0,
                                      q::Endpoint::Regular, four),
                  std::invalid_argument);
}

TEST_CASE("nested: integrating deeper than the configured levels is rejected") {
  q::NestedOptions opts{{q::Options{1e-6, 1e-12, 4000}, q::Options{1e-7, 1e-13, 4000}}};
  CHECK_THROWS_AS(q::integrate_nested(
                      [](double, q::NestedCtx& ctx) {
                        return ctx.integrate(
                            [](double, q::NestedCtx& inner) {
                              return inner.integrate(
                                  [](double, q::NestedCtx&) { return 1.0; }, 0.0, 1.0);
                            },
                            0.0, 1.0);
                      },
                      0.0, 1.0, q::Endpoint::Regular, opts),
                  std::invalid_argument);
}

TEST_CASE("nested: inner error bounds reach the combined estimate") {
  q::NestedOptions opts{{q::Options{1e-6, 1e-12, 4000}, q::Options{1e-7, 1e-13, 4000}}};
  const auto res = q::integrate_nested(
      [](double x, q::NestedCtx& ctx) {
        return ctx.integrate([x](double t, q::NestedCtx&) { return std::exp(-x * t * t); }, 0.0,
                             1.0);
      },
      0.0, 1.0, q::Endpoint::Regular, opts);
  CHECK(res.abs_error > 0.0);
  // Int_0^1 Int_0^1 e^{-x t^2} dt dx = Int_0^1 (1-e^{-t^2})/t^2 dt
  CHECK(res.value == doctest::Approx(0.861527706796296).epsilon(1e-6));
}

TEST_CASE("semi-infinite split at a cutoff agrees with the pure transform") {
  // the battery consistency check behind the outer-integral truncation scheme
  const auto f = [](double x) { return std::exp(-x); };
  const auto whole = q::integrate({f, q::Endpoint::SemiInfinite}, 0.0, kInf);
  const auto head = q::integrate(q::Integrand1D{f}, 0.0, 37.0);
  const auto tail = q::integrate({f, q::Endpoint::SemiInfinite}, 37.0, kInf);
  CHECK(whole.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(head.value + tail.value == doctest::Approx(whole.value).epsilon(1e-8));

  const auto g = [](double r) { return 2.0 * kPi * 5.0 * r * std::exp(-kPi * 5.0 * r * r); };
  const auto gw = q::integrate({g, q::Endpoint::SemiInfinite}, 0.0, kInf);
  const auto gh = q::integrate(q::Integrand1D{g}, 0.0, 1.533);
  const auto gt = q::integrate({g, q::Endpoint::SemiInfinite}, 1.533, kInf);
  CHECK(gh.value + gt.value == doctest::Approx(gw.value).epsilon(1e-8));
}
