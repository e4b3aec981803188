#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "coxcell/analytic.hpp"
#include "coxcell/experiment.hpp"
#include "coxcell/montecarlo.hpp"
#include "coxcell/quadrature.hpp"

using namespace coxcell;
using namespace coxcell::analytic;

namespace {

constexpr double kPi = std::numbers::pi;

// no-noise Poisson-cellular closed form for alpha = 4
double classical_coverage(double T) {
  return 1.0 / (1.0 + std::sqrt(T) * (kPi / 2.0 - std::atan(1.0 / std::sqrt(T))));
}

NetworkConfig fig3_config() {
  NetworkConfig cfg;
  cfg.lambda_b = 10.0;
  cfg.lambda_u = 1.0;
  cfg.lambda_l = 10.0;
  cfg.mu_b = 1.0;
  cfg.alpha = 4.0;
  cfg.threshold = 1.0;
  return cfg;
}

double cdf_from_pdf(const NetworkConfig& cfg, PalmScenario scenario, double lo, double hi) {
  return quad::integrate(
             [&](double r) {
               return scenario == PalmScenario::TypicalPlanarUser
                          ? nearest_dist_pdf_planar_user(cfg, r).value
                          : nearest_dist_pdf_vehicular_user(cfg, r).value;
             },
             lo, hi, quad::Options{1e-7, 1e-12, 4000})
      .value;
}

}  // namespace

TEST_CASE("association of the planar user: degenerate and qualitative anchors") {
  NetworkConfig cfg = fig3_config();
  cfg.mu_b = 0.0;
  const auto no_roadside = assoc_planar_user(cfg);
  CHECK(no_roadside.to_planar.value == doctest::Approx(1.0).epsilon(1e-6));

  // equal spatial intensities (10 = 10*1): planar slightly ahead
  const auto equal = assoc_planar_user(fig3_config());
  CHECK(equal.to_planar.value > 0.5);
  CHECK(equal.to_planar.value < 0.6);
  CHECK(equal.to_planar.value + equal.to_vehicular.value == 1.0);
}

TEST_CASE("association of the vehicular user: degenerate anchors") {
  NetworkConfig cfg = fig3_config();
  cfg.mu_b = 0.0;
  CHECK(assoc_vehicular_user(cfg).to_planar.value == doctest::Approx(1.0).epsilon(1e-6));

  cfg = fig3_config();
  cfg.lambda_b = 0.0;
  CHECK(assoc_vehicular_user(cfg).to_planar.value == doctest::Approx(0.0));

  // own road pulls the vehicular user toward roadside stations
  const auto planar = assoc_planar_user(fig3_config());
  const auto vehicular = assoc_vehicular_user(fig3_config());
  CHECK(vehicular.to_planar.value < planar.to_planar.value);
}

TEST_CASE("complement identity holds against the direct integral route") {
  for (const NetworkConfig& cfg :
       {fig3_config(), preset_3gpp_urban(), preset_equal_intensity()}) {
    const auto split = assoc_planar_user(cfg);
    const auto direct = assoc_planar_user_to_vehicular_direct(cfg);
    CHECK(std::abs(direct.value - split.to_vehicular.value) <=
          2.0 * (direct.error_bound + split.to_vehicular.error_bound) + 1e-12);
  }
}

TEST_CASE("nearest-distance density normalizes to one") {
  const NetworkConfig cfg = preset_equal_intensity();
  const double planar_mass = cdf_from_pdf(cfg, PalmScenario::TypicalPlanarUser, 1e-9, 1.5);
  CHECK(planar_mass == doctest::Approx(1.0).epsilon(1e-4));
  const double veh_mass = cdf_from_pdf(cfg, PalmScenario::TypicalVehicularUser, 1e-9, 1.5);
  CHECK(veh_mass == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("nearest-distance density reduces to the Rayleigh form without roadside stations") {
  NetworkConfig cfg = preset_equal_intensity();
  cfg.mu_b = 0.0;
  for (double r : {0.02, 0.1, 0.25}) {
    const double expected = 2.0 * kPi * cfg.lambda_b * r * std::exp(-kPi * cfg.lambda_b * r * r);
    CHECK(nearest_dist_pdf_planar_user(cfg, r).value ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(nearest_dist_pdf_vehicular_user(cfg, r).value ==
          doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK_THROWS_AS(nearest_dist_pdf_planar_user(cfg, 0.0), ConfigError);
}

TEST_CASE("nearest-distance CDF matches the Monte Carlo law (KS)") {
  const NetworkConfig cfg = preset_equal_intensity();
  std::vector<double> grid;
  for (int i = 1; i <= 60; ++i) grid.push_back(0.005 * i);
  const long n = 20000;
  int tag = 0;
  for (PalmScenario scenario :
       {PalmScenario::TypicalPlanarUser, PalmScenario::TypicalVehicularUser}) {
    const auto stats = estimate_nearest_distance_cdf(cfg, scenario, n, 301 + tag++, grid);
    double ks = 0.0, cum = 0.0, prev = 1e-9;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      cum += cdf_from_pdf(cfg, scenario, prev, grid[k]);
      prev = grid[k];
      ks = std::max(ks, std::abs(cum - stats.cdf[k]));
    }
    // 1% one-sample KS critical value 1.63/sqrt(n) ~ 0.0115
    CHECK(ks < 1.63 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("coverage by planar stations collapses to the classical closed form") {
  NetworkConfig cfg;
  cfg.lambda_b = 10.0;
  cfg.lambda_u = 1.0;
  cfg.lambda_l = 5.0;
  cfg.mu_b = 0.0;
  cfg.alpha = 4.0;
  for (double T : {0.5, 1.0, 4.0}) {
    cfg.threshold = T;
    const auto l1 = cov_planar_user_planar_bs(cfg);
    CHECK(l1.value == doctest::Approx(classical_coverage(T)).epsilon(1e-5));
    const auto l3 = cov_vehicular_user_planar_bs(cfg);
    CHECK(l3.value == doctest::Approx(classical_coverage(T)).epsilon(1e-5));
  }
  cfg.threshold = 1e8;  // coverage vanishes at extreme thresholds
  CHECK(cov_planar_user_planar_bs(cfg).value < 1e-3);
}

TEST_CASE("joint coverage zero cases") {
  NetworkConfig cfg = preset_3gpp_urban();
  cfg.lambda_b = 0.0;
  CHECK(cov_planar_user_planar_bs(cfg).value == 0.0);
  CHECK(cov_vehicular_user_planar_bs(cfg).value == 0.0);

  cfg = preset_3gpp_urban();
  cfg.mu_b = 0.0;
  CHECK(cov_planar_user_vehicular_bs(cfg).value == 0.0);
  CHECK(cov_planar_user_vehicular_bs_alt(cfg).value == 0.0);
  const auto split = cov_vehicular_user_vehicular_bs(cfg);
  CHECK(split.same_line.value == 0.0);
  CHECK(split.other_line.value == 0.0);

  cfg = preset_3gpp_urban();
  cfg.lambda_l = 0.0;
  const auto own_only = cov_vehicular_user_vehicular_bs(cfg);
  CHECK(own_only.other_line.value == 0.0);  // no other roads exist
  CHECK(own_only.same_line.value > 0.0);
  CHECK(own_only.total.value == own_only.same_line.value);
}

TEST_CASE("joint coverage never exceeds the association marginal") {
  const NetworkConfig cfg = preset_3gpp_urban();
  const auto a1 = assoc_planar_user(cfg);
  CHECK(cov_planar_user_planar_bs(cfg).value <= a1.to_planar.value + 1e-9);
  CHECK(cov_planar_user_vehicular_bs(cfg).value <= a1.to_vehicular.value + 1e-9);
  const auto a2 = assoc_vehicular_user(cfg);
  CHECK(cov_vehicular_user_planar_bs(cfg).value <= a2.to_planar.value + 1e-9);
  CHECK(cov_vehicular_user_vehicular_bs(cfg).total.value <= a2.to_vehicular.value + 1e-9);
}

TEST_CASE("the two derivations of roadside coverage agree") {
  NetworkConfig alt = fig3_config();
  alt.alpha = 3.5;
  alt.threshold = 2.0;
  for (const NetworkConfig& cfg : {preset_3gpp_urban(), preset_equal_intensity(), alt}) {
    const auto direct = cov_planar_user_vehicular_bs(cfg);
    const auto alt = cov_planar_user_vehicular_bs_alt(cfg);
    CHECK(std::abs(direct.value - alt.value) <=
          2.0 * (direct.error_bound + alt.error_bound) + 1e-12);
  }
}

TEST_CASE("every coverage quantity is monotone non-increasing in the threshold") {
  const NetworkConfig base = preset_3gpp_urban();
  std::vector<double> values1, values2, values3, values4, values5;
  for (int i = 0; i < 20; ++i) {
    NetworkConfig cfg = base;
    cfg.threshold = db_to_linear(-12.0 + 1.8 * i);
    values1.push_back(cov_planar_user_planar_bs(cfg).value);
    values2.push_back(cov_planar_user_vehicular_bs(cfg).value);
    values3.push_back(cov_vehicular_user_planar_bs(cfg).value);
    const auto split = cov_vehicular_user_vehicular_bs(cfg);
    values4.push_back(split.total.value);
    values5.push_back(total_coverage(cfg).value);
  }
  for (const auto& vs : {values1, values2, values3, values4, values5}) {
    for (std::size_t k = 1; k < vs.size(); ++k) CHECK(vs[k] <= vs[k - 1] + 1e-9);
  }
}

TEST_CASE("total coverage mixes the user populations by intensity") {
  NetworkConfig cfg = preset_3gpp_urban();
  cfg.mu_u = 0.0;
  const auto planar_total = total_coverage(cfg);
  const auto l1 = cov_planar_user_planar_bs(cfg);
  const auto l2 = cov_planar_user_vehicular_bs(cfg);
  CHECK(planar_total.value == doctest::Approx(l1.value + l2.value).epsilon(1e-12));

  cfg = preset_3gpp_urban();
  cfg.lambda_u = 0.0;
  const auto veh_total = total_coverage(cfg);
  const auto l3 = cov_vehicular_user_planar_bs(cfg);
  const auto l4 = cov_vehicular_user_vehicular_bs(cfg);
  CHECK(veh_total.value == doctest::Approx(l3.value + l4.total.value).epsilon(1e-12));

  cfg = preset_3gpp_urban();
  cfg.lambda_u = cfg.lambda_l * cfg.mu_u;  // equal weights
  const auto mixed = total_coverage(cfg);
  CHECK(mixed.value ==
        doctest::Approx(0.5 * (l1.value + l2.value) + 0.5 * (l3.value + l4.total.value))
            .epsilon(1e-9));

  cfg.lambda_u = 0.0;
  cfg.mu_u = 0.0;
  CHECK_THROWS_AS(total_coverage(cfg), ConfigError);
}

TEST_CASE("link-class conditional coverages") {
  NetworkConfig cfg = preset_3gpp_urban();
  cfg.mu_b = 0.0;
  // with no roadside stations the planar user always associates planar
  const auto i2i = link_coverage(cfg, LinkType::I2I);
  const auto l1 = cov_planar_user_planar_bs(cfg);
  CHECK(i2i.value == doctest::Approx(l1.value).epsilon(1e-8));
  CHECK_THROWS_AS(link_coverage(cfg, LinkType::V2V), DegenerateConditioning);
  CHECK_THROWS_AS(link_coverage(cfg, LinkType::V2I), DegenerateConditioning);

  // roadside stations help V2V: denser own road, higher conditional coverage
  NetworkConfig lo = preset_3gpp_urban();
  lo.mu_b = 5.0;
  NetworkConfig hi = preset_3gpp_urban();
  hi.mu_b = 15.0;
  CHECK(link_coverage(hi, LinkType::V2V).value > link_coverage(lo, LinkType::V2V).value);
}

TEST_CASE("per-scenario joints cross-check the Monte Carlo engine") {
  const NetworkConfig cfg = preset_equal_intensity();
  const long n = 20000;
  const auto mc = estimate_coverage(cfg, PalmScenario::TypicalVehicularUser, n, 401);
  const auto l3 = cov_vehicular_user_planar_bs(cfg);
  const auto l4 = cov_vehicular_user_vehicular_bs(cfg);
  CHECK(std::abs(mc.to_planar.value - l3.value) <
        3.0 * mc.to_planar.std_err + l3.error_bound);
  CHECK(std::abs(mc.to_vehicular_same_line->value - l4.same_line.value) <
        3.0 * mc.to_vehicular_same_line->std_err + l4.same_line.error_bound);
  CHECK(std::abs(mc.to_vehicular_other_line->value - l4.other_line.value) <
        3.0 * mc.to_vehicular_other_line->std_err + l4.other_line.error_bound);
  // decomposition identity: the joint sum is the scenario total
  CHECK(std::abs(mc.total.value - (l3.value + l4.total.value)) <
        3.0 * mc.total.std_err + l3.error_bound + l4.total.error_bound);
}

TEST_CASE("analytic probabilities stay within their error bands of [0, 1]") {
  for (const NetworkConfig& base : {preset_3gpp_urban(), preset_equal_intensity()}) {
    for (double tdb : {-10.0, 0.0, 20.0}) {
      NetworkConfig cfg = base;
      cfg.threshold = db_to_linear(tdb);
      const auto check_prob = [](const AnalyticValue& v) {
        CHECK(v.value >= -v.error_bound);
        CHECK(v.value <= 1.0 + v.error_bound);
      };
      check_prob(assoc_planar_user(cfg).to_planar);
      check_prob(assoc_vehicular_user(cfg).to_planar);
      check_prob(cov_planar_user_planar_bs(cfg));
      check_prob(cov_planar_user_vehicular_bs(cfg));
      check_prob(cov_vehicular_user_planar_bs(cfg));
      check_prob(cov_vehicular_user_vehicular_bs(cfg).total);
      check_prob(total_coverage(cfg));
      check_prob(link_coverage(cfg, LinkType::V2V));
    }
    // densities are nonnegative within their error bound
    for (double r : {0.01, 0.1, 0.3}) {
      const auto f = nearest_dist_pdf_planar_user(base, r);
      CHECK(f.value >= -f.error_bound);
    }
  }
}

TEST_CASE("exhausted budgets surface as NonConvergence, never bad values") {
  QuadTolerances tol;
  tol.outer = quad::Options{1e-13, 1e-16, 3};
  tol.middle = quad::Options{1e-14, 1e-17, 3};
  tol.inner = quad::Options{1e-15, 1e-18, 3};
  CHECK_THROWS_AS(cov_planar_user_vehicular_bs(preset_3gpp_urban(), tol),
                  quad::NonConvergence);
}
