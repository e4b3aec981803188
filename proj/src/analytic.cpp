#include "coxcell/analytic.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>

namespace coxcell::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kCutoffLog = 36.84;  // -log(1e-16)
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kAssocFloor = 1e-12;

using ValueErr = std::pair<double, double>;

// Scale-free interference kernels shared by every coverage integral. With the
// serving distance r factored out (u = r x, v = r y), the per-line inner
// integral becomes r * K(y) where K depends only on (T, alpha, y):
//   near lines (y <= 1): K(y) = Int_{sqrt(1-y^2)}^inf  g(x,y) dx
//   far lines  (y >= 1): K(y) = Int_0^inf              g(x,y) dx
// with g = w/(1+w), w = T (x^2+y^2)^(-alpha/2). Values are memoized per
// evaluation call; the cache is never shared across calls.
class LineKernel {
 public:
  LineKernel(double threshold, double alpha, const quad::Options& inner)
      : T_(threshold), alpha_(alpha), inner_(inner) {}

  ValueErr near(double y) { return cached(near_memo_, y, std::sqrt(std::max(0.0, 1.0 - y * y))); }
  ValueErr far(double y) { return cached(far_memo_, y, 0.0); }

  // Int_1^inf T s / (s^alpha + T) ds: planar interference exponent is
  // 2 pi lambda_b r^2 * rho_planar.
  ValueErr rho_planar() {
    if (!rho1_) {
      const double T = T_, a = alpha_;
      auto q = quad::integrate([T, a](double s) { return T * s / (std::pow(s, a) + T); }, 1.0,
                               kInf, inner_, quad::Endpoint::SemiInfinite);
      rho1_ = ValueErr{q.value, q.abs_error};
    }
    return *rho1_;
  }

  // Int_1^inf T / (s^alpha + T) ds: own-road interference exponent is
  // 2 mu_b r * rho_line.
  ValueErr rho_line() {
    if (!rho2_) {
      const double T = T_, a = alpha_;
      auto q = quad::integrate([T, a](double s) { return T / (std::pow(s, a) + T); }, 1.0, kInf,
                               inner_, quad::Endpoint::SemiInfinite);
      rho2_ = ValueErr{q.value, q.abs_error};
    }
    return *rho2_;
  }

 private:
  ValueErr cached(std::unordered_map<std::uint64_t, ValueErr>& memo, double y, double lo) {
    const std::uint64_t key = std::bit_cast<std::uint64_t>(y);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const double T = T_, a = alpha_;
    auto q = quad::integrate(
        [T, a, y](double x) {
          const double w = T * std::pow(x * x + y * y, -0.5 * a);
          return w / (1.0 + w);
        },
        lo, kInf, inner_, quad::Endpoint::SemiInfinite);
    const ValueErr v{q.value, q.abs_error};
    memo.emplace(key, v);
    return v;
  }

  double T_, alpha_;
  quad::Options inner_;
  std::unordered_map<std::uint64_t, ValueErr> near_memo_, far_memo_;
  std::optional<ValueErr> rho1_, rho2_;
};

quad::NestedOptions nested_options(const QuadTolerances& tol) {
  return quad::NestedOptions{{tol.outer, tol.middle, tol.inner}};
}

// Pure void exponent of the line process within B(0, r):
//   S(r) = 2 lambda_l Int_0^r (1 - e^{-2 mu sqrt(r^2 - t^2)}) dt,
// evaluated through the t = r sin(psi) substitution.
ValueErr geom_exponent(double r, double lambda_l, double mu, quad::NestedCtx& ctx) {
  if (lambda_l <= 0.0 || mu <= 0.0) return {0.0, 0.0};
  auto q = ctx.integrate_result(
      [mu, r](double psi, quad::NestedCtx&) {
        const double c = std::cos(psi);
        return -std::expm1(-2.0 * mu * r * c) * c;
      },
      0.0, kHalfPi);
  return {2.0 * lambda_l * r * q.value, 2.0 * lambda_l * r * q.abs_error};
}

// Generating-functional exponent of the lines meeting B(0, r): void factor
// plus interference beyond the chord, v = r sin(psi) substitution.
ValueErr pgfl_near(double r, double lambda_l, double mu, LineKernel& kernel,
                   quad::NestedCtx& ctx) {
  if (lambda_l <= 0.0 || mu <= 0.0) return {0.0, 0.0};
  auto q = ctx.integrate_result(
      [&kernel, mu, r](double psi, quad::NestedCtx& inner) {
        const double c = std::cos(psi);
        const auto [k, ke] = kernel.near(std::sin(psi));
        inner.note_inner_error(2.0 * mu * r * ke * c);
        return -std::expm1(-2.0 * mu * r * (c + k)) * c;
      },
      0.0, kHalfPi);
  return {2.0 * lambda_l * r * q.value, 2.0 * lambda_l * r * q.abs_error};
}

// Generating-functional exponent of the lines avoiding B(0, r), folded to a
// unit interval via y = 1/s.
ValueErr pgfl_far(double r, double lambda_l, double mu, LineKernel& kernel,
                  quad::NestedCtx& ctx) {
  if (lambda_l <= 0.0 || mu <= 0.0) return {0.0, 0.0};
  auto q = ctx.integrate_result(
      [&kernel, mu, r](double s, quad::NestedCtx& inner) {
        const double y = 1.0 / s;
        const auto [k, ke] = kernel.far(y);
        const double w = y * y;  // dy = ds / s^2
        inner.note_inner_error(2.0 * mu * r * ke * w);
        return -std::expm1(-2.0 * mu * r * k) * w;
      },
      0.0, 1.0);
  return {2.0 * lambda_l * r * q.value, 2.0 * lambda_l * r * q.abs_error};
}

// Angle average over the serving (or origin) road: the chord void factor and
// the interference of the road's remaining stations,
//   Theta(r) = Int_0^{pi/2} e^{-2 mu r (sin th + Knear(cos th))} dth.
ValueErr serving_line_factor(double r, double mu, LineKernel& kernel, quad::NestedCtx& ctx) {
  auto q = ctx.integrate_result(
      [&kernel, mu, r](double th, quad::NestedCtx& inner) {
        const auto [k, ke] = kernel.near(std::cos(th));
        const double v = std::exp(-2.0 * mu * r * (std::sin(th) + k));
        inner.note_inner_error(2.0 * mu * r * ke * v);
        return v;
      },
      0.0, kHalfPi);
  return {q.value, q.abs_error};
}

// Radial cutoff where the survival prefactor e^{-quad_coef r^2 - lin_coef r}
// drops below 1e-16; the remaining tail is integrated through the rational
// transform so the split never affects correctness.
double outer_cutoff(double quad_coef, double lin_coef, double fallback_lin) {
  if (quad_coef > 0.0) {
    return (-lin_coef + std::sqrt(lin_coef * lin_coef + 4.0 * quad_coef * kCutoffLog)) /
           (2.0 * quad_coef);
  }
  if (lin_coef > 0.0) return kCutoffLog / lin_coef;
  if (fallback_lin > 0.0) return kCutoffLog / fallback_lin;
  return 1.0;
}

quad::QuadResult outer_integral(const quad::NestedCtx::Fn& f, double cutoff,
                                const quad::NestedOptions& opts) {
  const quad::QuadResult head = quad::integrate_nested(f, 0.0, cutoff, quad::Endpoint::Regular,
                                                       opts);
  const quad::QuadResult tail = quad::integrate_nested(f, cutoff, kInf,
                                                       quad::Endpoint::SemiInfinite, opts);
  return quad::QuadResult{head.value + tail.value, head.abs_error + tail.abs_error,
                          head.n_evals + tail.n_evals, head.converged && tail.converged};
}

// Shared assembly of the joint-coverage integrands. All five coverage
// integrals share the exponent
//   pi lambda_b r^2 (1 + 2 rho_planar)            planar void + interference
//   [+ 2 mu_b r (1 + rho_line)]                   own road (vehicular user)
//   + Cnear(r) + Cfar(r)                          all other roads
// and differ in the radial prefactor and the optional serving-road angle
// factor.
struct CoverageAssembly {
  const NetworkConfig& cfg;
  LineKernel& kernel;
  bool own_line;  // vehicular-user conditioning

  // Returns prefactor(r) * e^{-exponent(r)} [* Theta(r)], recording the
  // first-order error of every inner piece against the outer node.
  double joint_integrand(double r, quad::NestedCtx& ctx, double prefactor,
                         bool with_theta) const {
    double expo = 0.0;
    double expo_err = 0.0;

    if (cfg.lambda_b > 0.0) {
      const auto [rho1, rho1_err] = kernel.rho_planar();
      const double s = kPi * cfg.lambda_b * r * r;
      expo += s * (1.0 + 2.0 * rho1);
      expo_err += 2.0 * s * rho1_err;
    }
    if (own_line && cfg.mu_b > 0.0) {
      const auto [rho2, rho2_err] = kernel.rho_line();
      expo += 2.0 * cfg.mu_b * r * (1.0 + rho2);
      expo_err += 2.0 * cfg.mu_b * r * rho2_err;
    }
    const auto [cn, cn_err] = pgfl_near(r, cfg.lambda_l, cfg.mu_b, kernel, ctx);
    const auto [cf, cf_err] = pgfl_far(r, cfg.lambda_l, cfg.mu_b, kernel, ctx);
    expo += cn + cf;
    expo_err += cn_err + cf_err;

    const double base = prefactor * std::exp(-expo);
    double value = base;
    double theta_err_term = 0.0;
    if (with_theta) {
      const auto [th, th_err] = serving_line_factor(r, cfg.mu_b, kernel, ctx);
      value = base * th;
      theta_err_term = base * th_err;
    }
    ctx.note_inner_error(std::abs(value) * expo_err + theta_err_term);
    return value;
  }
};

AnalyticValue to_value(const quad::QuadResult& q) { return {q.value, q.abs_error}; }

AnalyticValue ratio(const AnalyticValue& num, const AnalyticValue& den, const char* what) {
  if (!(den.value > kAssocFloor)) {
    throw DegenerateConditioning(std::string(what) +
                                 ": conditioning probability below 1e-12");
  }
  const double v = num.value / den.value;
  return {v, (num.error_bound + std::abs(v) * den.error_bound) / den.value};
}

}  // namespace

AssociationSplit assoc_planar_user(const NetworkConfig& cfg, const QuadTolerances& tol) {
  validate(cfg);
  const auto opts = nested_options(tol);
  auto outer = [&cfg](double r, quad::NestedCtx& ctx) {
    const auto [s, s_err] = geom_exponent(r, cfg.lambda_l, cfg.mu_b, ctx);
    const double v = 2.0 * kPi * cfg.lambda_b * r * std::exp(-kPi * cfg.lambda_b * r * r - s);
    ctx.note_inner_error(v * s_err);
    return v;
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 0.0, 2.0 * cfg.lambda_l);
  const AnalyticValue p = to_value(outer_integral(outer, cutoff, opts));
  return AssociationSplit{p, {1.0 - p.value, p.error_bound}};
}

AssociationSplit assoc_vehicular_user(const NetworkConfig& cfg, const QuadTolerances& tol) {
  validate(cfg);
  const auto opts = nested_options(tol);
  auto outer = [&cfg](double r, quad::NestedCtx& ctx) {
    const auto [s, s_err] = geom_exponent(r, cfg.lambda_l, cfg.mu_b, ctx);
    const double v = 2.0 * kPi * cfg.lambda_b * r *
                     std::exp(-kPi * cfg.lambda_b * r * r - 2.0 * cfg.mu_b * r - s);
    ctx.note_inner_error(v * s_err);
    return v;
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 2.0 * cfg.mu_b, 2.0 * cfg.lambda_l);
  const AnalyticValue p = to_value(outer_integral(outer, cutoff, opts));
  return AssociationSplit{p, {1.0 - p.value, p.error_bound}};
}

AnalyticValue assoc_planar_user_to_vehicular_direct(const NetworkConfig& cfg,
                                                    const QuadTolerances& tol) {
  validate(cfg);
  if (cfg.lambda_l <= 0.0 || cfg.mu_b <= 0.0) return {0.0, 0.0};
  const auto opts = nested_options(tol);
  auto outer = [&cfg](double r, quad::NestedCtx& ctx) {
    const auto [s, s_err] = geom_exponent(r, cfg.lambda_l, cfg.mu_b, ctx);
    // density of the nearest vehicular-station distance: the u = r sin(th)
    // image of Int_0^r 4 ll mu r e^{-2 mu sqrt(r^2-u^2)} / sqrt(r^2-u^2) du
    const auto d = ctx.integrate_result(
        [&cfg, r](double th, quad::NestedCtx&) {
          return std::exp(-2.0 * cfg.mu_b * r * std::cos(th));
        },
        0.0, kHalfPi);
    const double dens = 4.0 * cfg.lambda_l * cfg.mu_b * r * d.value;
    const double survive = std::exp(-kPi * cfg.lambda_b * r * r - s);
    ctx.note_inner_error(survive * (dens * s_err + 4.0 * cfg.lambda_l * cfg.mu_b * r *
                                                       d.abs_error));
    return survive * dens;
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 0.0, 2.0 * cfg.lambda_l);
  return to_value(outer_integral(outer, cutoff, opts));
}

AnalyticValue nearest_dist_pdf_planar_user(const NetworkConfig& cfg, double r,
                                           const QuadTolerances& tol) {
  validate(cfg);
  if (!(r > 0.0)) throw ConfigError("pdf evaluation point must be > 0");
  double s = 0.0, s_err = 0.0, dens = 0.0, dens_err = 0.0;
  if (cfg.lambda_l > 0.0 && cfg.mu_b > 0.0) {
    const auto qs = quad::integrate(
        [&cfg, r](double psi) {
          const double c = std::cos(psi);
          return -std::expm1(-2.0 * cfg.mu_b * r * c) * c;
        },
        0.0, kHalfPi, tol.middle);
    s = 2.0 * cfg.lambda_l * r * qs.value;
    s_err = 2.0 * cfg.lambda_l * r * qs.abs_error;
    const auto qd = quad::integrate(
        [&cfg, r](double th) { return std::exp(-2.0 * cfg.mu_b * r * std::cos(th)); }, 0.0,
        kHalfPi, tol.middle);
    dens = 4.0 * cfg.lambda_l * cfg.mu_b * r * qd.value;
    dens_err = 4.0 * cfg.lambda_l * cfg.mu_b * r * qd.abs_error;
  }
  const double survive = std::exp(-kPi * cfg.lambda_b * r * r - s);
  const double value = survive * (2.0 * kPi * cfg.lambda_b * r + dens);
  return {value, value * s_err + survive * dens_err};
}

AnalyticValue nearest_dist_pdf_vehicular_user(const NetworkConfig& cfg, double r,
                                              const QuadTolerances& tol) {
  validate(cfg);
  if (!(r > 0.0)) throw ConfigError("pdf evaluation point must be > 0");
  double s = 0.0, s_err = 0.0, dens = 0.0, dens_err = 0.0;
  if (cfg.lambda_l > 0.0 && cfg.mu_b > 0.0) {
    const auto qs = quad::integrate(
        [&cfg, r](double psi) {
          const double c = std::cos(psi);
          return -std::expm1(-2.0 * cfg.mu_b * r * c) * c;
        },
        0.0, kHalfPi, tol.middle);
    s = 2.0 * cfg.lambda_l * r * qs.value;
    s_err = 2.0 * cfg.lambda_l * r * qs.abs_error;
    const auto qd = quad::integrate(
        [&cfg, r](double th) { return std::exp(-2.0 * cfg.mu_b * r * std::cos(th)); }, 0.0,
        kHalfPi, tol.middle);
    dens = 4.0 * cfg.lambda_l * cfg.mu_b * r * qd.value;
    dens_err = 4.0 * cfg.lambda_l * cfg.mu_b * r * qd.abs_error;
  }
  const double survive = std::exp(-kPi * cfg.lambda_b * r * r - 2.0 * cfg.mu_b * r - s);
  const double value = survive * (2.0 * kPi * cfg.lambda_b * r + 2.0 * cfg.mu_b + dens);
  return {value, value * s_err + survive * dens_err};
}

AnalyticValue cov_planar_user_planar_bs(const NetworkConfig& cfg, const QuadTolerances& tol) {
  validate(cfg);
  if (cfg.lambda_b <= 0.0) return {0.0, 0.0};
  const auto opts = nested_options(tol);
  LineKernel kernel(cfg.threshold, cfg.alpha, tol.inner);
  const CoverageAssembly assembly{cfg, kernel, /*own_line=*/false};
  auto outer = [&](double r, quad::NestedCtx& ctx) {
    return assembly.joint_integrand(r, ctx, 2.0 * kPi * cfg.lambda_b * r, /*with_theta=*/false);
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 0.0, 2.0 * cfg.lambda_l);
  return to_value(outer_integral(outer, cutoff, opts));
}

AnalyticValue cov_planar_user_vehicular_bs(const NetworkConfig& cfg, const QuadTolerances& tol) {
  validate(cfg);
  if (cfg.lambda_l <= 0.0 || cfg.mu_b <= 0.0) return {0.0, 0.0};
  const auto opts = nested_options(tol);
  LineKernel kernel(cfg.threshold, cfg.alpha, tol.inner);
  const CoverageAssembly assembly{cfg, kernel, /*own_line=*/false};
  auto outer = [&](double r, quad::NestedCtx& ctx) {
    return assembly.joint_integrand(r, ctx, 4.0 * cfg.lambda_l * cfg.mu_b * r,
                                    /*with_theta=*/true);
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 0.0, 2.0 * cfg.lambda_l);
  return to_value(outer_integral(outer, cutoff, opts));
}

AnalyticValue cov_planar_user_vehicular_bs_alt(const NetworkConfig& cfg,
                                                    const QuadTolerances& tol) {
  validate(cfg);
  if (cfg.lambda_l <= 0.0 || cfg.mu_b <= 0.0) return {0.0, 0.0};
  const auto opts = nested_options(tol);
  LineKernel kernel(cfg.threshold, cfg.alpha, tol.inner);
  // lambda_l mu_b Int_{R^2} (planar factor)(line-PGFL factor)(origin-line
  // angle average) dx, in polar coordinates.
  auto outer = [&](double rho, quad::NestedCtx& ctx) {
    double planar = 1.0, planar_err = 0.0;
    if (cfg.lambda_b > 0.0) {
      const auto [rho1, rho1_err] = kernel.rho_planar();
      const double s = kPi * cfg.lambda_b * rho * rho;
      planar = std::exp(-s * (1.0 + 2.0 * rho1));
      planar_err = planar * 2.0 * s * rho1_err;
    }
    const auto [cn, cn_err] = pgfl_near(rho, cfg.lambda_l, cfg.mu_b, kernel, ctx);
    const auto [cf, cf_err] = pgfl_far(rho, cfg.lambda_l, cfg.mu_b, kernel, ctx);
    const double pgfl = std::exp(-cn - cf);
    const auto [th, th_err] = serving_line_factor(rho, cfg.mu_b, kernel, ctx);
    const double angle_avg = (2.0 / kPi) * th;
    const double weight = cfg.lambda_l * cfg.mu_b * 2.0 * kPi * rho;
    const double value = weight * planar * pgfl * angle_avg;
    ctx.note_inner_error(weight *
                         (planar_err * pgfl * angle_avg +
                          planar * pgfl * (cn_err + cf_err) * angle_avg +
                          planar * pgfl * (2.0 / kPi) * th_err));
    return value;
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 0.0, 2.0 * cfg.lambda_l);
  return to_value(outer_integral(outer, cutoff, opts));
}

AnalyticValue cov_vehicular_user_planar_bs(const NetworkConfig& cfg, const QuadTolerances& tol) {
  validate(cfg);
  if (cfg.lambda_b <= 0.0) return {0.0, 0.0};
  const auto opts = nested_options(tol);
  LineKernel kernel(cfg.threshold, cfg.alpha, tol.inner);
  const CoverageAssembly assembly{cfg, kernel, /*own_line=*/true};
  auto outer = [&](double r, quad::NestedCtx& ctx) {
    return assembly.joint_integrand(r, ctx, 2.0 * kPi * cfg.lambda_b * r, /*with_theta=*/false);
  };
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 2.0 * cfg.mu_b, 2.0 * cfg.lambda_l);
  return to_value(outer_integral(outer, cutoff, opts));
}

VehicularCoverageSplit cov_vehicular_user_vehicular_bs(const NetworkConfig& cfg,
                                                       const QuadTolerances& tol) {
  validate(cfg);
  VehicularCoverageSplit split{{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
  if (cfg.mu_b <= 0.0) return split;
  const auto opts = nested_options(tol);
  const double cutoff = outer_cutoff(kPi * cfg.lambda_b, 2.0 * cfg.mu_b, 2.0 * cfg.lambda_l);
  {
    LineKernel kernel(cfg.threshold, cfg.alpha, tol.inner);
    const CoverageAssembly assembly{cfg, kernel, /*own_line=*/true};
    auto outer = [&](double r, quad::NestedCtx& ctx) {
      return assembly.joint_integrand(r, ctx, 2.0 * cfg.mu_b, /*with_theta=*/false);
    };
    split.same_line = to_value(outer_integral(outer, cutoff, opts));
  }
  if (cfg.lambda_l > 0.0) {
    LineKernel kernel(cfg.threshold, cfg.alpha, tol.inner);
    const CoverageAssembly assembly{cfg, kernel, /*own_line=*/true};
    auto outer = [&](double r, quad::NestedCtx& ctx) {
      return assembly.joint_integrand(r, ctx, 4.0 * cfg.lambda_l * cfg.mu_b * r,
                                      /*with_theta=*/true);
    };
    split.other_line = to_value(outer_integral(outer, cutoff, opts));
  }
  split.total = {split.same_line.value + split.other_line.value,
                 split.same_line.error_bound + split.other_line.error_bound};
  return split;
}

AnalyticValue total_coverage(const NetworkConfig& cfg, const QuadTolerances& tol) {
  validate(cfg);
  const double w_user = cfg.lambda_u + cfg.lambda_l * cfg.mu_u;
  if (!(w_user > 0.0)) {
    throw ConfigError("mixture weights degenerate: lambda_u + lambda_l*mu_u must be > 0");
  }
  const double wp = cfg.lambda_u / w_user;
  const double wv = cfg.lambda_l * cfg.mu_u / w_user;
  AnalyticValue out{0.0, 0.0};
  if (wp > 0.0) {
    const AnalyticValue a = cov_planar_user_planar_bs(cfg, tol);
    const AnalyticValue b = cov_planar_user_vehicular_bs(cfg, tol);
    out.value += wp * (a.value + b.value);
    out.error_bound += wp * (a.error_bound + b.error_bound);
  }
  if (wv > 0.0) {
    const AnalyticValue c = cov_vehicular_user_planar_bs(cfg, tol);
    const VehicularCoverageSplit d = cov_vehicular_user_vehicular_bs(cfg, tol);
    out.value += wv * (c.value + d.total.value);
    out.error_bound += wv * (c.error_bound + d.total.error_bound);
  }
  return out;
}

AnalyticValue link_coverage(const NetworkConfig& cfg, LinkType link, const QuadTolerances& tol) {
  validate(cfg);
  switch (link) {
    case LinkType::I2I:
      return ratio(cov_planar_user_planar_bs(cfg, tol), assoc_planar_user(cfg, tol).to_planar,
                   "I2I");
    case LinkType::V2I:
      return ratio(cov_planar_user_vehicular_bs(cfg, tol),
                   assoc_planar_user(cfg, tol).to_vehicular, "V2I");
    case LinkType::I2V:
      return ratio(cov_vehicular_user_planar_bs(cfg, tol),
                   assoc_vehicular_user(cfg, tol).to_planar, "I2V");
    case LinkType::V2V:
      return ratio(cov_vehicular_user_vehicular_bs(cfg, tol).total,
                   assoc_vehicular_user(cfg, tol).to_vehicular, "V2V");
  }
  throw std::logic_error("unreachable");
}

}  // namespace coxcell::analytic
