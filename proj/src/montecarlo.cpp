#include "coxcell/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

namespace coxcell {

namespace {

constexpr long kBlock = 4096;  // trials per scheduling block, fixed so that
                               // results do not depend on the thread count

struct TrialRecord {
  double sir;
  bool to_planar;
  bool same_line;  // meaningful when the serving station is vehicular and
                   // the realization carries an origin line
  double nearest;
  double nearest_p;  // NaN when the class is empty in the window
  double nearest_v;
};

SimulationWindow resolve_window(const NetworkConfig& cfg, const McOptions& opts) {
  if (opts.window) return *opts.window;
  return SimulationWindow::tail_bounded(cfg, 1e-3);
}

TrialRecord record_of(const TrialOutcome& o) {
  return TrialRecord{o.sir,
                     o.association == AssociationEvent::ToPlanar,
                     o.same_line.value_or(false),
                     o.nearest_dist,
                     o.nearest_planar.value_or(std::numeric_limits<double>::quiet_NaN()),
                     o.nearest_vehicular.value_or(std::numeric_limits<double>::quiet_NaN())};
}

// Runs `body(block_first_trial, block_last_trial, partial)` over fixed-size
// blocks, scheduled work-stealing style; partials are indexed by block so the
// final reduction order is independent of scheduling.
template <typename Partial, typename Body>
std::vector<Partial> run_blocks(long n_trials, int threads, const Body& body) {
  const long n_blocks = (n_trials + kBlock - 1) / kBlock;
  std::vector<Partial> partials(static_cast<std::size_t>(n_blocks));
  const int n_workers = static_cast<int>(std::max<long>(1, std::min<long>(threads, n_blocks)));
  if (n_workers == 1) {
    for (long i = 0; i < n_blocks; ++i) {
      body(i * kBlock, std::min(n_trials, (i + 1) * kBlock), partials[i]);
    }
    return partials;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    try {
      for (;;) {
        const long i = next.fetch_add(1);
        if (i >= n_blocks) return;
        body(i * kBlock, std::min(n_trials, (i + 1) * kBlock), partials[i]);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!error) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(n_workers));
  for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return partials;
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.size() <= 4) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t mid = xs.size() / 2;
  return pairwise_sum(xs.first(mid)) + pairwise_sum(xs.subspan(mid));
}

// Accumulator for a sample mean: pairwise-combined block sums.
struct MeanAcc {
  std::vector<double> sum, sum2;
  std::vector<long> count;
  void add_block(double s, double s2, long c) {
    sum.push_back(s);
    sum2.push_back(s2);
    count.push_back(c);
  }
  MeanWithCI finish() const {
    long n = 0;
    for (long c : count) n += c;
    if (n == 0) return MeanWithCI{std::numeric_limits<double>::quiet_NaN(),
                                  std::numeric_limits<double>::quiet_NaN(), 0};
    const double s = pairwise_sum(sum);
    const double s2 = pairwise_sum(sum2);
    const double mean = s / static_cast<double>(n);
    double se = 0.0;
    if (n > 1) {
      const double var = std::max(0.0, (s2 - static_cast<double>(n) * mean * mean) /
                                           static_cast<double>(n - 1));
      se = std::sqrt(var / static_cast<double>(n));
    }
    return MeanWithCI{mean, se, n};
  }
};

}  // namespace

EstimateWithCI bernoulli_estimate(long count, long n) {
  const double p = n > 0 ? static_cast<double>(count) / static_cast<double>(n) : 0.0;
  const double se = n > 0 ? std::sqrt(p * (1.0 - p) / static_cast<double>(n)) : 0.0;
  return EstimateWithCI{p, se, n};
}

TrialOutcome evaluate_with_fading(const Realization& real, double alpha,
                                  std::span<const double> fading) {
  const std::size_t np = real.planar_bs.size();
  const std::size_t nv = real.vehicular_bs.size();
  if (fading.size() != np + nv) {
    throw std::invalid_argument("evaluate_with_fading: one fade per station required");
  }
  if (np + nv == 0) throw std::invalid_argument("evaluate_with_fading: empty realization");

  // Serving station: minimal distance, ties to the lowest index (planar
  // stations first, then vehicular in storage order).
  std::size_t best = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  double best_p = std::numeric_limits<double>::infinity();
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < np; ++i) {
    const double d2 = real.planar_bs[i].norm2();
    best_p = std::min(best_p, d2);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  for (std::size_t i = 0; i < nv; ++i) {
    const double d2 = real.vehicular_bs[i].xy.norm2();
    best_v = std::min(best_v, d2);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = np + i;
    }
  }

  const double half_alpha = 0.5 * alpha;
  double interference = 0.0;
  for (std::size_t i = 0; i < np; ++i) {
    if (i == best) continue;
    interference += fading[i] * std::pow(real.planar_bs[i].norm2(), -half_alpha);
  }
  for (std::size_t i = 0; i < nv; ++i) {
    if (np + i == best) continue;
    interference += fading[np + i] * std::pow(real.vehicular_bs[i].xy.norm2(), -half_alpha);
  }
  const double signal = fading[best] * std::pow(best_d2, -half_alpha);

  TrialOutcome out;
  out.nearest_dist = std::sqrt(best_d2);
  out.association = best < np ? AssociationEvent::ToPlanar : AssociationEvent::ToVehicular;
  out.sir = interference > 0.0 ? signal / interference : std::numeric_limits<double>::infinity();
  if (np > 0) out.nearest_planar = std::sqrt(best_p);
  if (nv > 0) out.nearest_vehicular = std::sqrt(best_v);
  if (real.origin_line && out.association == AssociationEvent::ToVehicular) {
    out.same_line = best - np >= nv - real.origin_bs_count;
  }
  return out;
}

TrialOutcome run_trial(const NetworkConfig& cfg, PalmScenario scenario,
                       const SimulationWindow& window, Philox& rng, AngularMeasure angular,
                       int max_resample) {
  for (int attempt = 0; attempt < max_resample; ++attempt) {
    const Realization real = sample_realization(cfg, scenario, angular, window, rng);
    const std::size_t n = real.planar_bs.size() + real.vehicular_bs.size();
    if (n == 0) continue;
    std::vector<double> fading(n);
    for (double& h : fading) h = rng.exponential();
    return evaluate_with_fading(real, cfg.alpha, fading);
  }
  throw EmptyRealization("no base stations after " + std::to_string(max_resample) +
                         " resampling attempts; intensities too small for the window");
}

int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("COXCELL_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

AssociationEstimate estimate_association(const NetworkConfig& cfg, PalmScenario scenario,
                                         long n_trials, std::uint64_t seed,
                                         const McOptions& opts) {
  validate(cfg);
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  const SimulationWindow window = resolve_window(cfg, opts);

  struct Partial {
    long planar = 0;
  };
  auto partials = run_blocks<Partial>(
      n_trials, effective_threads(opts.threads), [&](long t0, long t1, Partial& p) {
        for (long t = t0; t < t1; ++t) {
          Philox rng(seed, static_cast<std::uint64_t>(t));
          const TrialOutcome o = run_trial(cfg, scenario, window, rng, opts.angular,
                                           opts.max_resample);
          if (o.association == AssociationEvent::ToPlanar) ++p.planar;
        }
      });
  long planar = 0;
  for (const auto& p : partials) planar += p.planar;
  AssociationEstimate est;
  est.to_planar = bernoulli_estimate(planar, n_trials);
  est.to_vehicular = bernoulli_estimate(n_trials - planar, n_trials);
  est.window_radius = window.radius;
  return est;
}

std::vector<CoverageEstimate> estimate_coverage_grid(const NetworkConfig& cfg,
                                                     PalmScenario scenario,
                                                     std::span<const double> thresholds,
                                                     long n_trials, std::uint64_t seed,
                                                     const McOptions& opts) {
  validate(cfg);
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  if (thresholds.empty()) throw ConfigError("threshold grid must be nonempty");
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    if (!(thresholds[k] > 0.0)) throw ConfigError("threshold must be > 0");
    if (k > 0 && !(thresholds[k] >= thresholds[k - 1])) {
      throw ConfigError("threshold grid must be ascending");
    }
  }
  const SimulationWindow window = resolve_window(cfg, opts);
  const std::size_t m = thresholds.size();

  struct Partial {
    std::vector<long> planar, same, other;
    long assoc_planar = 0;
  };
  auto partials = run_blocks<Partial>(
      n_trials, effective_threads(opts.threads), [&](long t0, long t1, Partial& p) {
        p.planar.assign(m, 0);
        p.same.assign(m, 0);
        p.other.assign(m, 0);
        for (long t = t0; t < t1; ++t) {
          Philox rng(seed, static_cast<std::uint64_t>(t));
          const TrialRecord r = record_of(
              run_trial(cfg, scenario, window, rng, opts.angular, opts.max_resample));
          if (r.to_planar) ++p.assoc_planar;
          std::vector<long>& bucket =
              r.to_planar ? p.planar : (r.same_line ? p.same : p.other);
          for (std::size_t k = 0; k < m && r.sir > thresholds[k]; ++k) ++bucket[k];
        }
      });

  long assoc_planar = 0;
  for (const auto& p : partials) assoc_planar += p.assoc_planar;
  std::vector<CoverageEstimate> out(m);
  for (std::size_t k = 0; k < m; ++k) {
    long planar = 0, same = 0, other = 0;
    for (const auto& p : partials) {
      planar += p.planar[k];
      same += p.same[k];
      other += p.other[k];
    }
    CoverageEstimate& e = out[k];
    e.threshold = thresholds[k];
    e.to_planar = bernoulli_estimate(planar, n_trials);
    e.to_vehicular = bernoulli_estimate(same + other, n_trials);
    if (scenario == PalmScenario::TypicalVehicularUser) {
      e.to_vehicular_same_line = bernoulli_estimate(same, n_trials);
      e.to_vehicular_other_line = bernoulli_estimate(other, n_trials);
    }
    e.total = bernoulli_estimate(planar + same + other, n_trials);
    e.assoc_to_planar = bernoulli_estimate(assoc_planar, n_trials);
    e.assoc_to_vehicular = bernoulli_estimate(n_trials - assoc_planar, n_trials);
    e.window_radius = window.radius;
  }
  return out;
}

CoverageEstimate estimate_coverage(const NetworkConfig& cfg, PalmScenario scenario, long n_trials,
                                   std::uint64_t seed, const McOptions& opts) {
  const double t = cfg.threshold;
  return estimate_coverage_grid(cfg, scenario, std::span<const double>(&t, 1), n_trials, seed,
                                opts)[0];
}

DistanceStats estimate_nearest_distance_cdf(const NetworkConfig& cfg, PalmScenario scenario,
                                            long n_trials, std::uint64_t seed,
                                            std::span<const double> grid,
                                            const McOptions& opts) {
  validate(cfg);
  if (n_trials < 1) throw ConfigError("n_trials must be >= 1");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
      throw ConfigError("distance grid must be positive and strictly increasing");
    }
  }
  const SimulationWindow window = resolve_window(cfg, opts);
  const std::size_t m = grid.size();

  struct Partial {
    std::vector<long> below;
    long n = 0;
    double sum_n = 0, sum2_n = 0;
    double sum_p = 0, sum2_p = 0;
    long cnt_p = 0;
    double sum_v = 0, sum2_v = 0;
    long cnt_v = 0;
    double sum_pp = 0, sum2_pp = 0;  // nearest planar given ToPlanar
    long cnt_pp = 0;
    double sum_pv = 0, sum2_pv = 0;  // nearest planar given ToVehicular
    long cnt_pv = 0;
  };
  auto partials = run_blocks<Partial>(
      n_trials, effective_threads(opts.threads), [&](long t0, long t1, Partial& p) {
        p.below.assign(m, 0);
        for (long t = t0; t < t1; ++t) {
          Philox rng(seed, static_cast<std::uint64_t>(t));
          const TrialRecord r = record_of(
              run_trial(cfg, scenario, window, rng, opts.angular, opts.max_resample));
          for (std::size_t k = 0; k < m; ++k) {
            if (r.nearest <= grid[k]) ++p.below[k];
          }
          ++p.n;
          p.sum_n += r.nearest;
          p.sum2_n += r.nearest * r.nearest;
          if (!std::isnan(r.nearest_p)) {
            p.sum_p += r.nearest_p;
            p.sum2_p += r.nearest_p * r.nearest_p;
            ++p.cnt_p;
            if (r.to_planar) {
              p.sum_pp += r.nearest_p;
              p.sum2_pp += r.nearest_p * r.nearest_p;
              ++p.cnt_pp;
            } else {
              p.sum_pv += r.nearest_p;
              p.sum2_pv += r.nearest_p * r.nearest_p;
              ++p.cnt_pv;
            }
          }
          if (!std::isnan(r.nearest_v)) {
            p.sum_v += r.nearest_v;
            p.sum2_v += r.nearest_v * r.nearest_v;
            ++p.cnt_v;
          }
        }
      });

  DistanceStats stats;
  stats.grid.assign(grid.begin(), grid.end());
  stats.cdf.assign(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    long below = 0;
    for (const auto& p : partials) below += p.below[k];
    stats.cdf[k] = static_cast<double>(below) / static_cast<double>(n_trials);
  }
  MeanAcc nearest, planar, vehicular, planar_pp, planar_pv;
  for (const auto& p : partials) {
    nearest.add_block(p.sum_n, p.sum2_n, p.n);
    planar.add_block(p.sum_p, p.sum2_p, p.cnt_p);
    vehicular.add_block(p.sum_v, p.sum2_v, p.cnt_v);
    planar_pp.add_block(p.sum_pp, p.sum2_pp, p.cnt_pp);
    planar_pv.add_block(p.sum_pv, p.sum2_pv, p.cnt_pv);
  }
  stats.mean_nearest = nearest.finish();
  stats.mean_nearest_planar = planar.finish();
  stats.mean_nearest_vehicular = vehicular.finish();
  stats.mean_planar_given_planar = planar_pp.finish();
  stats.mean_planar_given_vehicular = planar_pv.finish();
  stats.window_radius = window.radius;
  return stats;
}

EstimateWithCI estimate_mixture_coverage(const NetworkConfig& cfg, long n_trials,
                                         std::uint64_t seed, const McOptions& opts) {
  validate(cfg);
  const double w_user = cfg.lambda_u + cfg.lambda_l * cfg.mu_u;
  if (!(w_user > 0.0)) {
    throw ConfigError("mixture weights degenerate: lambda_u + lambda_l*mu_u must be > 0");
  }
  const double wp = cfg.lambda_u / w_user;
  const double wv = cfg.lambda_l * cfg.mu_u / w_user;
  EstimateWithCI planar{0.0, 0.0, 0}, vehicular{0.0, 0.0, 0};
  if (wp > 0.0) {
    planar = estimate_coverage(cfg, PalmScenario::TypicalPlanarUser, n_trials,
                               derive_seed(seed, 1), opts)
                 .total;
    if (wv == 0.0) return planar;
  }
  if (wv > 0.0) {
    vehicular = estimate_coverage(cfg, PalmScenario::TypicalVehicularUser, n_trials,
                                  derive_seed(seed, 2), opts)
                    .total;
    if (wp == 0.0) return vehicular;
  }
  EstimateWithCI out;
  out.value = wp * planar.value + wv * vehicular.value;
  out.std_err = std::hypot(wp * planar.std_err, wv * vehicular.std_err);
  out.n_trials = planar.n_trials + vehicular.n_trials;
  return out;
}

nlohmann::json estimate_record(PalmScenario scenario, const NetworkConfig& cfg,
                               std::string_view event, const EstimateWithCI& est,
                               std::uint64_t seed, double window_radius) {
  return nlohmann::json{
      {"scenario", scenario == PalmScenario::TypicalPlanarUser ? "planar" : "vehicular"},
      {"params",
       {{"lambda_b", cfg.lambda_b},
        {"lambda_u", cfg.lambda_u},
        {"lambda_l", cfg.lambda_l},
        {"mu_b", cfg.mu_b},
        {"mu_u", cfg.mu_u},
        {"alpha", cfg.alpha},
        {"tx_power", cfg.tx_power},
        {"threshold", cfg.threshold}}},
      {"event", std::string(event)},
      {"value", est.value},
      {"std_err", est.std_err},
      {"n_trials", est.n_trials},
      {"seed", seed},
      {"window_radius", window_radius}};
}

}  // namespace coxcell
