#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace coxcell::quad {

/// Classification of the integration interval's delicate end.
///   Regular                 -- both endpoints finite and benign
///   InverseSqrtSingularity  -- integrand behaves like h(z)/sqrt(b^2 - z^2)
///                              at the upper endpoint b (requires 0 <= a < b);
///                              handled by the substitution z = b sin(theta)
///   SemiInfinite            -- upper endpoint +infinity; handled by the
///                              rational transform x = a + s/(1-s), s in [0,1)
enum class Endpoint { Regular, InverseSqrtSingularity, SemiInfinite };

struct Integrand1D {
  std::function<double(double)> f;
  Endpoint endpoint = Endpoint::Regular;
};

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;  // rule error plus any propagated inner error
  long n_evals = 0;
  bool converged = true;
};

struct Options {
  double rel_tol = 1e-6;
  double abs_tol = 1e-12;
  int max_intervals = 4000;  // evaluation budget: 15 evals per interval
};

/// Integrand produced a NaN or infinity at a quadrature node.
class BadIntegrand : public std::runtime_error {
 public:
  BadIntegrand(double at, int level);
  double at;   // abscissa in the original variable
  int level;   // nesting level (0 = outermost / single integral)
};

/// Budget exhausted before the tolerance was met. Carries the best estimate
/// and its error bound; never silently returns a bad value.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(QuadResult best, int level);
  QuadResult best;
  int level;  // nesting level that failed (0 = outermost)
};

/// Adaptive Gauss-Kronrod 7/15 integration of f over [a, b].
/// Guarantees |result - true| <= max(abs_tol, rel_tol*|true|) for integrands
/// in the supported endpoint classes, or throws NonConvergence.
QuadResult integrate(const Integrand1D& f, double a, double b, const Options& opts = {});

/// Convenience overload for a plain regular integrand.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Options& opts = {}, Endpoint endpoint = Endpoint::Regular);

struct NestedOptions {
  std::vector<Options> levels;  // levels[0] = outermost; at most 3 levels
};

/// Handed to integrands inside integrate_nested. Inner integrals evaluated
/// through the context contribute their error bounds to the final combined
/// abs_error of the outermost result.
class NestedCtx {
 public:
  using Fn = std::function<double(double, NestedCtx&)>;

  /// Integrate one level deeper, with that level's tolerances. The inner
  /// abs_error is recorded against the current node automatically.
  double integrate(const Fn& f, double a, double b, Endpoint ep = Endpoint::Regular);

  /// As above but returns the full result and records nothing; the caller
  /// must account for the error via note_inner_error (possibly scaled by a
  /// sensitivity factor, e.g. when the integral sits in an exponent).
  QuadResult integrate_result(const Fn& f, double a, double b, Endpoint ep = Endpoint::Regular);

  /// Record an absolute error inherited by the current node's value, e.g.
  /// from a memoized inner integral.
  void note_inner_error(double abs_err);

  int level() const { return level_; }

 private:
  friend QuadResult integrate_nested(const NestedCtx::Fn&, double, double, Endpoint,
                                     const NestedOptions&);
  NestedCtx(const NestedOptions& opts, int level, double* carried)
      : opts_(&opts), level_(level), carried_(carried) {}

  const NestedOptions* opts_;
  int level_;
  double* carried_;
};

/// Nested adaptive integration, at most 3 levels. Each inner level's
/// tolerances must be tighter than its parent's by a factor of at least 10.
/// The final abs_error combines the outer rule error with the integrated
/// inner error bounds. NonConvergence at any level reports the level index.
QuadResult integrate_nested(const NestedCtx::Fn& outer, double a, double b, Endpoint ep,
                            const NestedOptions& opts);

}  // namespace coxcell::quad
