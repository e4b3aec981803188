#include "coxcell/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace coxcell::quad {

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (positive half; the first
// four abscissae carry the embedded 7-point Gauss rule).
constexpr int kHalf = 8;
constexpr double kNode[kHalf] = {
    0.000000000000000000000000000000000,  // Gauss
    0.405845151377397166906606412076961,  // Gauss
    0.741531185599394439863864773280788,  // Gauss
    0.949107912342758524526189684047851,  // Gauss
    0.207784955007898467600689403773245,
    0.586087235467691130294144838258730,
    0.864864423359769072789712788640926,
    0.991455371120812639206854697526329,
};
constexpr double kWg[kHalf] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
    0.0, 0.0, 0.0, 0.0,
};
constexpr double kWk[kHalf] = {
    0.209482141084727828012999174891714,
    0.190350578064785409913256402421014,
    0.140653259715525918745189590510238,
    0.063092092629978553290700663189204,
    0.204432940075298892414161999234649,
    0.169004726639267902826583426598550,
    0.104790010322250183839876322541518,
    0.022935322010529224963732008058970,
};

struct EvalPoint {
  double value;
  double carried;  // inherited absolute error of this value
};

using ErrFn = std::function<EvalPoint(double)>;

struct Segment {
  double a, b;
  double value;
  double err;
  double carried;
  bool operator<(const Segment& o) const { return err < o.err; }
};

// One GK15 application on [a, b]. `orig` maps a transformed abscissa back to
// the user's variable for error reporting.
Segment gk15(const ErrFn& f, double a, double b, int level,
             const std::function<double(double)>& orig, long& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  double fv[15];
  double cv[15];
  double xs[15];
  int n = 0;
  xs[n++] = c;
  for (int i = 1; i < kHalf; ++i) {
    xs[n++] = c - h * kNode[i];
    xs[n++] = c + h * kNode[i];
  }
  for (int i = 0; i < 15; ++i) {
    const EvalPoint p = f(xs[i]);
    if (!std::isfinite(p.value) || !std::isfinite(p.carried)) {
      throw BadIntegrand(orig ? orig(xs[i]) : xs[i], level);
    }
    fv[i] = p.value;
    cv[i] = p.carried;
  }
  evals += 15;

  double resk = kWk[0] * fv[0];
  double resg = kWg[0] * fv[0];
  double carried = kWk[0] * std::abs(cv[0]);
  double resabs = kWk[0] * std::abs(fv[0]);
  int j = 1;
  for (int i = 1; i < kHalf; ++i) {
    const double s = fv[j] + fv[j + 1];
    resk += kWk[i] * s;
    resg += kWg[i] * s;
    carried += kWk[i] * (std::abs(cv[j]) + std::abs(cv[j + 1]));
    resabs += kWk[i] * (std::abs(fv[j]) + std::abs(fv[j + 1]));
    j += 2;
  }

  const double mean = resk * 0.5;
  double resasc = kWk[0] * std::abs(fv[0] - mean);
  j = 1;
  for (int i = 1; i < kHalf; ++i) {
    resasc += kWk[i] * (std::abs(fv[j] - mean) + std::abs(fv[j + 1] - mean));
    j += 2;
  }
  resasc *= h;
  resabs *= h;

  double err = std::abs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double eps = std::numeric_limits<double>::epsilon();
  err = std::max(err, 50.0 * eps * resabs);

  return Segment{a, b, resk * h, err, carried * h};
}

QuadResult adapt(const ErrFn& f, double a, double b, const Options& opts, int level,
                 const std::function<double(double)>& orig) {
  long evals = 0;
  std::priority_queue<Segment> heap;
  heap.push(gk15(f, a, b, level, orig, evals));
  int intervals = 1;

  double value = heap.top().value;
  double err = heap.top().err;
  double carried = heap.top().carried;

  auto tolerance = [&](double v) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(v)); };

  while (err > tolerance(value)) {
    if (intervals >= opts.max_intervals) {
      throw NonConvergence(QuadResult{value, err + carried, evals, false}, level);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = gk15(f, worst.a, mid, level, orig, evals);
    const Segment right = gk15(f, mid, worst.b, level, orig, evals);
    value += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    carried += left.carried + right.carried - worst.carried;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }

  // Recompute the sums segment by segment to shed the incremental drift.
  double v = 0.0, e = 0.0, cr = 0.0;
  while (!heap.empty()) {
    v += heap.top().value;
    e += heap.top().err;
    cr += heap.top().carried;
    heap.pop();
  }
  return QuadResult{v, e + cr, evals, true};
}

// Applies the endpoint transform and runs the adaptive core.
QuadResult integrate_err(const ErrFn& f, double a, double b, Endpoint ep, const Options& opts,
                         int level) {
  switch (ep) {
    case Endpoint::Regular: {
      if (!(a < b)) throw std::invalid_argument("integrate: requires a < b");
      return adapt(f, a, b, opts, level, nullptr);
    }
    case Endpoint::SemiInfinite: {
      if (!std::isinf(b)) throw std::invalid_argument("integrate: SemiInfinite requires b = inf");
      // x = a + s/(1-s), dx = ds/(1-s)^2. Nodes so deep that x overflows
      // contribute nothing for any integrable tail; divergent tails keep the
      // error estimate up and exhaust the budget instead.
      auto map = [a](double s) { return a + s / (1.0 - s); };
      ErrFn g = [&f, a](double s) {
        const double om = 1.0 - s;
        const double x = a + s / om;
        if (!(om > 0.0) || !std::isfinite(x)) return EvalPoint{0.0, 0.0};
        const EvalPoint p = f(x);
        const double w = 1.0 / (om * om);
        return EvalPoint{p.value * w, p.carried * w};
      };
      return adapt(g, 0.0, 1.0, opts, level, map);
    }
    case Endpoint::InverseSqrtSingularity: {
      if (!(0.0 <= a && a < b) || !std::isfinite(b)) {
        throw std::invalid_argument("integrate: InverseSqrtSingularity requires 0 <= a < b");
      }
      // z = b sin(theta) regularizes h(z)/sqrt(b^2 - z^2) at z = b.
      const double t0 = std::asin(a / b);
      auto map = [b](double t) { return b * std::sin(t); };
      ErrFn g = [&f, b](double t) {
        const double w = b * std::cos(t);
        const EvalPoint p = f(b * std::sin(t));
        return EvalPoint{p.value * w, p.carried * w};
      };
      return adapt(g, t0, std::asin(1.0), opts, level, map);
    }
  }
  throw std::logic_error("unreachable");
}

void check_levels(const NestedOptions& opts) {
  if (opts.levels.empty() || opts.levels.size() > 3) {
    throw std::invalid_argument("integrate_nested: 1 to 3 levels required");
  }
  for (std::size_t i = 1; i < opts.levels.size(); ++i) {
    const Options& outer = opts.levels[i - 1];
    const Options& inner = opts.levels[i];
    if (!(inner.rel_tol * 10.0 <= outer.rel_tol * (1.0 + 1e-9)) ||
        !(inner.abs_tol <= outer.abs_tol)) {
      throw std::invalid_argument(
          "integrate_nested: inner tolerances must tighten by a factor >= 10");
    }
  }
}

}  // namespace

BadIntegrand::BadIntegrand(double at_, int level_)
    : std::runtime_error("integrand returned a non-finite value at x = " + std::to_string(at_) +
                         " (level " + std::to_string(level_) + ")"),
      at(at_),
      level(level_) {}

NonConvergence::NonConvergence(QuadResult best_, int level_)
    : std::runtime_error("quadrature budget exhausted at level " + std::to_string(level_) +
                         " (best estimate " + std::to_string(best_.value) + " +- " +
                         std::to_string(best_.abs_error) + ")"),
      best(best_),
      level(level_) {}

QuadResult integrate(const Integrand1D& f, double a, double b, const Options& opts) {
  ErrFn g = [&f](double x) { return EvalPoint{f.f(x), 0.0}; };
  return integrate_err(g, a, b, f.endpoint, opts, 0);
}

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Options& opts, Endpoint endpoint) {
  return integrate(Integrand1D{f, endpoint}, a, b, opts);
}

double NestedCtx::integrate(const Fn& f, double a, double b, Endpoint ep) {
  const QuadResult r = integrate_result(f, a, b, ep);
  note_inner_error(r.abs_error);
  return r.value;
}

QuadResult NestedCtx::integrate_result(const Fn& f, double a, double b, Endpoint ep) {
  if (level_ >= static_cast<int>(opts_->levels.size())) {
    throw std::invalid_argument("integrate_nested: nesting deeper than configured levels");
  }
  ErrFn g = [this, &f](double x) {
    double carried = 0.0;
    NestedCtx sub(*opts_, level_ + 1, &carried);
    const double v = f(x, sub);
    return EvalPoint{v, carried};
  };
  return integrate_err(g, a, b, ep, opts_->levels[level_], level_);
}

void NestedCtx::note_inner_error(double abs_err) { *carried_ += std::abs(abs_err); }

QuadResult integrate_nested(const NestedCtx::Fn& outer, double a, double b, Endpoint ep,
                            const NestedOptions& opts) {
  check_levels(opts);
  ErrFn g = [&outer, &opts](double x) {
    double carried = 0.0;
    NestedCtx ctx(opts, 1, &carried);
    const double v = outer(x, ctx);
    return EvalPoint{v, carried};
  };
  return integrate_err(g, a, b, ep, opts.levels[0], 0);
}

}  // namespace coxcell::quad
