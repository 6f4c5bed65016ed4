#include "ellip/companion.hpp"

#include <algorithm>
#include <cmath>

#include "ellip/errors.hpp"

namespace ellip {

namespace {

double relative_residual(double g, double g0) { return std::abs(g - g0) / std::max(1.0, std::abs(g0)); }

void check_direction(const Objective& f, const Vector& x, const Vector& v) {
  if (x.size() != f.dim() || v.size() != f.dim()) throw InvalidArgument("companion: dimension mismatch");
  if (!(v.squaredNorm() > 0.0)) throw InvalidArgument("companion: gradient must be nonzero");
}

// g(t) = f(x - t v) on the line restriction; coefficient is -t.
class RayValue {
 public:
  RayValue(Oracle& f, const Vector& x, const Vector& v) : line_(f.restrict_to(x, v)) {}

  double operator()(double t) const {
    SubspaceCoeffs c(1);
    c[0] = -t;
    return line_.value(c);
  }

 private:
  CountedRestriction line_;
};

Bracket bracket_on(const RayValue& g, double g0, double t_init) {
  double t = t_init;
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i <= kMaxDoublings; ++i) {
    const double gt = g(t);
    if (gt > g0) {
      hi = t;
      break;
    }
    if (gt < g0) lo = t;
    t *= 2.0;
  }
  if (hi == 0.0) throw NumericFailure("bracket_right: no point above the level after 200 doublings");

  // The first probe already overshot: shrink toward 0, where g'(0) < 0.
  double s = hi;
  for (int i = 0; lo == 0.0; ++i) {
    if (i > kMaxDoublings) throw NumericFailure("bracket_right: no sub-level point found while halving");
    s *= 0.5;
    const double gs = g(s);
    if (gs < g0)
      lo = s;
    else if (gs > g0)
      hi = s;
  }
  return {lo, hi};
}

double default_t_init(const Objective& f, double t_init) {
  if (t_init > 0.0) return t_init;
  return f.lip() > 0.0 ? 2.0 / f.lip() : 1.0;
}

}  // namespace

Bracket bracket_right(Oracle& f, const Vector& x, const Vector& v, double t_init) {
  check_direction(f.objective(), x, v);
  const RayValue g(f, x, v);
  return bracket_on(g, g(0.0), default_t_init(f.objective(), t_init));
}

CompanionResult companion_point_bisection(Oracle& f, const Vector& x, const Vector& v, double tol, double t_init) {
  check_direction(f.objective(), x, v);
  if (!(tol > 0.0)) throw InvalidArgument("companion_point: tolerance must be positive");
  const std::int64_t values_before = f.counts().values;

  const RayValue g(f, x, v);
  const double g0 = g(0.0);
  auto [left, right] = bracket_on(g, g0, default_t_init(f.objective(), t_init));

  CompanionResult out;
  double t = 0.5 * (left + right);
  double residual = 0.0;
  for (;;) {
    if (out.bisection_iters >= kMaxBisections) throw NumericFailure("companion_point: bisection did not converge");
    ++out.bisection_iters;
    t = 0.5 * (left + right);
    const double gt = g(t);
    residual = relative_residual(gt, g0);
    if (residual <= tol) break;
    if (gt < g0)
      left = t;
    else
      right = t;
    if (right - left < 1e-15 * right) {
      if (residual > tol) throw NumericFailure("companion_point: bracket collapsed above tolerance");
      break;
    }
  }
  out.t = t;
  out.y = x - t * v;
  out.level_residual = residual;
  out.eval_count = f.counts().values - values_before;
  return out;
}

double companion_t_quadratic(const QuadraticProblem& p, const Vector& v) {
  if (v.size() != p.dim()) throw InvalidArgument("companion_t_quadratic: dimension mismatch");
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw InvalidArgument("companion_t_quadratic: gradient must be nonzero");
  const double vav = p.curvature(v);
  if (!(vav > 0.0)) throw InvalidArgument("companion_t_quadratic: v'Av <= 0");
  return 2.0 * vv / vav;
}

CompanionResult companion_point(Oracle& f, const Vector& x, const Vector& v, double tol, double t_init) {
  const QuadraticProblem* quad = f.objective().quadratic_view();
  if (quad == nullptr) return companion_point_bisection(f, x, v, tol, t_init);

  check_direction(f.objective(), x, v);
  if (!(tol > 0.0)) throw InvalidArgument("companion_point: tolerance must be positive");
  const std::int64_t values_before = f.counts().values;
  CompanionResult out;
  out.t = companion_t_quadratic(*quad, v);
  out.y = x - out.t * v;
  const double fx = f.value(x);
  out.level_residual = relative_residual(f.value(out.y), fx);
  out.eval_count = f.counts().values - values_before;
  return out;
}

}  // namespace ellip
