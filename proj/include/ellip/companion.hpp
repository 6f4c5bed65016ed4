#pragma once

#include <cstdint>

#include "ellip/objective.hpp"
#include "ellip/quadratic.hpp"

namespace ellip {

/// Second intersection y = x - t v of the ray along -grad f(x) with the level
/// set {f = f(x)}.
struct CompanionResult {
  double t = 0.0;
  Vector y;
  double level_residual = 0.0;  ///< |f(y) - f(x)| / max(1, |f(x)|)
  int bisection_iters = 0;
  std::int64_t eval_count = 0;  ///< value evaluations consumed
};

struct Bracket {
  double t_lo = 0.0;  ///< g(t_lo) < g(0)
  double t_hi = 0.0;  ///< g(t_hi) > g(0)
};

inline constexpr int kMaxDoublings = 200;
inline constexpr int kMaxBisections = 200;

/// Brackets the positive root of g(t) = g(0), g(t) = f(x - t v), by doubling
/// from t_init. A non-positive t_init selects 2/L.
Bracket bracket_right(Oracle& f, const Vector& x, const Vector& v, double t_init = 0.0);

/// Bisection on the bracket until the relative level residual is <= tol.
CompanionResult companion_point_bisection(Oracle& f, const Vector& x, const Vector& v, double tol = 1e-12,
                                          double t_init = 0.0);

/// 2|v|^2 / (v'Av).
double companion_t_quadratic(const QuadraticProblem& p, const Vector& v);

/// Closed form when f exposes a quadratic view, bisection otherwise.
CompanionResult companion_point(Oracle& f, const Vector& x, const Vector& v, double tol = 1e-12, double t_init = 0.0);

}  // namespace ellip
