#include "ellip/plane2d.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/LU>

#include "ellip/errors.hpp"

namespace ellip {

namespace {

// Armijo test along -g, with the approximate form of Hager and Zhang once the
// change in F is at rounding level: for a locally quadratic F,
// F(c - s g) - F(c) ~ -s (|g|^2 + g'g_trial) / 2, so the Armijo inequality
// becomes g'g_trial >= -(1 - 2 c1) |g|^2, which needs no value differences.
bool sufficient_decrease(double value, double trial_value, double step, double slope, double g_dot_trial,
                         double c1) {
  if (trial_value <= value - c1 * step * slope) return true;
  const bool at_rounding_level = std::abs(trial_value - value) <= 1e-10 * std::max(1.0, std::abs(value));
  return at_rounding_level && g_dot_trial >= -(1.0 - 2.0 * c1) * slope;
}

}  // namespace

PlaneSubproblem PlaneSubproblem::make(Vector base, Vector v, Vector w, double lip) {
  if (v.size() != base.size() || w.size() != base.size()) throw InvalidArgument("PlaneSubproblem: dimension mismatch");
  PlaneSubproblem sp;
  sp.gram << v.squaredNorm(), v.dot(w), v.dot(w), w.squaredNorm();
  sp.sin2_theta = sin2_between(v, w);
  sp.lip_bound = lip * (sp.gram(0, 0) + sp.gram(1, 1));
  sp.base = std::move(base);
  sp.v = std::move(v);
  sp.w = std::move(w);
  return sp;
}

double sin2_between(const Vector& v, const Vector& w) {
  const double vv = v.squaredNorm();
  const double ww = w.squaredNorm();
  if (!(vv > 0.0) || !(ww > 0.0)) return 0.0;
  const Vector residual = w - (v.dot(w) / vv) * v;
  return std::clamp(residual.squaredNorm() / ww, 0.0, 1.0);
}

std::pair<double, Eigen::Vector2d> restricted_value_grad(Oracle& f, const PlaneSubproblem& sp, double alpha,
                                                         double beta) {
  const Vector p = sp.base + alpha * sp.v + beta * sp.w;
  Vector g;
  const double value = f.value_grad(p, g);
  return {value, Eigen::Vector2d(g.dot(sp.v), g.dot(sp.w))};
}

PlaneSolution solve_newton_quadratic(const QuadraticProblem& p, const PlaneSubproblem& sp) {
  if (sp.base.size() != p.dim()) throw InvalidArgument("solve_newton_quadratic: dimension mismatch");
  const Vector av = p.a() * sp.v;
  const Vector aw = p.a() * sp.w;
  Eigen::Matrix2d hessian;
  hessian << sp.v.dot(av), sp.v.dot(aw), sp.v.dot(aw), sp.w.dot(aw);
  const double det = hessian.determinant();
  if (!(det > 1e-15 * hessian(0, 0) * hessian(1, 1))) throw DegeneratePlane("solve_newton_quadratic: singular plane");

  // grad F(c) = G'(grad f(x) + A G c), G = [v w].
  const Eigen::Matrix2d inverse = hessian.inverse();
  auto projected_gradient = [&](const Vector& point) {
    const Vector g = p.gradient(point);
    return Eigen::Vector2d(g.dot(sp.v), g.dot(sp.w));
  };
  Eigen::Vector2d coeffs = -inverse * Eigen::Vector2d(sp.gram(0, 0), sp.gram(0, 1));
  Vector x_next = sp.base + coeffs[0] * sp.v + coeffs[1] * sp.w;
  coeffs -= inverse * projected_gradient(x_next);
  x_next = sp.base + coeffs[0] * sp.v + coeffs[1] * sp.w;

  PlaneSolution out;
  out.alpha = coeffs[0];
  out.beta = coeffs[1];
  out.inner_grad_norm = projected_gradient(x_next).norm();
  out.x_next = std::move(x_next);
  out.inner_iters = 1;
  return out;
}

double inner_scale(const PlaneSubproblem& sp) { return std::sqrt(std::max(sp.gram(0, 0), sp.gram(1, 1))); }

PlaneSolution solve_gd_armijo(Oracle& f, const PlaneSubproblem& sp, const InnerSolverOptions& options) {
  if (!(options.tol > 0.0) || options.max_inner < 1) throw InvalidArgument("solve_gd_armijo: bad options");
  if (!(sp.lip_bound > 0.0)) throw DegeneratePlane("solve_gd_armijo: zero plane");

  const std::int64_t grads_before = f.counts().gradients;
  Matrix directions(sp.base.size(), 2);
  directions.col(0) = sp.v;
  directions.col(1) = sp.w;
  const CountedRestriction plane = f.restrict_to(sp.base, directions);

  const double target = options.tol * inner_scale(sp);
  const double base_step = 1.0 / sp.lip_bound;

  SubspaceCoeffs c = SubspaceCoeffs::Zero(2);
  SubspaceCoeffs grad(2);
  double value = plane.value_grad(c, grad);
  SubspaceCoeffs prev_c;
  SubspaceCoeffs prev_grad;
  bool have_prev = false;

  int iters = 0;
  while (grad.norm() > target && iters < options.max_inner) {
    double step = base_step;
    if (options.step_rule == InnerStepRule::kBarzilaiBorwein && have_prev) {
      const SubspaceCoeffs s = c - prev_c;
      const SubspaceCoeffs y = grad - prev_grad;
      const double sy = s.dot(y);
      if (sy > 0.0 && std::isfinite(sy)) step = std::max(s.squaredNorm() / sy, base_step);
    }
    const double slope = grad.squaredNorm();
    SubspaceCoeffs trial;
    SubspaceCoeffs trial_grad(2);
    double trial_value = 0.0;
    bool accepted = false;
    for (int k = 0; k < 200; ++k) {
      trial = c - step * grad;
      trial_value = plane.value_grad(trial, trial_grad);
      if (sufficient_decrease(value, trial_value, step, slope, grad.dot(trial_grad), options.armijo_c)) {
        accepted = true;
        break;
      }
      step *= options.armijo_shrink;
    }
    ++iters;
    if (!accepted) break;
    prev_c = c;
    prev_grad = grad;
    have_prev = true;
    c = trial;
    grad = trial_grad;
    value = trial_value;
  }

  const double gnorm = grad.norm();
  if (gnorm > 1e3 * target)
    throw InnerStall("solve_gd_armijo: inner solver stalled at |grad F| = " + std::to_string(gnorm));

  PlaneSolution out;
  out.alpha = c[0];
  out.beta = c[1];
  out.x_next = sp.base + out.alpha * sp.v + out.beta * sp.w;
  out.inner_grad_norm = gnorm;
  out.inner_iters = iters;
  out.grad_evals = f.counts().gradients - grads_before;
  return out;
}

Vector segment_minimizer(Oracle& f, const Vector& x, const Vector& y) {
  if (x.size() != y.size() || x.size() != f.objective().dim())
    throw InvalidArgument("segment_minimizer: dimension mismatch");
  const Vector d = y - x;
  if (!(d.squaredNorm() > 0.0)) return x;
  const CountedRestriction line = f.restrict_to(x, d);
  auto phi = [&](double lambda) {
    SubspaceCoeffs c(1);
    c[0] = lambda;
    return line.value(c);
  };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0;
  double b = 1.0;
  double c1 = b - inv_phi * (b - a);
  double c2 = a + inv_phi * (b - a);
  double f1 = phi(c1);
  double f2 = phi(c2);
  while (b - a > 1e-12) {
    if (f1 <= f2) {
      b = c2;
      c2 = c1;
      f2 = f1;
      c1 = b - inv_phi * (b - a);
      f1 = phi(c1);
    } else {
      a = c1;
      c1 = c2;
      f1 = f2;
      c2 = a + inv_phi * (b - a);
      f2 = phi(c2);
    }
  }
  double best = f1 <= f2 ? c1 : c2;
  const double best_value = std::min(f1, f2);
  // The midpoint is exact for quadratics; keep it when golden section cannot
  // resolve the flat bottom any better.
  if (phi(0.5) <= best_value) best = 0.5;
  return x + best * d;
}

}  // namespace ellip
