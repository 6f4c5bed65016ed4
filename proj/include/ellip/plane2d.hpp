#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Core>

#include "ellip/objective.hpp"
#include "ellip/quadratic.hpp"

namespace ellip {

// Minimization of f over the affine plane {x + alpha v + beta w}, where
// v = grad f(x) and w = grad f(y) at the companion point y.
struct PlaneSubproblem {
  Vector base;
  Vector v;
  Vector w;
  Eigen::Matrix2d gram;   ///< [<v,v> <v,w>; <w,v> <w,w>]
  double sin2_theta = 0;  ///< squared sine of the angle between v and w
  double lip_bound = 0;   ///< L (|v|^2 + |w|^2), bounds the Lipschitz constant of grad F

  static PlaneSubproblem make(Vector base, Vector v, Vector w, double lip);
};

struct PlaneSolution {
  double alpha = 0.0;
  double beta = 0.0;
  Vector x_next;
  double inner_grad_norm = 0.0;
  int inner_iters = 0;
  std::int64_t grad_evals = 0;
};

/// How the inner gradient-descent solver picks the first trial step of each
/// Armijo backtracking search.
enum class InnerStepRule {
  kBarzilaiBorwein,  ///< s's / s'y from the previous step, 1/lip_bound when undefined
  kInverseLipschitz  ///< always 1/lip_bound
};

struct InnerSolverOptions {
  double tol = 1e-12;
  int max_inner = 10000;
  InnerStepRule step_rule = InnerStepRule::kBarzilaiBorwein;
  double armijo_shrink = 0.5;
  double armijo_c = 1e-4;
};

/// sin^2 of the angle between v and w via explicit orthogonalization
/// (accurate for nearly parallel vectors). Zero if either vector is zero.
double sin2_between(const Vector& v, const Vector& w);

/// F(alpha, beta) and (<grad f(p), v>, <grad f(p), w>) at p = x + alpha v + beta w.
/// One full gradient evaluation.
std::pair<double, Eigen::Vector2d> restricted_value_grad(Oracle& f, const PlaneSubproblem& sp, double alpha,
                                                         double beta);

/// One Newton step on the exact quadratic F (plus one refinement pass).
/// Throws DegeneratePlane when the 2x2 system is singular.
PlaneSolution solve_newton_quadratic(const QuadraticProblem& p, const PlaneSubproblem& sp);

/// Threshold for the inner stopping test |grad F| <= tol * scale.
double inner_scale(const PlaneSubproblem& sp);

/// Gradient descent with Armijo backtracking on F from (0, 0). Stops when
/// |grad F| <= tol * inner_scale(sp). Throws InnerStall when max_inner is hit
/// with |grad F| > 1e3 * tol * inner_scale(sp).
PlaneSolution solve_gd_armijo(Oracle& f, const PlaneSubproblem& sp, const InnerSolverOptions& options = {});

/// argmin over lambda in [0, 1] of f(x + lambda (y - x)) by golden-section
/// search to width 1e-12; never worse than the midpoint.
Vector segment_minimizer(Oracle& f, const Vector& x, const Vector& y);

}  // namespace ellip
