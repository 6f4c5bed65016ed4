#pragma once

#include <cstdint>
#include <utility>

#include <Eigen/Cholesky>

#include "ellip/objective.hpp"

namespace ellip {

// f(x) = 0.5 x'Ax - b'x + c with A symmetric positive definite.
//
// Construction verifies symmetry and attempts a Cholesky factorization; the
// extreme eigenvalues of A become mu and L.
class QuadraticProblem final : public Objective {
 public:
  QuadraticProblem(Matrix a, Vector b, double c = 0.0);

  Eigen::Index dim() const override { return b_.size(); }
  double mu() const override { return mu_; }
  double lip() const override { return lip_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_grad(const Vector& x, Vector& grad) const override;

  const QuadraticProblem* quadratic_view() const override { return this; }
  std::unique_ptr<Restriction> restrict_to(const Vector& x, const Matrix& directions) const override;

  const Matrix& a() const { return a_; }
  const Vector& b() const { return b_; }
  double c() const { return c_; }

  /// Solves Ax = b with the stored factorization.
  Vector minimizer() const { return llt_.solve(b_); }

  /// v'Av.
  double curvature(const Vector& v) const { return v.dot(a_ * v); }

 private:
  Matrix a_;
  Vector b_;
  double c_;
  Eigen::LLT<Matrix> llt_;
  double mu_ = 0.0;
  double lip_ = 0.0;
};

std::pair<double, Vector> quadratic_eval_grad(const QuadraticProblem& p, const Vector& x);

/// Random SPD instance: A = Q diag(lambda) Q' with Q a Haar-like orthogonal
/// factor and lambda log-spaced on [1, kappa]; b standard normal, c = 0.
QuadraticProblem generate_quadratic(Eigen::Index n, double kappa, std::uint64_t seed);

}  // namespace ellip
