#include "ellip/quadratic.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "ellip/errors.hpp"
#include "ellip/rng.hpp"

namespace ellip {

namespace {

// f(x + Dc) = f(x) + c'(D'g) + 0.5 c'(D'AD)c, exact for quadratics.
class QuadraticRestriction final : public Restriction {
 public:
  QuadraticRestriction(const QuadraticProblem& p, const Vector& x, const Matrix& directions) {
    Vector g;
    base_value_ = p.value_grad(x, g);
    linear_ = directions.transpose() * g;
    hessian_ = directions.transpose() * (p.a() * directions);
  }

  Eigen::Index size() const override { return linear_.size(); }

  double value(const SubspaceCoeffs& c) const override {
    return base_value_ + c.dot(linear_) + 0.5 * c.dot(hessian_ * c);
  }

  double value_grad(const SubspaceCoeffs& c, SubspaceCoeffs& grad) const override {
    grad = linear_ + hessian_ * c;
    return value(c);
  }

 private:
  double base_value_ = 0.0;
  SubspaceCoeffs linear_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2> hessian_;
};

}  // namespace

QuadraticProblem::QuadraticProblem(Matrix a, Vector b, double c)
    : a_(std::move(a)), b_(std::move(b)), c_(c) {
  if (a_.rows() != a_.cols() || a_.rows() != b_.size() || b_.size() == 0)
    throw InvalidArgument("QuadraticProblem: A must be n x n and b of length n");
  const double scale = a_.cwiseAbs().maxCoeff();
  if (!((a_ - a_.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * scale))
    throw InvalidArgument("QuadraticProblem: A is not symmetric");
  llt_.compute(a_);
  if (llt_.info() != Eigen::Success) throw InvalidArgument("QuadraticProblem: A is not positive definite");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(a_, Eigen::EigenvaluesOnly);
  mu_ = eig.eigenvalues().minCoeff();
  lip_ = eig.eigenvalues().maxCoeff();
  if (!(mu_ > 0.0)) throw InvalidArgument("QuadraticProblem: A is not positive definite");
}

double QuadraticProblem::value(const Vector& x) const {
  check_dim(x);
  return 0.5 * x.dot(a_ * x) - b_.dot(x) + c_;
}

Vector QuadraticProblem::gradient(const Vector& x) const {
  check_dim(x);
  return a_ * x - b_;
}

double QuadraticProblem::value_grad(const Vector& x, Vector& grad) const {
  check_dim(x);
  const Vector ax = a_ * x;
  grad = ax - b_;
  return 0.5 * x.dot(ax) - b_.dot(x) + c_;
}

std::unique_ptr<Restriction> QuadraticProblem::restrict_to(const Vector& x, const Matrix& directions) const {
  check_dim(x);
  if (directions.rows() != dim() || directions.cols() < 1 || directions.cols() > 2)
    throw InvalidArgument("restrict_to: directions must be dim x 1 or dim x 2");
  return std::make_unique<QuadraticRestriction>(*this, x, directions);
}

std::pair<double, Vector> quadratic_eval_grad(const QuadraticProblem& p, const Vector& x) {
  Vector g;
  const double val = p.value_grad(x, g);
  return {val, std::move(g)};
}

QuadraticProblem generate_quadratic(Eigen::Index n, double kappa, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("generate_quadratic: n must be positive");
  if (!(kappa >= 1.0) || !std::isfinite(kappa)) throw InvalidArgument("generate_quadratic: kappa must be >= 1");
  GaussianStream rng(seed);
  const Matrix gauss = rng.normal_matrix(n, n);
  const Matrix q = Eigen::HouseholderQR<Matrix>(gauss).householderQ();
  Vector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double s = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
    lambda[i] = std::pow(kappa, s);
  }
  Matrix a = q * lambda.asDiagonal() * q.transpose();
  a = 0.5 * (a + a.transpose()).eval();
  Vector b = rng.normal_vector(n);
  return QuadraticProblem(std::move(a), std::move(b), 0.0);
}

}  // namespace ellip
