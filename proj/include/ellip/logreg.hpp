#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>

#include "ellip/objective.hpp"

namespace ellip {

// l2-regularized logistic loss
//   f(x) = (1/m) sum_i log(1 + exp(-b_i a_i'x)) + (mu/2)|x|^2
// with rows a_i of `data` and labels b_i in {-1, +1}.
//
// lip() is the data bound (1/(4m)) sum_i |a_i|^2 + mu, not the exact
// largest Hessian eigenvalue.
class LogRegProblem final : public Objective {
 public:
  LogRegProblem(Matrix data, Vector labels, double mu);

  Eigen::Index dim() const override { return data_.cols(); }
  double mu() const override { return mu_; }
  double lip() const override { return lip_; }

  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  double value_grad(const Vector& x, Vector& grad) const override;

  std::unique_ptr<Restriction> restrict_to(const Vector& x, const Matrix& directions) const override;

  const Matrix& data() const { return data_; }
  const Vector& labels() const { return labels_; }
  Eigen::Index samples() const { return data_.rows(); }

 private:
  Matrix data_;
  Vector labels_;
  double mu_;
  double lip_;
};

/// log(1 + e^u) without overflow.
double softplus(double u);
/// 1 / (1 + e^-u) without overflow.
double sigmoid(double u);

std::pair<double, Vector> logreg_eval_grad(const LogRegProblem& p, const Vector& x);

double smoothness_bound(const Matrix& data, double mu);
double smoothness_bound(const LogRegProblem& p);

/// mu such that smoothness_bound(data, mu) / mu == kappa.
double mu_for_kappa(const Matrix& data, double kappa);

/// Gaussian rows, labels = sign of an independent Gaussian (+1 on ties),
/// mu from mu_for_kappa. Draw order: data row-major, then labels.
LogRegProblem generate_logreg(Eigen::Index n, Eigen::Index m, double kappa, std::uint64_t seed);

// Plain-text instance format:
//   line 1:        n m mu
//   next m lines:  n floats (row a_i)
//   last line(s):  m labels
// Floats use '.' decimals and 17 significant digits.
void write_logreg(std::ostream& out, const LogRegProblem& p);
LogRegProblem read_logreg(std::istream& in);

}  // namespace ellip
