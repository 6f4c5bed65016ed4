#include "ellip/logreg.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <string>

#include "ellip/errors.hpp"
#include "ellip/format.hpp"
#include "ellip/rng.hpp"

namespace ellip {

namespace {

// Margins u_i = a_i'x are precomputed for the base point and each direction,
// so one restricted evaluation costs O(m) instead of O(mn).
class LogRegRestriction final : public Restriction {
 public:
  LogRegRestriction(const LogRegProblem& p, const Vector& x, const Matrix& directions)
      : labels_(p.labels()), mu_(p.mu()) {
    base_margins_ = p.data() * x;
    dir_margins_ = p.data() * directions;
    x_dot_dir_ = directions.transpose() * x;
    dir_gram_ = directions.transpose() * directions;
    x_sq_ = x.squaredNorm();
  }

  Eigen::Index size() const override { return x_dot_dir_.size(); }

  double value(const SubspaceCoeffs& c) const override {
    const Eigen::Index m = labels_.size();
    double loss = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double u = base_margins_[i] + dir_margins_.row(i).dot(c);
      loss += softplus(-labels_[i] * u);
    }
    return loss / static_cast<double>(m) + 0.5 * mu_ * squared_norm(c);
  }

  double value_grad(const SubspaceCoeffs& c, SubspaceCoeffs& grad) const override {
    const Eigen::Index m = labels_.size();
    double loss = 0.0;
    grad.setZero(size());
    for (Eigen::Index i = 0; i < m; ++i) {
      const double z = -labels_[i] * (base_margins_[i] + dir_margins_.row(i).dot(c));
      loss += softplus(z);
      grad -= (labels_[i] * sigmoid(z)) * dir_margins_.row(i).transpose();
    }
    const double inv_m = 1.0 / static_cast<double>(m);
    grad = grad * inv_m + mu_ * (x_dot_dir_ + dir_gram_ * c);
    return loss * inv_m + 0.5 * mu_ * squared_norm(c);
  }

 private:
  // |x + Dc|^2
  double squared_norm(const SubspaceCoeffs& c) const { return x_sq_ + 2.0 * x_dot_dir_.dot(c) + c.dot(dir_gram_ * c); }

  const Vector& labels_;
  double mu_;
  Vector base_margins_;
  Matrix dir_margins_;
  SubspaceCoeffs x_dot_dir_;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, 0, 2, 2> dir_gram_;
  double x_sq_ = 0.0;
};

}  // namespace

double softplus(double u) { return std::max(u, 0.0) + std::log1p(std::exp(-std::abs(u))); }

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

LogRegProblem::LogRegProblem(Matrix data, Vector labels, double mu)
    : data_(std::move(data)), labels_(std::move(labels)), mu_(mu) {
  if (data_.rows() < 1 || data_.cols() < 1) throw InvalidArgument("LogRegProblem: empty data");
  if (labels_.size() != data_.rows()) throw InvalidArgument("LogRegProblem: need one label per row");
  for (Eigen::Index i = 0; i < labels_.size(); ++i)
    if (labels_[i] != 1.0 && labels_[i] != -1.0) throw InvalidArgument("LogRegProblem: labels must be +1 or -1");
  if (!(mu_ > 0.0) || !std::isfinite(mu_)) throw InvalidArgument("LogRegProblem: mu must be positive");
  lip_ = smoothness_bound(data_, mu_);
}

double LogRegProblem::value(const Vector& x) const {
  check_dim(x);
  const Vector margins = data_ * x;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) loss += softplus(-labels_[i] * margins[i]);
  return loss / static_cast<double>(samples()) + 0.5 * mu_ * x.squaredNorm();
}

Vector LogRegProblem::gradient(const Vector& x) const {
  Vector g;
  value_grad(x, g);
  return g;
}

double LogRegProblem::value_grad(const Vector& x, Vector& grad) const {
  check_dim(x);
  const Vector margins = data_ * x;
  Vector weights(margins.size());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i) {
    const double z = -labels_[i] * margins[i];
    loss += softplus(z);
    weights[i] = -labels_[i] * sigmoid(z);
  }
  const double inv_m = 1.0 / static_cast<double>(samples());
  grad = inv_m * (data_.transpose() * weights) + mu_ * x;
  return loss * inv_m + 0.5 * mu_ * x.squaredNorm();
}

std::unique_ptr<Restriction> LogRegProblem::restrict_to(const Vector& x, const Matrix& directions) const {
  check_dim(x);
  if (directions.rows() != dim() || directions.cols() < 1 || directions.cols() > 2)
    throw InvalidArgument("restrict_to: directions must be dim x 1 or dim x 2");
  return std::make_unique<LogRegRestriction>(*this, x, directions);
}

std::pair<double, Vector> logreg_eval_grad(const LogRegProblem& p, const Vector& x) {
  Vector g;
  const double val = p.value_grad(x, g);
  return {val, std::move(g)};
}

double smoothness_bound(const Matrix& data, double mu) {
  return data.squaredNorm() / (4.0 * static_cast<double>(data.rows())) + mu;
}

double smoothness_bound(const LogRegProblem& p) { return smoothness_bound(p.data(), p.mu()); }

double mu_for_kappa(const Matrix& data, double kappa) {
  if (!(kappa > 1.0) || !std::isfinite(kappa)) throw InvalidArgument("mu_for_kappa: kappa must exceed 1");
  if (data.rows() < 1) throw InvalidArgument("mu_for_kappa: empty data");
  const double total = data.squaredNorm();
  if (!(total > 0.0)) throw InvalidArgument("mu_for_kappa: data is identically zero");
  return total / (4.0 * static_cast<double>(data.rows()) * (kappa - 1.0));
}

LogRegProblem generate_logreg(Eigen::Index n, Eigen::Index m, double kappa, std::uint64_t seed) {
  if (n < 1 || m < 1) throw InvalidArgument("generate_logreg: n and m must be positive");
  GaussianStream rng(seed);
  Matrix data = rng.normal_matrix(m, n);
  Vector labels(m);
  for (Eigen::Index i = 0; i < m; ++i) labels[i] = rng.normal() < 0.0 ? -1.0 : 1.0;
  const double mu = mu_for_kappa(data, kappa);
  return LogRegProblem(std::move(data), std::move(labels), mu);
}

void write_logreg(std::ostream& out, const LogRegProblem& p) {
  const Matrix& a = p.data();
  out << a.cols() << ' ' << a.rows() << ' ' << format_double(p.mu()) << '\n';
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(a(i, j));
    }
    out << '\n';
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (i > 0) out << ' ';
    out << (p.labels()[i] > 0 ? "1" : "-1");
  }
  out << '\n';
}

LogRegProblem read_logreg(std::istream& in) {
  std::string token;
  auto next = [&]() -> const std::string& {
    if (!(in >> token)) throw InvalidArgument("read_logreg: unexpected end of input");
    return token;
  };
  const double n_raw = parse_double(next());
  const double m_raw = parse_double(next());
  if (n_raw < 1 || m_raw < 1 || n_raw != std::floor(n_raw) || m_raw != std::floor(m_raw))
    throw InvalidArgument("read_logreg: n and m must be positive integers");
  const auto n = static_cast<Eigen::Index>(n_raw);
  const auto m = static_cast<Eigen::Index>(m_raw);
  const double mu = parse_double(next());
  Matrix data(m, n);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < n; ++j) data(i, j) = parse_double(next());
  Vector labels(m);
  for (Eigen::Index i = 0; i < m; ++i) labels[i] = parse_double(next());
  return LogRegProblem(std::move(data), std::move(labels), mu);
}

}  // namespace ellip
