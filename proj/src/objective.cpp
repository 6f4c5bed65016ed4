#include "ellip/objective.hpp"

#include <string>

#include "ellip/errors.hpp"

namespace ellip {

namespace {

class PointwiseRestriction final : public Restriction {
 public:
  PointwiseRestriction(const Objective& f, const Vector& x, const Matrix& directions)
      : f_(f), base_(x), directions_(directions) {}

  Eigen::Index size() const override { return directions_.cols(); }

  double value(const SubspaceCoeffs& c) const override { return f_.value(base_ + directions_ * c); }

  double value_grad(const SubspaceCoeffs& c, SubspaceCoeffs& grad) const override {
    Vector g;
    const double val = f_.value_grad(base_ + directions_ * c, g);
    grad = directions_.transpose() * g;
    return val;
  }

 private:
  const Objective& f_;
  Vector base_;
  Matrix directions_;
};

}  // namespace

double Objective::value_grad(const Vector& x, Vector& grad) const {
  grad = gradient(x);
  return value(x);
}

std::unique_ptr<Restriction> Objective::restrict_to(const Vector& x, const Matrix& directions) const {
  check_dim(x);
  if (directions.rows() != dim() || directions.cols() < 1 || directions.cols() > 2)
    throw InvalidArgument("restrict_to: directions must be dim x 1 or dim x 2");
  return std::make_unique<PointwiseRestriction>(*this, x, directions);
}

void Objective::check_dim(const Vector& x) const {
  if (x.size() != dim())
    throw InvalidArgument("dimension mismatch: expected " + std::to_string(dim()) + ", got " +
                          std::to_string(x.size()));
}

}  // namespace ellip
