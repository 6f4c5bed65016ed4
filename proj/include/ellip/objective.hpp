#pragma once

#include <cstdint>
#include <memory>

#include "ellip/types.hpp"

namespace ellip {

class QuadraticProblem;

// f restricted to the affine subspace {x + D c}, where D has one or two
// columns. Gradients are projected: the result is D^T grad f(x + D c).
class Restriction {
 public:
  virtual ~Restriction() = default;

  virtual Eigen::Index size() const = 0;
  virtual double value(const SubspaceCoeffs& c) const = 0;
  virtual double value_grad(const SubspaceCoeffs& c, SubspaceCoeffs& grad) const = 0;
};

// An L-smooth, mu-strongly convex function with known constants.
//
// Implementations are immutable after construction; value() and gradient()
// are pure and may be called concurrently.
class Objective {
 public:
  virtual ~Objective() = default;

  virtual Eigen::Index dim() const = 0;
  virtual double mu() const = 0;
  virtual double lip() const = 0;

  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
  virtual double value_grad(const Vector& x, Vector& grad) const;

  /// Non-null when f is exactly 0.5 x'Ax - b'x + c.
  virtual const QuadraticProblem* quadratic_view() const { return nullptr; }

  /// Restriction of f to x + span(columns of directions). The default
  /// evaluates f at the full point; families override it with O(m) updates.
  virtual std::unique_ptr<Restriction> restrict_to(const Vector& x, const Matrix& directions) const;

  double kappa() const { return lip() / mu(); }

 protected:
  void check_dim(const Vector& x) const;
};

struct EvalCounts {
  std::int64_t values = 0;
  std::int64_t gradients = 0;
};

class CountedRestriction {
 public:
  CountedRestriction(std::unique_ptr<Restriction> impl, EvalCounts& counts)
      : impl_(std::move(impl)), counts_(&counts) {}

  double value(const SubspaceCoeffs& c) const {
    ++counts_->values;
    return impl_->value(c);
  }
  double value_grad(const SubspaceCoeffs& c, SubspaceCoeffs& grad) const {
    ++counts_->values;
    ++counts_->gradients;
    return impl_->value_grad(c, grad);
  }

 private:
  std::unique_ptr<Restriction> impl_;
  EvalCounts* counts_;
};

// Counts every value and gradient request made against an objective.
// A restricted evaluation counts the same as a full one.
class Oracle {
 public:
  explicit Oracle(const Objective& f) : f_(&f) {}

  const Objective& objective() const { return *f_; }
  const EvalCounts& counts() const { return counts_; }

  double value(const Vector& x) {
    ++counts_.values;
    return f_->value(x);
  }
  Vector gradient(const Vector& x) {
    ++counts_.gradients;
    return f_->gradient(x);
  }
  double value_grad(const Vector& x, Vector& grad) {
    ++counts_.values;
    ++counts_.gradients;
    return f_->value_grad(x, grad);
  }
  CountedRestriction restrict_to(const Vector& x, const Matrix& directions) {
    return CountedRestriction(f_->restrict_to(x, directions), counts_);
  }

 private:
  const Objective* f_;
  EvalCounts counts_;
};

}  // namespace ellip
