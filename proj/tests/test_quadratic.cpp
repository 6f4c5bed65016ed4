#include <doctest.h>

#include "ellip/errors.hpp"
#include "ellip/quadratic.hpp"
#include "ellip/rng.hpp"
#include "oracles.hpp"

using namespace ellip;

namespace {

QuadraticProblem diag14(Vector b = Vector::Zero(2)) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 4.0;
  return QuadraticProblem(a, std::move(b));
}

}  // namespace

TEST_CASE("isotropic value and gradient") {
  const QuadraticProblem p(Matrix::Identity(2, 2), Vector::Zero(2));
  const auto [val, grad] = quadratic_eval_grad(p, Vector{{3.0, 4.0}});
  CHECK(val == 12.5);
  CHECK(grad == Vector{{3.0, 4.0}});
  CHECK(p.mu() == doctest::Approx(1.0));
  CHECK(p.lip() == doctest::Approx(1.0));
}

TEST_CASE("diag(1,4) at (1,1)") {
  const QuadraticProblem p = diag14();
  const auto [val, grad] = quadratic_eval_grad(p, Vector{{1.0, 1.0}});
  CHECK(val == 2.5);
  CHECK(grad == Vector{{1.0, 4.0}});
  CHECK(p.kappa() == doctest::Approx(4.0));
}

TEST_CASE("gradient vanishes at the minimizer") {
  const QuadraticProblem p = diag14(Vector{{1.0, 1.0}});
  const Vector x = p.minimizer();
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(0.25));
  CHECK(p.gradient(x).norm() < 1e-15);
  CHECK(p.value(x) == doctest::Approx(-0.625));
}

TEST_CASE("value_grad agrees with value and gradient") {
  const QuadraticProblem p = generate_quadratic(7, 20.0, 3);
  GaussianStream rng(11);
  const Vector x = rng.normal_vector(7);
  Vector g;
  const double v = p.value_grad(x, g);
  CHECK(v == p.value(x));
  CHECK((g - p.gradient(x)).norm() == 0.0);
  CHECK(v == doctest::Approx(static_cast<double>(oracle::quad_value(p.a(), p.b(), p.c(), x))).epsilon(1e-13));
}

TEST_CASE("gradient against finite differences at 20 points") {
  const QuadraticProblem p = generate_quadratic(12, 50.0, 5);
  GaussianStream rng(99);
  for (int i = 0; i < 20; ++i) {
    const Vector x = rng.normal_vector(12);
    const Vector fd =
        oracle::fd_gradient([&](const Vector& z) { return oracle::quad_value(p.a(), p.b(), p.c(), z); }, x, 1e-4);
    CHECK(oracle::rel_err(p.gradient(x), fd) <= 1e-6);
  }
}

TEST_CASE("generated instance has the requested spectrum") {
  for (double kappa : {2.0, 10.0, 1000.0}) {
    const QuadraticProblem p = generate_quadratic(9, kappa, 17);
    CHECK(p.mu() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(p.lip() == doctest::Approx(kappa).epsilon(1e-10));
    CHECK((p.a() - p.a().transpose()).norm() == 0.0);
  }
}

TEST_CASE("generation is deterministic per seed") {
  const QuadraticProblem a = generate_quadratic(6, 10.0, 1);
  const QuadraticProblem b = generate_quadratic(6, 10.0, 1);
  const QuadraticProblem c = generate_quadratic(6, 10.0, 2);
  CHECK(a.a() == b.a());
  CHECK(a.b() == b.b());
  CHECK(a.a() != c.a());
}

TEST_CASE("plane restriction matches direct evaluation") {
  const QuadraticProblem p = generate_quadratic(8, 30.0, 4);
  GaussianStream rng(5);
  const Vector x = rng.normal_vector(8);
  Matrix d(8, 2);
  d.col(0) = rng.normal_vector(8);
  d.col(1) = rng.normal_vector(8);
  const auto r = p.restrict_to(x, d);
  SubspaceCoeffs c(2);
  c << 0.3, -1.7;
  SubspaceCoeffs g(2);
  const double v = r->value_grad(c, g);
  const Vector z = x + d * Eigen::Vector2d(c[0], c[1]);
  CHECK(v == doctest::Approx(p.value(z)).epsilon(1e-12));
  const Vector full = p.gradient(z);
  CHECK(g[0] == doctest::Approx(full.dot(d.col(0))).epsilon(1e-11));
  CHECK(g[1] == doctest::Approx(full.dot(d.col(1))).epsilon(1e-11));
}

TEST_CASE("invalid quadratics are rejected") {
  Matrix nonsym(2, 2);
  nonsym << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(QuadraticProblem(nonsym, Vector::Zero(2)), InvalidArgument);
  Matrix indefinite(2, 2);
  indefinite << 1.0, 0.0, 0.0, -1.0;
  CHECK_THROWS_AS(QuadraticProblem(indefinite, Vector::Zero(2)), InvalidArgument);
  CHECK_THROWS_AS(QuadraticProblem(Matrix::Identity(2, 2), Vector::Zero(3)), InvalidArgument);
  const QuadraticProblem p = diag14();
  CHECK_THROWS_AS(p.value(Vector::Zero(3)), InvalidArgument);
  CHECK_THROWS_AS(generate_quadratic(4, 0.5, 1), InvalidArgument);
}
