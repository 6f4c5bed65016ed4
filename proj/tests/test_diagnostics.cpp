#include <doctest.h>

#include <cmath>
#include <sstream>

#include "ellip/diagnostics.hpp"
#include "ellip/errors.hpp"
#include "ellip/logreg.hpp"
#include "ellip/quadratic.hpp"
#include "ellip/rng.hpp"

using namespace ellip;

namespace {

QuadraticProblem diag14() {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 4.0;
  return QuadraticProblem(a, Vector::Zero(2));
}

double reference_f_star(const Objective& f) {
  SolverConfig cfg;
  cfg.eps = 1e-12;
  return run_fast_gd(f, Vector::Zero(f.dim()), cfg).final_record().f_val;
}

}  // namespace

TEST_CASE("rate constants") {
  CHECK(eta_universal(100.0) == doctest::Approx(0.99));
  CHECK(eta_star(100.0) == doctest::Approx(99.0 / 101.0));
  CHECK(eta_bar(100.0, 1.0) == doctest::Approx(0.9801730).epsilon(1e-7));
  CHECK(eta_bar(100.0, 0.0) == eta_star(100.0));
}

TEST_CASE("sandwich at kappa 2") {
  const double bar = eta_bar(2.0, 1.0);
  CHECK(bar == doctest::Approx(1.0 / 3.0 - 1.0 / 16.0));
  CHECK(bar == doctest::Approx(0.270833).epsilon(1e-6));
  CHECK(eta_star(2.0) * eta_star(2.0) < bar);
  CHECK(bar < eta_star(2.0));
}

TEST_CASE("gd 1/L ratios on diag(1,4) stay below 3/4") {
  const RunTrace t = run_gd_l(diag14(), Vector{{1.0, 1.0}});
  const auto ratios = contraction_ratios(t, 0.0);
  REQUIRE_FALSE(ratios.empty());
  int counted = 0;
  for (const auto& r : ratios) {
    if (!r) continue;
    ++counted;
    CHECK(*r <= 0.75 + 1e-12);
  }
  CHECK(counted > 0);
}

TEST_CASE("ratio edge cases") {
  const QuadraticProblem p = diag14();
  const RunTrace me = run_me(p, Vector{{1.0, 1.0}});
  const auto ratios = contraction_ratios(me, 0.0);
  REQUIRE(ratios.size() == 1);
  REQUIRE(ratios[0].has_value());
  CHECK(*ratios[0] <= 1e-15);
  CHECK(contraction_ratios(run_me(p, Vector::Zero(2)), 0.0).empty());
  CHECK_THROWS_AS(contraction_ratios(me, 3.0), InvalidArgument);
  const std::vector<double> gaps{4.0, 1.0, 0.0, 0.0};
  const auto from_gaps = contraction_ratios(std::span<const double>(gaps), 0.0);
  REQUIRE(from_gaps.size() == 3);
  CHECK(*from_gaps[0] == 0.25);
  CHECK(*from_gaps[1] == 0.0);
  CHECK_FALSE(from_gaps[2].has_value());
}

TEST_CASE("certificate on a logistic run") {
  const LogRegProblem p = generate_logreg(100, 50, 100.0, 42);
  SolverConfig cfg;
  cfg.record_vectors = true;
  const RunTrace t = run_me(p, Vector::Zero(100), cfg);
  REQUIRE(t.status == RunStatus::kConverged);
  const double f_star = std::min(reference_f_star(p), t.final_record().f_val);
  const RateAudit audit = certify_rates(t, f_star, p.mu(), p.lip());
  CHECK(audit.report.pass());
  CHECK(audit.certificate.kappa == doctest::Approx(100.0));
  REQUIRE(audit.certificate.c_min.has_value());
  CHECK(*audit.certificate.c_min > 0.0);
  CHECK(audit_orthogonality(t.steps, cfg.inner_tol, p.lip()).pass());
  CHECK(audit_bh_descent(t, p.lip()).pass());
  CHECK(audit_level_set(t).pass());
  CHECK(audit_monotone(t).pass());
  CHECK(audit_outer_accounting(t).pass());
  CHECK_THROWS_AS(certify_rates(run_gd_l(p, Vector::Zero(100)), f_star, p.mu(), p.lip()), InvalidArgument);
}

TEST_CASE("orthogonality on quadratic newton steps") {
  const QuadraticProblem p = generate_quadratic(20, 50.0, 9);
  SolverConfig cfg;
  cfg.record_vectors = true;
  cfg.max_outer = 10;
  GaussianStream rng(4);
  const RunTrace t = run_me(p, rng.normal_vector(20), cfg);
  for (const StepDetail& s : t.steps) {
    REQUIRE(s.li);
    CHECK(std::abs(s.grad_next.dot(s.v)) <= 1e-10 * s.v.squaredNorm());
    CHECK(std::abs(s.grad_next.dot(s.w)) <= 1e-10 * s.v.squaredNorm());
  }
  CHECK(audit_orthogonality(t.steps, cfg.inner_tol, p.lip()).pass());
  CHECK_THROWS_AS(audit_orthogonality(run_me(p, rng.normal_vector(20)).steps, 1e-12, p.lip()), InvalidArgument);
}

TEST_CASE("segment steps are skipped by the orthogonality audit") {
  SolverConfig cfg;
  cfg.record_vectors = true;
  const RunTrace t = run_me(QuadraticProblem(Matrix::Identity(3, 3), Vector::Zero(3)), Vector{{1.0, 0.0, 0.0}}, cfg);
  REQUIRE(t.steps.size() == 1);
  CHECK_FALSE(t.steps[0].li);
  CHECK(audit_orthogonality(t.steps, 1e-12, 1.0).empty());
}

TEST_CASE("dominance") {
  const QuadraticProblem p = generate_quadratic(10, 40.0, 2);
  GaussianStream rng(8);
  for (int i = 0; i < 20; ++i) CHECK(audit_dominance(p, rng.normal_vector(10)).pass);
  const DominanceResult iso = audit_dominance(QuadraticProblem(Matrix::Identity(3, 3), Vector::Zero(3)),
                                              Vector{{1.0, 2.0, 3.0}});
  CHECK(iso.pass);
  CHECK(iso.f_me == doctest::Approx(iso.f_gd));
  const LogRegProblem q = generate_logreg(30, 15, 100.0, 1);
  CHECK(audit_dominance(q, Vector::Zero(30)).pass);
}

TEST_CASE("theoretical iteration bound") {
  CHECK(theoretical_iteration_bound(100.0, 1.0, 1e-12) == 1382);
  CHECK(theoretical_iteration_bound(100.0, 5.0, 5.0) == 0);
  CHECK(theoretical_iteration_bound(1.0001, 1.0, 1e-12) <= 3);
  CHECK(theoretical_iteration_bound(1.0, 1.0, 1e-12) == 0);
  CHECK_THROWS_AS(theoretical_iteration_bound(100.0, 0.0, 1e-3), InvalidArgument);
}

TEST_CASE("standard inequalities and finite differences") {
  const LogRegProblem p = generate_logreg(25, 12, 20.0, 6);
  const double f_star = reference_f_star(p);
  GaussianStream rng(10);
  std::vector<Vector> points;
  for (int i = 0; i < 10; ++i) points.push_back(rng.normal_vector(25));
  CHECK(audit_standard_inequalities(p, f_star, points).pass());
  CHECK(audit_gradient_fd(p, points).pass());
}

TEST_CASE("report bookkeeping") {
  AuditReport r;
  CHECK(r.empty());
  CHECK(r.pass());
  r.add("a", 1, 1.0, 2.0);
  r.add("a", 2, 2.0, 2.0);
  r.add("a", 3, 2.0, 2.0, true);
  r.add("b", 1, 0.0, 1.0);
  CHECK_FALSE(r.pass());
  const auto s = r.summary();
  REQUIRE(s.size() == 2);
  CHECK(s[0].checked == 3);
  CHECK(s[0].failed == 1);
  CHECK(s[0].worst_slack == 0.0);
  CHECK(r.to_text().find("FAIL  a") != std::string::npos);
  std::ostringstream csv;
  r.write_csv(csv);
  CHECK(csv.str().rfind("audit,step,value,bound,slack,pass\n", 0) == 0);
}
