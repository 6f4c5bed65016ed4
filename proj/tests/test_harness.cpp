#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ellip/errors.hpp"
#include "ellip/harness.hpp"
#include "ellip/logreg.hpp"
#include "ellip/quadratic.hpp"

using namespace ellip;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("ellip_harness_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Drops the wall_seconds column.
std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line)) {
    auto cells = split_csv_line(line);
    cells.erase(cells.begin() + 5);
    for (const auto& c : cells) out << c << ',';
    out << '\n';
  }
  return out.str();
}

}  // namespace

TEST_CASE("quadratic reference") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 4.0;
  const QuadraticProblem p(a, Vector{{1.0, 1.0}});
  const ReferenceSolution ref = compute_reference(p);
  REQUIRE(ref.x_star.has_value());
  CHECK((*ref.x_star)[0] == doctest::Approx(1.0));
  CHECK((*ref.x_star)[1] == doctest::Approx(0.25));
  // 0.5 x'Ax - b'x at (1, 1/4).
  CHECK(ref.f_star == doctest::Approx(-0.625));
  CHECK_FALSE(ref.quality_warning);
  const ReferenceSolution zero = compute_reference(QuadraticProblem(Matrix::Identity(3, 3), Vector::Zero(3)));
  CHECK(zero.f_star == 0.0);
  CHECK(zero.x_star->norm() == 0.0);
}

TEST_CASE("logistic reference and cross-solver agreement") {
  ExperimentSpec spec;
  spec.n = 100;
  spec.m = 50;
  spec.kappa = 10.0;
  spec.seed = 5;
  const ExperimentResult r = run_experiment(spec);
  CHECK(r.reference.method == ReferenceSolution::Method::kHighAccuracyRun);
  CHECK_FALSE(r.reference.quality_warning);
  REQUIRE(r.traces.size() == 4);
  for (const RunTrace& t : r.traces) {
    CHECK(t.status == RunStatus::kConverged);
    CHECK(std::abs(t.final_record().f_val - r.f_star) <= 1e-9);
    CHECK(r.f_star <= t.final_record().f_val);
  }
  CHECK(r.rows.size() == 4);
  CHECK(r.row(SolverId::kMe)->grad_evals_outer == r.trace(SolverId::kMe)->final_record().grad_evals_outer);
}

TEST_CASE("two-dimensional quadratic experiment") {
  ExperimentSpec spec;
  spec.problem = ProblemKind::kQuadratic;
  spec.n = 2;
  spec.kappa = 10.0;
  spec.solvers = {SolverId::kMe};
  const ExperimentResult r = run_experiment(spec);
  CHECK(r.row(SolverId::kMe)->iterations <= 2);
  CHECK(r.row(SolverId::kGdL) == nullptr);
}

TEST_CASE("repeated experiments write identical files") {
  ExperimentSpec spec;
  spec.n = 60;
  spec.kappa = 20.0;
  spec.seed = 3;
  const auto first = scratch("a");
  spec.output_dir = first;
  run_experiment(spec);
  spec.output_dir = scratch("b");
  run_experiment(spec);
  for (const char* name : {"trace_me.csv", "trace_gd-exact.csv", "trace_gd-l.csv", "trace_fast-gd.csv",
                           "series_me.csv", "series_fast-gd.csv"}) {
    const std::string a = slurp(first / name);
    CHECK_FALSE(a.empty());
    CHECK(a == slurp(spec.output_dir / name));
  }
  CHECK(strip_timing(slurp(first / "summary.csv")) ==
        strip_timing(slurp(spec.output_dir / "summary.csv")));
}

TEST_CASE("verify passes end to end") {
  ExperimentSpec spec;
  spec.n = 200;
  spec.m = 100;
  spec.kappa = 50.0;
  spec.seed = 7;
  spec.output_dir = scratch("verify");
  const VerifyOutcome v = verify_experiment(spec);
  CHECK(v.report.pass());
  CHECK(v.certificate.c_min.has_value());
  CHECK(std::filesystem::exists(spec.output_dir / "audit.csv"));
  for (const char* audit : {"rate-eta-star", "rate-eta-bar", "sandwich-lower", "sandwich-upper", "orthogonality-v",
                            "bh-descent", "level-set", "gradient-fd", "pl-inequality", "cocoercivity", "dominance"}) {
    bool seen = false;
    for (const AuditSummary& s : v.report.summary()) seen = seen || s.audit == audit;
    CHECK_MESSAGE(seen, audit);
  }
}

TEST_CASE("instance files feed experiments") {
  const auto dir = scratch("instance");
  const LogRegProblem p = generate_logreg(30, 15, 25.0, 4);
  {
    std::ofstream out(dir / "p.txt");
    write_logreg(out, p);
  }
  ExperimentSpec spec;
  spec.instance = dir / "p.txt";
  spec.kappa = 0.0;
  spec.solvers = {SolverId::kMe};
  const ExperimentResult r = run_experiment(spec);
  CHECK(r.problem->dim() == 30);
  CHECK(r.problem->kappa() == doctest::Approx(25.0));
  spec.instance = dir / "missing.txt";
  CHECK_THROWS_AS(run_experiment(spec), InvalidArgument);
}

TEST_CASE("spec validation") {
  ExperimentSpec spec;
  spec.kappa = 0.5;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.kappa = 10.0;
  spec.n = 0;
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  spec.n = 10;
  spec.solvers.clear();
  CHECK_THROWS_AS(spec.validate(), InvalidArgument);
  ExperimentSpec defaults;
  defaults.n = 9;
  CHECK(defaults.samples() == 4);
  defaults.n = 1;
  CHECK(defaults.samples() == 1);
}
