#include "ellip/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>

#include "ellip/errors.hpp"
#include "ellip/logreg.hpp"
#include "ellip/quadratic.hpp"
#include "ellip/rng.hpp"

namespace ellip {

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  return out;
}

// Dominance is checked from x^1 and from the first few ME iterates.
constexpr std::size_t kDominancePoints = 10;
// Sampled points for the gradient and PL checks.
constexpr int kSamplePoints = 5;

}  // namespace

std::string_view to_string(ProblemKind kind) { return kind == ProblemKind::kQuadratic ? "quadratic" : "logreg"; }

void ExperimentSpec::validate() const {
  if (!instance) {
    if (n < 1) throw InvalidArgument("n must be positive");
    if (m < 0) throw InvalidArgument("m must be non-negative");
    if (!(kappa > 1.0) || !std::isfinite(kappa)) throw InvalidArgument("kappa must exceed 1");
  }
  if (solvers.empty()) throw InvalidArgument("no solvers requested");
  config.validate();
}

std::unique_ptr<Objective> make_problem(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.instance) {
    std::ifstream in(*spec.instance);
    if (!in) throw InvalidArgument("cannot read " + spec.instance->string());
    return std::make_unique<LogRegProblem>(read_logreg(in));
  }
  if (spec.problem == ProblemKind::kQuadratic)
    return std::make_unique<QuadraticProblem>(generate_quadratic(spec.n, spec.kappa, spec.seed));
  return std::make_unique<LogRegProblem>(generate_logreg(spec.n, spec.samples(), spec.kappa, spec.seed));
}

ReferenceSolution compute_reference(const Objective& f) {
  ReferenceSolution ref;
  if (const QuadraticProblem* quad = f.quadratic_view()) {
    Vector x = quad->minimizer();
    ref.f_star = f.value(x);
    ref.residual = f.gradient(x).norm();
    ref.x_star = std::move(x);
    ref.method = ReferenceSolution::Method::kLinearSolve;
  } else {
    // Gradient norms near 1e-15 are below double-precision resolution for
    // ill-conditioned instances, so Fast-GD stops at 1e-13 and ME polishes.
    SolverConfig fast;
    fast.eps = 1e-13;
    fast.max_outer = 200000;
    const RunTrace coarse = run_fast_gd(f, Vector::Zero(f.dim()), fast);

    SolverConfig polish;
    polish.eps = std::numeric_limits<double>::min();
    polish.max_outer = 100;
    polish.record_vectors = true;
    const RunTrace fine = run_me(f, coarse.x_final, polish);

    ref.f_star = std::numeric_limits<double>::infinity();
    for (const RunTrace* t : {&coarse, &fine}) {
      for (const IterateRecord& r : t->records) ref.f_star = std::min(ref.f_star, r.f_val);
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < fine.records.size(); ++i)
      if (fine.records[i].f_val < fine.records[best].f_val) best = i;
    ref.x_star = fine.iterates.empty() ? fine.x_final : fine.iterates[best];
    ref.residual = f.gradient(*ref.x_star).norm();
    ref.method = ReferenceSolution::Method::kHighAccuracyRun;
  }
  ref.quality_warning = !(ref.residual <= 1e-10);
  return ref;
}

const RunTrace* ExperimentResult::trace(SolverId id) const {
  for (const RunTrace& t : traces)
    if (t.solver == id) return &t;
  return nullptr;
}

const SummaryRow* ExperimentResult::row(SolverId id) const {
  for (const SummaryRow& r : rows)
    if (r.solver == id) return &r;
  return nullptr;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult result;
  result.problem = make_problem(spec);
  const Objective& f = *result.problem;
  result.reference = compute_reference(f);

  const Vector x1 = Vector::Zero(f.dim());
  std::vector<double> seconds;
  for (SolverId id : spec.solvers) {
    const auto start = std::chrono::steady_clock::now();
    result.traces.push_back(run_solver(id, f, x1, spec.config));
    seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }

  result.f_star = result.reference.f_star;
  for (const RunTrace& t : result.traces)
    for (const IterateRecord& r : t.records) result.f_star = std::min(result.f_star, r.f_val);

  for (std::size_t i = 0; i < result.traces.size(); ++i) {
    RunTrace& t = result.traces[i];
    fill_ratios(t, result.f_star);
    SummaryRow row;
    row.solver = t.solver;
    row.n = static_cast<long>(f.dim());
    row.kappa = f.kappa();
    row.status = t.status;
    row.iterations = t.iterations();
    row.wall_seconds = seconds[i];
    row.grad_evals_outer = t.final_record().grad_evals_outer;
    row.grad_evals_total = t.final_record().grad_evals_total;
    row.terminal_gap = t.final_record().f_val - result.f_star;
    result.rows.push_back(row);
  }

  if (!spec.output_dir.empty()) {
    std::filesystem::create_directories(spec.output_dir);
    for (const RunTrace& t : result.traces) {
      const std::string name(to_string(t.solver));
      auto trace_out = open_output(spec.output_dir / ("trace_" + name + ".csv"));
      write_trace_csv(trace_out, t, result.f_star);
      auto series_out = open_output(spec.output_dir / ("series_" + name + ".csv"));
      write_series_csv(series_out, t, result.f_star);
    }
    auto summary_out = open_output(spec.output_dir / "summary.csv");
    write_summary_csv(summary_out, result.rows);
  }
  return result;
}

VerifyOutcome verify_experiment(const ExperimentSpec& spec) {
  ExperimentSpec recorded = spec;
  recorded.config.record_vectors = true;
  if (std::find(recorded.solvers.begin(), recorded.solvers.end(), SolverId::kMe) == recorded.solvers.end())
    recorded.solvers.insert(recorded.solvers.begin(), SolverId::kMe);

  VerifyOutcome out;
  out.experiment = run_experiment(recorded);
  const ExperimentResult& ex = out.experiment;
  const Objective& f = *ex.problem;
  const RunTrace& me = *ex.trace(SolverId::kMe);
  AuditReport& report = out.report;

  // Seeded sample points around the origin and along the ME path.
  GaussianStream rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Vector> samples;
  for (int i = 0; i < kSamplePoints; ++i) samples.push_back(rng.normal_vector(f.dim()));
  report.merge(audit_gradient_fd(f, samples));
  std::vector<Vector> pl_points = samples;
  for (std::size_t i = 0; i < me.iterates.size(); ++i) pl_points.push_back(me.iterates[i]);
  report.merge(audit_standard_inequalities(f, ex.f_star, pl_points));

  const Vector* x_star = ex.reference.x_star ? &*ex.reference.x_star : nullptr;
  // Quadratic gaps come from the iterates directly; f(x) - f* cancels below the
  // rounding level of f near termination.
  const std::vector<double> gaps = x_star ? exact_gaps(me, f, *x_star) : std::vector<double>{};
  RateAudit rates = certify_rates(me, ex.f_star, f.mu(), f.lip(), x_star, gaps);
  out.certificate = rates.certificate;
  report.merge(rates.report);
  report.merge(audit_orthogonality(me.steps, me.config.inner_tol, f.lip()));
  report.merge(audit_bh_descent(me, f.lip(), gaps));
  report.merge(audit_level_set(me));
  report.merge(audit_monotone(me, 0.0, gaps));
  report.merge(audit_outer_accounting(me));

  for (std::size_t i = 0; i < std::min(kDominancePoints, me.iterates.size()); ++i) {
    if (me.records[i].grad_norm <= 0.0) break;
    const DominanceResult d = audit_dominance(f, me.iterates[i], recorded.config);
    report.add("dominance", static_cast<int>(i) + 1, d.f_me,
               d.f_gd + 1e-12 * std::max(1.0, std::abs(me.records[i].f_val)));
  }

  for (const RunTrace& t : ex.traces) {
    report.add("solver-status-" + std::string(to_string(t.solver)), 0, t.status == RunStatus::kConverged ? 0.0 : 1.0,
               0.0);
    if (t.solver != SolverId::kFastGd && t.solver != SolverId::kMe) report.merge(audit_monotone(t, 8.0, x_star ? exact_gaps(t, f, *x_star) : std::vector<double>{}));
  }
  // Cross-solver agreement of terminal values.
  for (const RunTrace& t : ex.traces) {
    if (t.status != RunStatus::kConverged) continue;
    const double scale = std::max(1.0, std::abs(ex.f_star));
    report.add("terminal-agreement-" + std::string(to_string(t.solver)), 0,
               std::abs(t.final_record().f_val - me.final_record().f_val), 1e-8 * scale);
  }

  if (!spec.output_dir.empty()) {
    auto audit_out = open_output(spec.output_dir / "audit.csv");
    report.write_csv(audit_out);
  }
  return out;
}

}  // namespace ellip
