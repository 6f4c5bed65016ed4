#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ellip/diagnostics.hpp"
#include "ellip/objective.hpp"
#include "ellip/solvers.hpp"
#include "ellip/trace_io.hpp"

namespace ellip {

enum class ProblemKind { kQuadratic, kLogReg };

std::string_view to_string(ProblemKind kind);

struct ExperimentSpec {
  ProblemKind problem = ProblemKind::kLogReg;
  long n = 100;
  long m = 0;  ///< logreg sample count; 0 means max(1, n/2)
  double kappa = 100.0;
  std::uint64_t seed = 1;
  std::vector<SolverId> solvers{std::begin(kAllSolvers), std::end(kAllSolvers)};
  SolverConfig config;
  std::filesystem::path output_dir;             ///< empty: no files written
  std::optional<std::filesystem::path> instance;  ///< logreg instance file instead of generation

  long samples() const { return m > 0 ? m : std::max(1L, n / 2); }
  void validate() const;
};

struct ReferenceSolution {
  enum class Method { kLinearSolve, kHighAccuracyRun };

  double f_star = 0.0;
  std::optional<Vector> x_star;
  Method method = Method::kLinearSolve;
  double residual = 0.0;  ///< |grad f(x_star)|
  bool quality_warning = false;  ///< residual above 1e-10
};

std::unique_ptr<Objective> make_problem(const ExperimentSpec& spec);

/// Quadratics: solve Ax = b. Logistic: Fast-GD to |grad f| <= 1e-13, then up
/// to 100 ME polishing steps; the lowest f seen is f_star.
ReferenceSolution compute_reference(const Objective& f);

struct ExperimentResult {
  std::unique_ptr<Objective> problem;
  ReferenceSolution reference;
  double f_star = 0.0;  ///< min of the reference value and every trace value
  std::vector<RunTrace> traces;
  std::vector<SummaryRow> rows;

  const RunTrace* trace(SolverId id) const;
  const SummaryRow* row(SolverId id) const;
};

/// Builds the instance, computes the reference, runs each solver from x = 0
/// and, when output_dir is set, writes trace_<solver>.csv,
/// series_<solver>.csv and summary.csv there.
ExperimentResult run_experiment(const ExperimentSpec& spec);

struct VerifyOutcome {
  ExperimentResult experiment;
  AuditReport report;
  RateCertificate certificate;
};

/// run_experiment with per-step vectors recorded, followed by every audit:
/// finite differences, PL / co-coercivity, rate certificates, orthogonality,
/// BH descent, level set, monotonicity, outer accounting, dominance and
/// cross-solver agreement. Writes audit.csv when output_dir is set.
VerifyOutcome verify_experiment(const ExperimentSpec& spec);

}  // namespace ellip
