#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ellip/objective.hpp"
#include "ellip/plane2d.hpp"

namespace ellip {

enum class SolverId { kMe, kGdL, kGdExact, kFastGd };
enum class RunStatus { kConverged, kMaxIterations, kInnerStall, kNumericFailure };

/// "me", "gd-l", "gd-exact", "fast-gd".
std::string_view to_string(SolverId id);
std::string_view to_string(RunStatus status);
std::optional<SolverId> parse_solver_id(std::string_view name);
inline constexpr SolverId kAllSolvers[] = {SolverId::kMe, SolverId::kGdExact, SolverId::kGdL, SolverId::kFastGd};

struct SolverConfig {
  double eps = 1e-6;  ///< stop when |grad f(x^k)| <= eps
  int max_outer = 100000;
  double companion_tol = 1e-12;
  double inner_tol = 1e-12;
  int max_inner = 10000;
  double ld_threshold = 1e-12;  ///< sin^2(theta) below this takes the segment step
  InnerStepRule inner_step_rule = InnerStepRule::kBarzilaiBorwein;
  /// Keep per-step vectors (iterates, v, w, grad f(x^{k+1})) for the audits.
  bool record_vectors = false;

  void validate() const;
};

// One row per iterate x^k. Step fields (t_k, sin2_theta, li_flag) describe
// the step taken from x^k and are empty on the final row and for solvers
// without a companion point. Counters are cumulative at the moment x^k was
// evaluated.
struct IterateRecord {
  int k = 1;
  double f_val = 0.0;
  double grad_norm = 0.0;
  std::optional<double> t_k;
  std::optional<double> sin2_theta;
  std::optional<bool> li_flag;
  std::optional<double> ratio;  ///< (f(x^{k+1}) - f*) / (f(x^k) - f*), filled post hoc
  std::int64_t grad_evals_outer = 0;
  std::int64_t grad_evals_total = 0;
  std::int64_t value_evals_total = 0;
};

// Extra per-step data from an ME run. Vectors are empty unless
// SolverConfig::record_vectors is set.
struct StepDetail {
  int k = 1;
  bool li = false;
  double level_residual = 0.0;
  int bisection_iters = 0;
  int inner_iters = 0;
  double inner_grad_norm = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  Vector x;
  Vector v;
  Vector w;
  Vector x_next;
  Vector grad_next;
};

struct RunTrace {
  SolverId solver = SolverId::kMe;
  std::vector<IterateRecord> records;
  RunStatus status = RunStatus::kConverged;
  std::string message;
  Vector x_final;
  SolverConfig config;
  std::vector<StepDetail> steps;
  std::vector<Vector> iterates;  ///< only with record_vectors
  bool monotone = true;          ///< false for momentum methods

  int iterations() const { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
  const IterateRecord& final_record() const { return records.back(); }
};

struct MeStep {
  Vector x_next;
  StepDetail detail;
  double t_k = 0.0;
  double sin2_theta = 0.0;
  bool li = false;
};

/// One ME step from x with v = grad f(x): companion point, then the plane
/// minimizer (LI) or the segment minimizer (LD).
MeStep me_step(Oracle& f, const Vector& x, const Vector& v, const SolverConfig& cfg);
MeStep me_step(const Objective& f, const Vector& x, const SolverConfig& cfg = {});

RunTrace run_me(const Objective& f, const Vector& x1, const SolverConfig& cfg = {});

/// x - grad f(x) / L.
Vector gd_fixed_step(const Objective& f, const Vector& x);
RunTrace run_gd_l(const Objective& f, const Vector& x1, const SolverConfig& cfg = {});

struct ExactStep {
  Vector x_next;
  double t_star = 0.0;
};

/// Exact linesearch along -v: root of <grad f(x - t v), v> (closed form for
/// quadratics, doubling bracket plus bisection otherwise).
ExactStep gd_exact_step(Oracle& f, const Vector& x, const Vector& v);
ExactStep gd_exact_step(const Objective& f, const Vector& x);
RunTrace run_gd_exact(const Objective& f, const Vector& x1, const SolverConfig& cfg = {});

/// Constant-momentum Nesterov method for strongly convex f, step 1/L,
/// momentum (sqrt(kappa) - 1) / (sqrt(kappa) + 1).
RunTrace run_fast_gd(const Objective& f, const Vector& x1, const SolverConfig& cfg = {});

RunTrace run_solver(SolverId id, const Objective& f, const Vector& x1, const SolverConfig& cfg = {});

}  // namespace ellip
