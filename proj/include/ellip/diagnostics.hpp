#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ellip/objective.hpp"
#include "ellip/solvers.hpp"

namespace ellip {

/// Relative slack on every rate audit.
inline constexpr double kRateSlack = 1e-8;

/// One audited inequality at one step: passes when value <= bound
/// (value < bound when strict).
struct AuditCheck {
  std::string audit;
  int step = 0;
  double value = 0.0;
  double bound = 0.0;
  bool strict = false;
  bool pass = true;
};

struct AuditSummary {
  std::string audit;
  int checked = 0;
  int failed = 0;
  double worst_slack = 0.0;  ///< min over steps of bound - value
};

class AuditReport {
 public:
  void add(const std::string& audit, int step, double value, double bound, bool strict = false);
  void merge(const AuditReport& other);

  bool pass() const;
  bool empty() const { return checks_.empty(); }
  const std::vector<AuditCheck>& checks() const { return checks_; }
  /// Per-audit totals in first-seen order.
  std::vector<AuditSummary> summary() const;

  std::string to_text() const;
  /// Columns: audit, step, value, bound, slack, pass.
  void write_csv(std::ostream& out) const;

 private:
  std::vector<AuditCheck> checks_;
};

struct RateCertificate {
  double kappa = 0.0;
  double eta = 0.0;                          ///< 1 - 1/kappa
  double eta_star = 0.0;                     ///< (kappa - 1) / (kappa + 1)
  std::vector<std::optional<double>> eta_bar;  ///< per step; set on LI steps
  std::optional<double> c_min;               ///< min sin^2(theta) over LI steps
};

struct RateAudit {
  RateCertificate certificate;
  AuditReport report;
};

double eta_universal(double kappa);
double eta_star(double kappa);
/// eta_star - sin2 / (4 kappa^2).
double eta_bar(double kappa, double sin2_theta);

/// Gap below which a ratio is not computed: 1e-14 |f*| + 1e-300.
double gap_floor(double f_star);

/// ratio[k] = (f(x^{k+1}) - f*) / (f(x^k) - f*) for each step; absent when
/// the denominator gap is below gap_floor. Throws InvalidArgument when f_star
/// exceeds a trace value by more than the floor.
std::vector<std::optional<double>> contraction_ratios(const RunTrace& trace, double f_star);
/// Same ratios from precomputed gaps; absent when the denominator is <= floor.
std::vector<std::optional<double>> contraction_ratios(std::span<const double> gaps, double floor);
void fill_ratios(RunTrace& trace, double f_star);

/// f(x^k) - f* for each record. For a quadratic with recorded iterates and
/// x_star this is 0.5 (x - x*)'A(x - x*), free of the cancellation in
/// f(x) - f* once the gap reaches the rounding level of f. Empty otherwise.
std::vector<double> exact_gaps(const RunTrace& trace, const Objective& f, const Vector& x_star);

/// Universal, eta*, angle-improved, global and (with x_star and recorded
/// iterates) iterate-distance bounds, plus the eta_bar sandwich for
/// kappa >= 2. ME traces only. Nonempty gaps replace f(x^k) - f*.
RateAudit certify_rates(const RunTrace& trace, double f_star, double mu, double lip,
                        const Vector* x_star = nullptr, std::span<const double> gaps = {});

/// Gradient orthogonality, the Pythagorean identity and the Lipschitz bound
/// at each LI step. Needs a trace recorded with record_vectors.
AuditReport audit_orthogonality(std::span<const StepDetail> steps, double inner_tol, double lip);

/// f(x^k) - f(x^{k+1}) >= (|g^{k+1}|^2 + |g^k|^2) / (2L) - 1e-9 |f(x^k)| at LI steps.
/// Nonempty gaps replace the recorded f values in the decrease.
AuditReport audit_bh_descent(const RunTrace& trace, double lip, std::span<const double> gaps = {});

/// |f(y^k) - f(x^k)| / max(1, |f(x^k)|) <= companion_tol at every ME step.
AuditReport audit_level_set(const RunTrace& trace);

/// Decrease of f between consecutive iterates. Strict when rounding_ulps is 0,
/// otherwise f may rise by rounding_ulps * DBL_EPSILON * |f|. Nonempty gaps
/// are compared instead of f.
AuditReport audit_monotone(const RunTrace& trace, double rounding_ulps = 0.0, std::span<const double> gaps = {});

/// ME outer gradient counter grows by exactly 2 per iteration.
AuditReport audit_outer_accounting(const RunTrace& trace);

struct DominanceResult {
  double f_me = 0.0;
  double f_gd = 0.0;
  bool pass = false;
};

/// One ME step and one exact-linesearch step from x; passes when
/// f_me <= f_gd + 1e-12 max(1, |f(x)|).
DominanceResult audit_dominance(const Objective& f, const Vector& x, const SolverConfig& cfg = {});

/// ceil(ln(initial_gap / target_gap) / ln(1 / eta_star)), 0 when no
/// reduction is asked for.
long long theoretical_iteration_bound(double kappa, double initial_gap, double target_gap);

/// PL and co-coercivity at the given points, absolute slack 1e-9.
AuditReport audit_standard_inequalities(const Objective& f, double f_star, std::span<const Vector> points);

/// Central-difference gradient check, |g_fd - g| <= rel_tol max(|g|, 1e-8).
AuditReport audit_gradient_fd(const Objective& f, std::span<const Vector> points, double rel_tol = 1e-6);

}  // namespace ellip
