#include "ellip/diagnostics.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <cmath>
#include <ostream>
#include <sstream>

#include "ellip/errors.hpp"
#include "ellip/format.hpp"
#include "ellip/quadratic.hpp"

namespace ellip {

void AuditReport::add(const std::string& audit, int step, double value, double bound, bool strict) {
  AuditCheck check;
  check.audit = audit;
  check.step = step;
  check.value = value;
  check.bound = bound;
  check.strict = strict;
  check.pass = strict ? value < bound : value <= bound;
  checks_.push_back(std::move(check));
}

void AuditReport::merge(const AuditReport& other) {
  checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
}

bool AuditReport::pass() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const AuditCheck& c) { return c.pass; });
}

std::vector<AuditSummary> AuditReport::summary() const {
  std::vector<AuditSummary> out;
  for (const AuditCheck& c : checks_) {
    auto it = std::find_if(out.begin(), out.end(), [&](const AuditSummary& s) { return s.audit == c.audit; });
    const double slack = c.bound - c.value;
    if (it == out.end()) {
      out.push_back({c.audit, 0, 0, slack});
      it = std::prev(out.end());
    }
    ++it->checked;
    if (!c.pass) ++it->failed;
    // NaN slack must surface as the worst case.
    if (!(slack >= it->worst_slack)) it->worst_slack = slack;
  }
  return out;
}

std::string AuditReport::to_text() const {
  std::ostringstream out;
  std::size_t width = 5;
  for (const AuditSummary& s : summary()) width = std::max(width, s.audit.size());
  for (const AuditSummary& s : summary()) {
    out << (s.failed == 0 ? "PASS  " : "FAIL  ") << s.audit << std::string(width - s.audit.size() + 2, ' ')
        << "checked=" << s.checked << "  failed=" << s.failed << "  worst_slack=" << format_double(s.worst_slack)
        << '\n';
  }
  out << (pass() ? "overall: PASS" : "overall: FAIL") << '\n';
  return out.str();
}

void AuditReport::write_csv(std::ostream& out) const {
  out << "audit,step,value,bound,slack,pass\n";
  for (const AuditCheck& c : checks_) {
    out << c.audit << ',' << c.step << ',' << format_double(c.value) << ',' << format_double(c.bound) << ','
        << format_double(c.bound - c.value) << ',' << (c.pass ? 1 : 0) << '\n';
  }
}

double eta_universal(double kappa) { return 1.0 - 1.0 / kappa; }
double eta_star(double kappa) { return (kappa - 1.0) / (kappa + 1.0); }
double eta_bar(double kappa, double sin2_theta) { return eta_star(kappa) - sin2_theta / (4.0 * kappa * kappa); }

double gap_floor(double f_star) { return 1e-14 * std::abs(f_star) + 1e-300; }

std::vector<std::optional<double>> contraction_ratios(const RunTrace& trace, double f_star) {
  const double floor = gap_floor(f_star);
  for (const IterateRecord& r : trace.records)
    if (r.f_val - f_star < -floor) throw InvalidArgument("contraction_ratios: f_star lies above a trace value");
  std::vector<std::optional<double>> out;
  for (std::size_t i = 0; i + 1 < trace.records.size(); ++i) {
    const double gap = trace.records[i].f_val - f_star;
    const double next = trace.records[i + 1].f_val - f_star;
    if (gap <= floor)
      out.emplace_back();
    else
      out.emplace_back(std::max(next, 0.0) / gap);
  }
  return out;
}

std::vector<std::optional<double>> contraction_ratios(std::span<const double> gaps, double floor) {
  std::vector<std::optional<double>> out;
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    if (gaps[i] <= floor)
      out.emplace_back();
    else
      out.emplace_back(std::max(gaps[i + 1], 0.0) / gaps[i]);
  }
  return out;
}

std::vector<double> exact_gaps(const RunTrace& trace, const Objective& f, const Vector& x_star) {
  const QuadraticProblem* quad = f.quadratic_view();
  if (quad == nullptr || trace.iterates.size() != trace.records.size()) return {};
  std::vector<double> out;
  out.reserve(trace.iterates.size());
  for (const Vector& x : trace.iterates) out.push_back(0.5 * quad->curvature(x - x_star));
  return out;
}

void fill_ratios(RunTrace& trace, double f_star) {
  const auto ratios = contraction_ratios(trace, f_star);
  for (std::size_t i = 0; i < trace.records.size(); ++i)
    trace.records[i].ratio = i < ratios.size() ? ratios[i] : std::nullopt;
}

RateAudit certify_rates(const RunTrace& trace, double f_star, double mu, double lip, const Vector* x_star,
                        std::span<const double> gaps) {
  if (trace.solver != SolverId::kMe) throw InvalidArgument("certify_rates: needs an ME trace");
  if (!(mu > 0.0) || !(lip >= mu)) throw InvalidArgument("certify_rates: need 0 < mu <= L");

  RateAudit out;
  RateCertificate& cert = out.certificate;
  AuditReport& report = out.report;
  cert.kappa = lip / mu;
  cert.eta = eta_universal(cert.kappa);
  cert.eta_star = eta_star(cert.kappa);

  const auto& recs = trace.records;
  if (!gaps.empty() && gaps.size() != recs.size()) throw InvalidArgument("certify_rates: one gap per record");
  std::vector<double> f_gaps;
  if (gaps.empty()) {
    for (const IterateRecord& r : recs) f_gaps.push_back(r.f_val - f_star);
  }
  const auto ratios = gaps.empty() ? contraction_ratios(trace, f_star) : contraction_ratios(gaps, 1e-300);
  const std::span<const double> gap = gaps.empty() ? std::span<const double>(f_gaps) : gaps;
  const double gap1 = std::max(gap.front(), 0.0);
  const double slack = 1.0 + kRateSlack;

  for (std::size_t i = 0; i < ratios.size(); ++i) {
    const int k = static_cast<int>(i) + 1;
    const bool li = recs[i].li_flag.value_or(false);
    std::optional<double> bar;
    if (li && recs[i].sin2_theta) {
      bar = eta_bar(cert.kappa, *recs[i].sin2_theta);
      cert.c_min = std::min(cert.c_min.value_or(1.0), *recs[i].sin2_theta);
      if (cert.kappa >= 2.0) {
        report.add("sandwich-lower", k, cert.eta_star * cert.eta_star, *bar, true);
        report.add("sandwich-upper", k, *bar, cert.eta_star, true);
      }
    }
    cert.eta_bar.push_back(bar);

    if (ratios[i]) {
      report.add("rate-universal", k, *ratios[i], cert.eta * slack);
      if (li) {
        report.add("rate-eta-star", k, *ratios[i], cert.eta_star * slack);
        if (bar) report.add("rate-eta-bar", k, *ratios[i], *bar * slack);
      }
    }
    const double next_gap = std::max(gap[i + 1], 0.0);
    report.add("global-bound", k, next_gap, std::pow(cert.eta, k - 1) * gap1 * slack);
  }

  if (x_star != nullptr && trace.iterates.size() == recs.size()) {
    const double dist1 = (trace.iterates.front() - *x_star).squaredNorm();
    for (std::size_t i = 0; i < trace.iterates.size(); ++i) {
      const int k = static_cast<int>(i) + 1;
      const double dist = (trace.iterates[i] - *x_star).squaredNorm();
      report.add("iterate-bound", k, dist, cert.kappa * std::pow(cert.eta, k - 1) * dist1 * slack);
    }
  }
  return out;
}

AuditReport audit_orthogonality(std::span<const StepDetail> steps, double inner_tol, double lip) {
  AuditReport report;
  for (const StepDetail& s : steps) {
    if (!s.li) continue;
    if (s.v.size() == 0 || s.grad_next.size() == 0)
      throw InvalidArgument("audit_orthogonality: step vectors were not recorded");
    const double vnorm = s.v.norm();
    const double eps_orth = 10.0 * inner_tol * std::max(vnorm, s.w.norm());
    report.add("orthogonality-v", s.k, std::abs(s.grad_next.dot(s.v)), eps_orth);
    report.add("orthogonality-w", s.k, std::abs(s.grad_next.dot(s.w)), eps_orth);
    const double diff_sq = (s.grad_next - s.v).squaredNorm();
    const double pythagoras = std::abs(diff_sq - s.grad_next.squaredNorm() - s.v.squaredNorm());
    const double rounding = 4.0 * std::numeric_limits<double>::epsilon() *
                            (diff_sq + s.grad_next.squaredNorm() + s.v.squaredNorm());
    report.add("pythagorean", s.k, pythagoras, std::max(10.0 * eps_orth * vnorm, 2.0 * eps_orth) + rounding);
    report.add("lipschitz-step", s.k, diff_sq, lip * lip * (s.x_next - s.x).squaredNorm() * (1.0 + kRateSlack));
  }
  return report;
}

AuditReport audit_bh_descent(const RunTrace& trace, double lip, std::span<const double> gaps) {
  AuditReport report;
  const auto& recs = trace.records;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    if (!recs[i].li_flag.value_or(false)) continue;
    const double decrease = gaps.empty() ? recs[i].f_val - recs[i + 1].f_val : gaps[i] - gaps[i + 1];
    const double gsq = recs[i + 1].grad_norm * recs[i + 1].grad_norm + recs[i].grad_norm * recs[i].grad_norm;
    report.add("bh-descent", recs[i].k, gsq / (2.0 * lip) - 1e-9 * std::abs(recs[i].f_val), decrease);
  }
  return report;
}

AuditReport audit_level_set(const RunTrace& trace) {
  AuditReport report;
  for (const StepDetail& s : trace.steps) report.add("level-set", s.k, s.level_residual, trace.config.companion_tol);
  return report;
}

AuditReport audit_monotone(const RunTrace& trace, double rounding_ulps, std::span<const double> gaps) {
  AuditReport report;
  const auto& recs = trace.records;
  const bool strict = rounding_ulps <= 0.0;
  const std::string name = trace.solver == SolverId::kMe ? "monotone" : "monotone-" + std::string(to_string(trace.solver));
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const double allowance = rounding_ulps * std::numeric_limits<double>::epsilon() * std::abs(recs[i].f_val);
    if (gaps.empty())
      report.add(name, recs[i].k, recs[i + 1].f_val, recs[i].f_val + allowance, strict);
    else
      report.add(name, recs[i].k, gaps[i + 1], gaps[i] + allowance, strict);
  }
  return report;
}

AuditReport audit_outer_accounting(const RunTrace& trace) {
  AuditReport report;
  const auto& recs = trace.records;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    const auto delta = recs[i + 1].grad_evals_outer - recs[i].grad_evals_outer;
    report.add("outer-accounting", recs[i].k, std::abs(static_cast<double>(delta - 2)), 0.0);
  }
  return report;
}

DominanceResult audit_dominance(const Objective& f, const Vector& x, const SolverConfig& cfg) {
  DominanceResult out;
  const double fx = f.value(x);
  out.f_me = f.value(me_step(f, x, cfg).x_next);
  out.f_gd = f.value(gd_exact_step(f, x).x_next);
  out.pass = out.f_me <= out.f_gd + 1e-12 * std::max(1.0, std::abs(fx));
  return out;
}

long long theoretical_iteration_bound(double kappa, double initial_gap, double target_gap) {
  if (!(kappa >= 1.0)) throw InvalidArgument("theoretical_iteration_bound: kappa must be >= 1");
  if (!(initial_gap > 0.0) || !(target_gap > 0.0))
    throw InvalidArgument("theoretical_iteration_bound: gaps must be positive");
  if (target_gap >= initial_gap) return 0;
  const double per_step = std::log(1.0 / eta_star(kappa));
  return static_cast<long long>(std::ceil(std::log(initial_gap / target_gap) / per_step));
}

AuditReport audit_standard_inequalities(const Objective& f, double f_star, std::span<const Vector> points) {
  AuditReport report;
  int idx = 0;
  for (const Vector& x : points) {
    ++idx;
    Vector g;
    const double gap = f.value_grad(x, g) - f_star;
    const double gsq = g.squaredNorm();
    report.add("pl-inequality", idx, 2.0 * f.mu() * gap - 1e-9, gsq);
    report.add("cocoercivity", idx, gsq, 2.0 * f.lip() * gap + 1e-9);
  }
  return report;
}

AuditReport audit_gradient_fd(const Objective& f, std::span<const Vector> points, double rel_tol) {
  AuditReport report;
  int idx = 0;
  for (const Vector& x : points) {
    ++idx;
    const Vector g = f.gradient(x);
    const double h = 1e-5 * std::max(1.0, x.cwiseAbs().maxCoeff());
    Vector fd(x.size());
    Vector probe = x;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      probe[j] = x[j] + h;
      const double up = f.value(probe);
      probe[j] = x[j] - h;
      const double down = f.value(probe);
      probe[j] = x[j];
      fd[j] = (up - down) / (2.0 * h);
    }
    report.add("gradient-fd", idx, (fd - g).norm(), rel_tol * std::max(g.norm(), 1e-8));
  }
  return report;
}

}  // namespace ellip
