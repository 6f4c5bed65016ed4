#include "ellip/solvers.hpp"

#include <cmath>
#include <functional>

#include "ellip/companion.hpp"
#include "ellip/errors.hpp"
#include "ellip/quadratic.hpp"

namespace ellip {

std::string_view to_string(SolverId id) {
  switch (id) {
    case SolverId::kMe: return "me";
    case SolverId::kGdL: return "gd-l";
    case SolverId::kGdExact: return "gd-exact";
    case SolverId::kFastGd: return "fast-gd";
  }
  return "?";
}

std::string_view to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged: return "converged";
    case RunStatus::kMaxIterations: return "max-iterations";
    case RunStatus::kInnerStall: return "inner-stall";
    case RunStatus::kNumericFailure: return "numeric-failure";
  }
  return "?";
}

std::optional<SolverId> parse_solver_id(std::string_view name) {
  for (SolverId id : kAllSolvers)
    if (to_string(id) == name) return id;
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (!(eps > 0.0) || !(companion_tol > 0.0) || !(inner_tol > 0.0) || !(ld_threshold > 0.0))
    throw InvalidArgument("SolverConfig: tolerances must be positive");
  if (max_outer < 1 || max_inner < 1) throw InvalidArgument("SolverConfig: iteration caps must be positive");
}

namespace {

// Appends iterate records with the oracle's cumulative counters.
class Recorder {
 public:
  Recorder(RunTrace& trace, const Oracle& oracle) : trace_(trace), oracle_(oracle) {}

  IterateRecord& push(double f_val, const Vector& grad, const Vector& x) {
    IterateRecord r;
    r.k = static_cast<int>(trace_.records.size()) + 1;
    r.f_val = f_val;
    r.grad_norm = grad.norm();
    r.grad_evals_outer = outer_;
    r.grad_evals_total = oracle_.counts().gradients;
    r.value_evals_total = oracle_.counts().values;
    trace_.records.push_back(r);
    if (trace_.config.record_vectors) trace_.iterates.push_back(x);
    return trace_.records.back();
  }

  void count_outer(std::int64_t n = 1) { outer_ += n; }

 private:
  RunTrace& trace_;
  const Oracle& oracle_;
  std::int64_t outer_ = 0;
};

RunTrace start_trace(SolverId id, const Objective& f, const Vector& x1, const SolverConfig& cfg) {
  cfg.validate();
  if (x1.size() != f.dim()) throw InvalidArgument("solver: starting point has the wrong dimension");
  RunTrace trace;
  trace.solver = id;
  trace.config = cfg;
  trace.x_final = x1;
  return trace;
}

// Calls step(k) then after_step() until the gradient test on g passes or the
// iteration cap is hit; exceptions become the trace status. step() must
// update the x and g referenced here.
void drive(RunTrace& trace, const SolverConfig& cfg, const Vector& x, const Vector& g,
           const std::function<void(int)>& step, const std::function<void()>& after_step) {
  try {
    for (int k = 1;; ++k) {
      if (g.norm() <= cfg.eps) {
        trace.status = RunStatus::kConverged;
        break;
      }
      if (k > cfg.max_outer) {
        trace.status = RunStatus::kMaxIterations;
        break;
      }
      step(k);
      after_step();
    }
  } catch (const InnerStall& e) {
    trace.status = RunStatus::kInnerStall;
    trace.message = e.what();
  } catch (const std::exception& e) {
    trace.status = RunStatus::kNumericFailure;
    trace.message = e.what();
  }
  trace.x_final = x;
}

}  // namespace

MeStep me_step(Oracle& f, const Vector& x, const Vector& v, const SolverConfig& cfg) {
  const Objective& obj = f.objective();
  MeStep out;

  const CompanionResult comp = companion_point(f, x, v, cfg.companion_tol);
  Vector w = f.gradient(comp.y);
  out.t_k = comp.t;
  out.detail.level_residual = comp.level_residual;
  out.detail.bisection_iters = comp.bisection_iters;

  PlaneSubproblem sp = PlaneSubproblem::make(x, v, std::move(w), obj.lip());
  out.sin2_theta = sp.sin2_theta;
  out.li = sp.sin2_theta >= cfg.ld_threshold;

  if (out.li) {
    try {
      PlaneSolution sol;
      if (const QuadraticProblem* quad = obj.quadratic_view()) {
        sol = solve_newton_quadratic(*quad, sp);
      } else {
        InnerSolverOptions options;
        options.tol = cfg.inner_tol;
        options.max_inner = cfg.max_inner;
        options.step_rule = cfg.inner_step_rule;
        sol = solve_gd_armijo(f, sp, options);
      }
      out.x_next = std::move(sol.x_next);
      out.detail.alpha = sol.alpha;
      out.detail.beta = sol.beta;
      out.detail.inner_iters = sol.inner_iters;
      out.detail.inner_grad_norm = sol.inner_grad_norm;
    } catch (const DegeneratePlane&) {
      out.li = false;
    }
  }
  if (!out.li) {
    out.x_next = segment_minimizer(f, x, comp.y);
    out.detail.alpha = 0.0;
    out.detail.beta = 0.0;
  }
  out.detail.li = out.li;
  if (cfg.record_vectors) {
    out.detail.x = x;
    out.detail.v = sp.v;
    out.detail.w = sp.w;
    out.detail.x_next = out.x_next;
  }
  return out;
}

MeStep me_step(const Objective& f, const Vector& x, const SolverConfig& cfg) {
  Oracle oracle(f);
  const Vector v = oracle.gradient(x);
  if (!(v.norm() > 0.0)) throw InvalidArgument("me_step: x is stationary");
  return me_step(oracle, x, v, cfg);
}

RunTrace run_me(const Objective& f, const Vector& x1, const SolverConfig& cfg) {
  RunTrace trace = start_trace(SolverId::kMe, f, x1, cfg);
  Oracle oracle(f);
  Recorder rec(trace, oracle);
  Vector x = x1;
  Vector g;
  double fx = oracle.value_grad(x, g);
  rec.count_outer();
  rec.push(fx, g, x);

  auto step = [&](int k) {
    MeStep s = me_step(oracle, x, g, cfg);
    IterateRecord& r = trace.records[static_cast<std::size_t>(k - 1)];
    r.t_k = s.t_k;
    r.sin2_theta = s.sin2_theta;
    r.li_flag = s.li;
    s.detail.k = k;
    trace.steps.push_back(std::move(s.detail));
    x = std::move(s.x_next);
    fx = oracle.value_grad(x, g);
    // grad f(y^k) and grad f(x^{k+1})
    rec.count_outer(2);
  };
  auto after = [&]() {
    if (cfg.record_vectors) trace.steps.back().grad_next = g;
    rec.push(fx, g, x);
  };
  drive(trace, cfg, x, g, step, after);
  return trace;
}

Vector gd_fixed_step(const Objective& f, const Vector& x) { return x - f.gradient(x) / f.lip(); }

RunTrace run_gd_l(const Objective& f, const Vector& x1, const SolverConfig& cfg) {
  RunTrace trace = start_trace(SolverId::kGdL, f, x1, cfg);
  Oracle oracle(f);
  Recorder rec(trace, oracle);
  Vector x = x1;
  Vector g;
  double fx = oracle.value_grad(x, g);
  rec.count_outer();
  rec.push(fx, g, x);
  const double step_size = 1.0 / f.lip();
  auto step = [&](int) {
    x -= step_size * g;
    fx = oracle.value_grad(x, g);
    rec.count_outer();
  };
  drive(trace, cfg, x, g, step, [&]() { rec.push(fx, g, x); });
  return trace;
}

ExactStep gd_exact_step(Oracle& f, const Vector& x, const Vector& v) {
  const double vv = v.squaredNorm();
  if (!(vv > 0.0)) throw InvalidArgument("gd_exact_step: gradient must be nonzero");
  if (const QuadraticProblem* quad = f.objective().quadratic_view()) {
    const double t = vv / quad->curvature(v);
    return {x - t * v, t};
  }

  // phi(t) = <grad f(x - t v), v> is decreasing with phi(0) = |v|^2.
  const CountedRestriction line = f.restrict_to(x, v);
  SubspaceCoeffs c(1);
  SubspaceCoeffs grad(1);
  auto phi = [&](double t) {
    c[0] = -t;
    line.value_grad(c, grad);
    return grad[0];
  };
  const double tol = 1e-12 * vv;

  double lo = 0.0;
  double hi = 1.0 / f.objective().lip();
  double phi_hi = phi(hi);
  for (int i = 0; phi_hi > 0.0; ++i) {
    if (i >= 200) throw NumericFailure("gd_exact_step: no sign change after 200 doublings");
    lo = hi;
    hi *= 2.0;
    phi_hi = phi(hi);
  }
  double t = hi;
  double best_abs = std::abs(phi_hi);
  for (int i = 0; best_abs > tol; ++i) {
    if (i >= 200) throw NumericFailure("gd_exact_step: bisection did not converge");
    const double mid = 0.5 * (lo + hi);
    const double pm = phi(mid);
    if (std::abs(pm) < best_abs) {
      best_abs = std::abs(pm);
      t = mid;
    }
    if (pm > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo < 1e-15 * hi) break;
  }
  return {x - t * v, t};
}

ExactStep gd_exact_step(const Objective& f, const Vector& x) {
  Oracle oracle(f);
  return gd_exact_step(oracle, x, oracle.gradient(x));
}

RunTrace run_gd_exact(const Objective& f, const Vector& x1, const SolverConfig& cfg) {
  RunTrace trace = start_trace(SolverId::kGdExact, f, x1, cfg);
  Oracle oracle(f);
  Recorder rec(trace, oracle);
  Vector x = x1;
  Vector g;
  double fx = oracle.value_grad(x, g);
  rec.count_outer();
  rec.push(fx, g, x);
  auto step = [&](int k) {
    ExactStep s = gd_exact_step(oracle, x, g);
    trace.records[static_cast<std::size_t>(k - 1)].t_k = s.t_star;
    x = std::move(s.x_next);
    fx = oracle.value_grad(x, g);
    rec.count_outer();
  };
  drive(trace, cfg, x, g, step, [&]() { rec.push(fx, g, x); });
  return trace;
}

RunTrace run_fast_gd(const Objective& f, const Vector& x1, const SolverConfig& cfg) {
  RunTrace trace = start_trace(SolverId::kFastGd, f, x1, cfg);
  trace.monotone = false;
  Oracle oracle(f);
  Recorder rec(trace, oracle);

  const double sqrt_kappa = std::sqrt(f.kappa());
  const double momentum = (sqrt_kappa - 1.0) / (sqrt_kappa + 1.0);
  const double step_size = 1.0 / f.lip();

  Vector x = x1;
  Vector z = x1;
  Vector g;
  double fx = oracle.value_grad(x, g);
  rec.count_outer();
  rec.push(fx, g, x);
  Vector gz = g;  // z^1 = x^1

  // Only grad f(z^k) drives the method and counts as an outer evaluation;
  // grad f(x^k) is evaluated for the stopping test and the trace.
  auto step = [&](int k) {
    if (k > 1) {
      gz = oracle.gradient(z);
      rec.count_outer();
    }
    Vector x_next = z - step_size * gz;
    z = x_next + momentum * (x_next - x);
    x = std::move(x_next);
    fx = oracle.value_grad(x, g);
  };
  drive(trace, cfg, x, g, step, [&]() { rec.push(fx, g, x); });
  return trace;
}

RunTrace run_solver(SolverId id, const Objective& f, const Vector& x1, const SolverConfig& cfg) {
  switch (id) {
    case SolverId::kMe: return run_me(f, x1, cfg);
    case SolverId::kGdL: return run_gd_l(f, x1, cfg);
    case SolverId::kGdExact: return run_gd_exact(f, x1, cfg);
    case SolverId::kFastGd: return run_fast_gd(f, x1, cfg);
  }
  throw InvalidArgument("run_solver: unknown solver");
}

}  // namespace ellip
