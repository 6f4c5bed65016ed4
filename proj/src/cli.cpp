#include "ellip/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ellip/errors.hpp"
#include "ellip/format.hpp"
#include "ellip/harness.hpp"
#include "ellip/logreg.hpp"

namespace ellip {

namespace {

struct Options {
  std::string problem = "logreg";
  long n = 100;
  long m = 0;
  double kappa = 100.0;
  std::uint64_t seed = 1;
  std::vector<std::string> solvers;
  double eps = 1e-6;
  int max_outer = 100000;
  std::string out;
  std::string instance;
};

void add_common(CLI::App& cmd, Options& opt, bool with_solvers) {
  cmd.add_option("--problem", opt.problem, "quadratic or logreg")
      ->check(CLI::IsMember({"quadratic", "logreg"}))
      ->capture_default_str();
  cmd.add_option("--n", opt.n, "dimension")->capture_default_str();
  cmd.add_option("--m", opt.m, "logreg samples (default n/2)");
  cmd.add_option("--kappa", opt.kappa, "condition number L/mu (> 1)")->capture_default_str();
  cmd.add_option("--seed", opt.seed, "instance seed")->capture_default_str();
  cmd.add_option("--out", opt.out, "output directory");
  if (with_solvers) {
    cmd.add_option("--solver", opt.solvers, "me, gd-exact, gd-l or fast-gd (repeatable)")
        ->check(CLI::IsMember({"me", "gd-exact", "gd-l", "fast-gd"}));
    cmd.add_option("--eps", opt.eps, "stop when |grad f| <= eps")->capture_default_str();
    cmd.add_option("--max-outer", opt.max_outer, "outer iteration cap")->capture_default_str();
    cmd.add_option("--instance", opt.instance, "load a logreg instance file instead of generating one");
  }
}

ExperimentSpec to_spec(const Options& opt, std::vector<SolverId> default_solvers) {
  ExperimentSpec spec;
  spec.problem = opt.problem == "quadratic" ? ProblemKind::kQuadratic : ProblemKind::kLogReg;
  spec.n = opt.n;
  spec.m = opt.m;
  spec.kappa = opt.kappa;
  spec.seed = opt.seed;
  spec.solvers = std::move(default_solvers);
  if (!opt.solvers.empty()) {
    spec.solvers.clear();
    for (const std::string& s : opt.solvers) spec.solvers.push_back(*parse_solver_id(s));
  }
  spec.config.eps = opt.eps;
  spec.config.max_outer = opt.max_outer;
  spec.output_dir = opt.out;
  if (!opt.instance.empty()) {
    spec.instance = opt.instance;
    spec.problem = ProblemKind::kLogReg;
  }
  spec.validate();
  return spec;
}

bool all_converged(const ExperimentResult& r) {
  for (const RunTrace& t : r.traces)
    if (t.status != RunStatus::kConverged) return false;
  return true;
}

void print_failures(const ExperimentResult& r, std::ostream& err) {
  for (const RunTrace& t : r.traces)
    if (t.status != RunStatus::kConverged)
      err << to_string(t.solver) << ": " << to_string(t.status) << (t.message.empty() ? "" : ": ") << t.message
          << '\n';
}

void print_header(const ExperimentSpec& spec, const ExperimentResult& r, std::ostream& out) {
  const Objective& f = *r.problem;
  out << "problem=" << to_string(spec.problem) << " n=" << f.dim() << " kappa=" << format_double(f.kappa())
      << " seed=" << spec.seed << " f*=" << format_double(r.f_star);
  if (r.reference.quality_warning) out << " (reference residual " << format_double(r.reference.residual) << ")";
  out << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Method of Ellipcenters solvers and experiments", "ellip"};
  app.require_subcommand(1);
  app.set_config("--config", "", "structured-text config file mirroring the flags (flags win)");
  app.get_config_ptr()->configurable(false);

  Options run_opt;
  Options compare_opt;
  Options verify_opt;
  Options gen_opt;
  CLI::App* run = app.add_subcommand("run", "run one experiment and write its traces");
  CLI::App* compare = app.add_subcommand("compare", "run all solvers and print the comparison table");
  CLI::App* verify = app.add_subcommand("verify", "run an experiment and audit every convergence guarantee");
  CLI::App* gen = app.add_subcommand("gen", "write a logreg instance file");
  add_common(*run, run_opt, true);
  add_common(*compare, compare_opt, true);
  add_common(*verify, verify_opt, true);
  add_common(*gen, gen_opt, false);
  gen->add_option("--file", gen_opt.instance, "instance path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) {
      if (gen_opt.problem != "logreg") {
        err << "error: gen supports --problem logreg only\n";
        return kExitUsage;
      }
      const ExperimentSpec spec = to_spec(gen_opt, {SolverId::kMe});
      const LogRegProblem p = generate_logreg(spec.n, spec.samples(), spec.kappa, spec.seed);
      if (gen_opt.instance.empty()) {
        write_logreg(out, p);
      } else {
        std::ofstream file(gen_opt.instance, std::ios::binary);
        if (!file) throw InvalidArgument("cannot write " + gen_opt.instance);
        write_logreg(file, p);
      }
      return kExitOk;
    }

    if (verify->parsed()) {
      const ExperimentSpec spec = to_spec(verify_opt, {std::begin(kAllSolvers), std::end(kAllSolvers)});
      const VerifyOutcome v = verify_experiment(spec);
      print_header(spec, v.experiment, out);
      out << format_summary_table(v.experiment.rows) << '\n';
      if (v.certificate.c_min)
        out << "eta=" << format_double(v.certificate.eta) << " eta*=" << format_double(v.certificate.eta_star)
            << " min sin^2(theta)=" << format_double(*v.certificate.c_min) << '\n';
      out << v.report.to_text();
      if (!all_converged(v.experiment)) {
        print_failures(v.experiment, err);
        return kExitSolverFailure;
      }
      return v.report.pass() ? kExitOk : kExitAuditFailure;
    }

    const bool is_compare = compare->parsed();
    const Options& opt = is_compare ? compare_opt : run_opt;
    std::vector<SolverId> defaults{SolverId::kMe};
    if (is_compare) defaults.assign(std::begin(kAllSolvers), std::end(kAllSolvers));
    const ExperimentSpec spec = to_spec(opt, defaults);
    const ExperimentResult r = run_experiment(spec);
    print_header(spec, r, out);
    out << format_summary_table(r.rows);
    if (!all_converged(r)) {
      print_failures(r, err);
      return kExitSolverFailure;
    }
    return kExitOk;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolverFailure;
  }
}

}  // namespace ellip
