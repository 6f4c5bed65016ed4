#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ellip/solvers.hpp"

namespace ellip {

// Trace CSV: header row then one row per iterate with columns
//   k,f,gap,grad_norm,t_k,sin2_theta,li_flag,ratio,
//   grad_evals_outer,grad_evals_total,value_evals_total
// Floats carry 17 significant digits with '.' decimals; absent optional
// fields are empty; li_flag is 1 or 0.
inline constexpr const char* kTraceHeader =
    "k,f,gap,grad_norm,t_k,sin2_theta,li_flag,ratio,grad_evals_outer,grad_evals_total,value_evals_total";

void write_trace_csv(std::ostream& out, const RunTrace& trace, double f_star);

/// Parses a trace CSV back into iterate records (the gap column is derived
/// and dropped). Throws InvalidArgument on malformed input.
std::vector<IterateRecord> read_trace_csv(std::istream& in);

/// Gap against gradient evaluations: grad_evals_outer,grad_evals_total,gap.
void write_series_csv(std::ostream& out, const RunTrace& trace, double f_star);

struct SummaryRow {
  SolverId solver = SolverId::kMe;
  long n = 0;
  double kappa = 0.0;
  RunStatus status = RunStatus::kConverged;
  int iterations = 0;
  double wall_seconds = 0.0;
  std::int64_t grad_evals_outer = 0;
  std::int64_t grad_evals_total = 0;
  double terminal_gap = 0.0;
};

inline constexpr const char* kSummaryHeader =
    "solver,n,kappa,status,iterations,wall_seconds,grad_evals_outer,grad_evals_total,terminal_gap";

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::string format_summary_table(const std::vector<SummaryRow>& rows);

/// Splits one CSV line on commas (no quoting in these files).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace ellip
