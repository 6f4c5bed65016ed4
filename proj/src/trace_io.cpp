#include "ellip/trace_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ellip/errors.hpp"
#include "ellip/format.hpp"

namespace ellip {

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_opt(const std::string& field) {
  if (field.empty()) return std::nullopt;
  return parse_double(field);
}

std::int64_t parse_int(const std::string& field) {
  const double v = parse_double(field);
  const auto i = static_cast<std::int64_t>(v);
  if (static_cast<double>(i) != v) throw InvalidArgument("trace csv: expected an integer, got '" + field + "'");
  return i;
}

}  // namespace

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace, double f_star) {
  out << kTraceHeader << '\n';
  for (const IterateRecord& r : trace.records) {
    out << r.k << ',' << format_double(r.f_val) << ',' << format_double(r.f_val - f_star) << ','
        << format_double(r.grad_norm) << ',' << opt(r.t_k) << ',' << opt(r.sin2_theta) << ','
        << (r.li_flag ? (*r.li_flag ? "1" : "0") : "") << ',' << opt(r.ratio) << ',' << r.grad_evals_outer << ','
        << r.grad_evals_total << ',' << r.value_evals_total << '\n';
  }
}

std::vector<IterateRecord> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTraceHeader) throw InvalidArgument("trace csv: missing or unknown header");
  std::vector<IterateRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 11) throw InvalidArgument("trace csv: expected 11 fields, got " + std::to_string(f.size()));
    IterateRecord r;
    r.k = static_cast<int>(parse_int(f[0]));
    r.f_val = parse_double(f[1]);
    r.grad_norm = parse_double(f[3]);
    r.t_k = parse_opt(f[4]);
    r.sin2_theta = parse_opt(f[5]);
    if (f[6] == "1")
      r.li_flag = true;
    else if (f[6] == "0")
      r.li_flag = false;
    else if (!f[6].empty())
      throw InvalidArgument("trace csv: li_flag must be 0, 1 or empty");
    r.ratio = parse_opt(f[7]);
    r.grad_evals_outer = parse_int(f[8]);
    r.grad_evals_total = parse_int(f[9]);
    r.value_evals_total = parse_int(f[10]);
    records.push_back(r);
  }
  return records;
}

void write_series_csv(std::ostream& out, const RunTrace& trace, double f_star) {
  out << "grad_evals_outer,grad_evals_total,gap\n";
  for (const IterateRecord& r : trace.records)
    out << r.grad_evals_outer << ',' << r.grad_evals_total << ',' << format_double(r.f_val - f_star) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& r : rows) {
    out << to_string(r.solver) << ',' << r.n << ',' << format_double(r.kappa) << ',' << to_string(r.status) << ','
        << r.iterations << ',' << format_double(r.wall_seconds) << ',' << r.grad_evals_outer << ','
        << r.grad_evals_total << ',' << format_double(r.terminal_gap) << '\n';
  }
}

std::string format_summary_table(const std::vector<SummaryRow>& rows) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-9s %6s %8s %-16s %7s %10s %11s %11s %12s\n", "method", "n", "kappa", "status",
                "iters", "wall(s)", "grads(out)", "grads(all)", "f-f*");
  out << buf;
  for (const SummaryRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%-9s %6ld %8.4g %-16s %7d %10.4f %11lld %11lld %12.3e\n",
                  std::string(to_string(r.solver)).c_str(), r.n, r.kappa, std::string(to_string(r.status)).c_str(),
                  r.iterations, r.wall_seconds, static_cast<long long>(r.grad_evals_outer),
                  static_cast<long long>(r.grad_evals_total), r.terminal_gap);
    out << buf;
  }
  return out.str();
}

}  // namespace ellip
