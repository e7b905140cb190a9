#include "mproots/bench.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <map>
#include <sstream>

namespace mproots {

namespace {

struct Cell {
  const BenchmarkCase* bench_case;
  size_t guess_index;
  size_t method_index;
};

std::string now_iso8601() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

RowStatus tnfe12_status(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
    case SolveStatus::MaxIterationsReached: return RowStatus::Ok;
    case SolveStatus::Diverged:
    case SolveStatus::DomainFailure: return RowStatus::Divergent;
  }
  return RowStatus::Divergent;
}

RowStatus tolerance_status(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return RowStatus::Converged;
    case SolveStatus::MaxIterationsReached: return RowStatus::NotConvergent;
    case SolveStatus::Diverged:
    case SolveStatus::DomainFailure: return RowStatus::Divergent;
  }
  return RowStatus::Divergent;
}

void fill_magnitude(BenchmarkRow& row, const Real& abs_f) {
  if (abs_f.is_zero()) {
    row.log10_abs_f = -std::numeric_limits<double>::infinity();
    row.mantissa = 0;
    row.exponent = 0;
    return;
  }
  double l = abs_f.log10_abs();
  int e = static_cast<int>(std::ceil(l));
  double m = std::pow(10.0, l - e);
  if (m >= 1.0) {  // l was an exact integer
    m /= 10;
    e += 1;
  }
  row.log10_abs_f = l;
  row.mantissa = m;
  row.exponent = e;
}

BenchmarkReport run_protocol(const std::vector<BenchmarkCase>& cases, Protocol protocol,
                             const SolveConfig& cfg) {
  // Validate configuration up front; the parallel loop must not throw.
  for (const auto& c : cases) {
    if (c.guesses.empty()) throw std::invalid_argument("case without guesses");
    resolve_function(c.function);
    for (const auto& m : c.methods) {
      m.validate();
      if (protocol == Protocol::Tnfe12 && m.evals_per_iteration() != 4) {
        throw ProtocolMismatch("TNFE-12 is defined for four-evaluation methods; '" +
                               m.name() + "' uses " +
                               std::to_string(m.evals_per_iteration()));
      }
    }
    for (const auto& g : c.guesses) Real::from_decimal(g, cfg.precision);
  }

  std::vector<Cell> cells;
  for (const auto& c : cases) {
    for (size_t gi = 0; gi < c.guesses.size(); ++gi) {
      for (size_t mi = 0; mi < c.methods.size(); ++mi) cells.push_back({&c, gi, mi});
    }
  }

  BenchmarkReport report;
  report.rows.resize(cells.size());
  report.precision_digits = cfg.precision.digits();
  report.version = kToolkitVersion;
  report.timestamp = now_iso8601();

  // Cells are independent: each one owns its function session (and so its
  // evaluation counters). Rows are gathered by index, keeping the output
  // deterministic regardless of scheduling.
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < static_cast<long>(cells.size()); ++i) {
    const Cell& cell = cells[static_cast<size_t>(i)];
    const BenchmarkCase& c = *cell.bench_case;
    BenchmarkRow row;
    row.function = c.function;
    row.guess = c.guesses[cell.guess_index];
    row.method = c.methods[cell.method_index].name();
    row.protocol = protocol;

    ScalarFunction f = resolve_function(c.function);
    Real x0 = Real::from_decimal(row.guess, cfg.precision);
    SolveResult r = solve(c.methods[cell.method_index], f, x0, cfg);

    if (protocol == Protocol::Tnfe12) {
      row.status = tnfe12_status(r.status);
      row.tnfe = 12;
      if (row.status == RowStatus::Ok) fill_magnitude(row, r.trace.back().abs_f);
    } else {
      row.status = tolerance_status(r.status);
      row.iterations = r.iterations;
      row.tnfe = r.tnfe;
    }
    report.rows[static_cast<size_t>(i)] = std::move(row);
  }

  std::sort(report.rows.begin(), report.rows.end(),
            [](const BenchmarkRow& a, const BenchmarkRow& b) {
              return std::tie(a.function, a.guess, a.method) <
                     std::tie(b.function, b.guess, b.method);
            });
  return report;
}

}  // namespace

std::string to_string(RowStatus s) {
  switch (s) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Converged: return "converged";
    case RowStatus::NotConvergent: return "NC";
    case RowStatus::Divergent: return "DIV";
  }
  return "?";
}

BenchmarkReport run_tnfe12(const std::vector<BenchmarkCase>& cases, Precision prec) {
  return run_protocol(cases, Protocol::Tnfe12, SolveConfig::fixed(prec, 3));
}

BenchmarkReport run_tolerance(const std::vector<BenchmarkCase>& cases, const Real& epsilon,
                              Precision prec, int max_iterations) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  SolveConfig cfg = SolveConfig::tolerance(prec, "1e-50", max_iterations);
  cfg.epsilon = round_to(epsilon, prec);
  return run_protocol(cases, Protocol::Tolerance, cfg);
}

namespace {

std::string magnitude_string(const BenchmarkRow& row) {
  if (std::isinf(row.log10_abs_f)) return "0";
  int digit = static_cast<int>(std::lround(row.mantissa * 10));
  int exponent = row.exponent;
  if (digit == 10) {  // mantissa rounded up to 1.0
    digit = 1;
    exponent += 1;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "0.%de%d", digit, exponent);
  return buf;
}

std::string value_cell(const BenchmarkRow& row) {
  if (row.status == RowStatus::NotConvergent) return "NC";
  if (row.status == RowStatus::Divergent) return "div.";
  if (row.protocol == Protocol::Tnfe12) return magnitude_string(row);
  return std::to_string(row.iterations) + "(" + std::to_string(row.tnfe) + ")";
}

}  // namespace

std::string emit_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "function,guess,method,protocol,exponent_or_iterations,tnfe,status,precision_digits\n";
  for (const auto& row : report.rows) {
    out << row.function << ',' << row.guess << ',' << row.method << ','
        << (row.protocol == Protocol::Tnfe12 ? "tnfe12" : "tolerance") << ',';
    if (row.protocol == Protocol::Tnfe12) {
      if (row.status == RowStatus::Ok) out << row.exponent;
    } else {
      out << row.iterations;
    }
    out << ',' << row.tnfe << ',' << to_string(row.status) << ','
        << report.precision_digits << '\n';
  }
  return out.str();
}

std::string emit_markdown(const BenchmarkReport& report) {
  std::ostringstream out;
  out << "# Benchmark report (" << report.precision_digits << " digits, toolkit "
      << report.version << ")\n";

  // Pivot: one table per function, one column per method.
  std::map<std::string, std::map<std::string, std::map<std::string, const BenchmarkRow*>>>
      pivot;  // function -> guess -> method -> row
  std::map<std::string, std::vector<std::string>> methods_of;
  for (const auto& row : report.rows) {
    pivot[row.function][row.guess][row.method] = &row;
    auto& ms = methods_of[row.function];
    if (std::find(ms.begin(), ms.end(), row.method) == ms.end()) ms.push_back(row.method);
  }

  for (const auto& [function, guesses] : pivot) {
    auto& methods = methods_of[function];
    std::sort(methods.begin(), methods.end());
    out << "\n## " << function << "\n\n| guess |";
    for (const auto& m : methods) out << ' ' << m << " |";
    out << "\n|---|";
    for (size_t i = 0; i < methods.size(); ++i) out << "---|";
    out << '\n';
    for (const auto& [guess, row_of] : guesses) {
      out << "| " << guess << " |";
      for (const auto& m : methods) {
        auto it = row_of.find(m);
        out << ' ' << (it == row_of.end() ? std::string("-") : value_cell(*it->second))
            << " |";
      }
      out << '\n';
    }
  }
  return out.str();
}

std::vector<BenchmarkCase> reference_cases(const std::vector<MethodSpec>& methods) {
  return {
      {"f1", {"1.72", "1.5", "1.7", "1.1"}, methods},
      {"f2", {"1.1", "1.8", "1.5", "2.0"}, methods},
      {"f3", {"-1.1", "-1.5", "-1.0", "-1.3"}, methods},
      {"f4", {"1.0", "1.6", "1.5", "2.1"}, methods},
      {"f5", {"0.1", "0.5", "-0.1", "-0.5"}, methods},
      {"f6", {"-0.8", "-1.2", "-0.9", "-1.5"}, methods},
      {"f7", {"1.0", "0.8", "1.8", "0.3"}, methods},
  };
}

}  // namespace mproots
