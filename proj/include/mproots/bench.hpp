#pragma once

#include <string>
#include <vector>

#include "mproots/solvers.hpp"

namespace mproots {

inline constexpr const char* kToolkitVersion = "0.1.0";

struct ProtocolMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// One benchmark job: a function, its starting guesses, the methods to run.
struct BenchmarkCase {
  std::string function;             // builtin id or expression text
  std::vector<std::string> guesses; // decimal literals, parsed at run precision
  std::vector<MethodSpec> methods;
};

enum class Protocol { Tnfe12, Tolerance };

/// Row statuses mirror the annotations used in published comparison tables:
/// NC = not convergent within the iteration budget, DIV = diverged or left
/// the function domain.
enum class RowStatus { Ok, Converged, NotConvergent, Divergent };

std::string to_string(RowStatus s);

struct BenchmarkRow {
  std::string function;
  std::string guess;
  std::string method;
  Protocol protocol;
  RowStatus status = RowStatus::Ok;
  // Tnfe12 outcome: |f(x_3)| as log10 plus mantissa/exponent with the
  // mantissa normalized to [0.1, 1).
  double log10_abs_f = 0;
  double mantissa = 0;
  int exponent = 0;
  // Tolerance outcome.
  int iterations = 0;
  long tnfe = 0;
};

struct BenchmarkReport {
  std::vector<BenchmarkRow> rows;  // sorted by (function, guess, method)
  int precision_digits = 0;
  std::string version;
  std::string timestamp;  // informational only; never emitted
};

/// Fixed three iterations of a four-evaluation method; reports |f(x_3)|.
/// Two-evaluation methods are rejected rather than silently rescaled.
BenchmarkReport run_tnfe12(const std::vector<BenchmarkCase>& cases, Precision prec);

/// Stops at the first |f(x_{n+1})| < epsilon; reports iterations and TNFE.
BenchmarkReport run_tolerance(const std::vector<BenchmarkCase>& cases, const Real& epsilon,
                              Precision prec, int max_iterations = 100);

/// CSV columns:
///   function,guess,method,protocol,exponent_or_iterations,tnfe,status,precision_digits
std::string emit_csv(const BenchmarkReport& report);

/// One table per function, methods as columns, in the style of published
/// comparison tables.
std::string emit_markdown(const BenchmarkReport& report);

/// The bundled seven test functions with their published starting guesses.
std::vector<BenchmarkCase> reference_cases(const std::vector<MethodSpec>& methods);

}  // namespace mproots
