#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mproots/expr.hpp"
#include "mproots/numerics.hpp"
#include "mproots/step_kernels.hpp"
#include "mproots/weights.hpp"

namespace mproots {

struct DerivativeZero : NumericError {
  DerivativeZero() : NumericError("derivative is zero at the current iterate") {}
};

struct DegenerateNodes : NumericError {
  DegenerateNodes() : NumericError("divided-difference nodes coincide at working precision") {}
};

struct DegenerateDifference : NumericError {
  DegenerateDifference() : NumericError("divided difference is zero or undefined") {}
};

/// Two-point divided difference f[a,b] = (f(a) - f(b)) / (a - b).
/// Takes the already computed values so callers control evaluation counting.
Real divided_difference(const Real& a, const Real& fa, const Real& b, const Real& fb);

enum class MethodKind { Newton, Steffensen, Sm7, Om8, Om8Df };

/// Which iteration to run, plus its weight data.
struct MethodSpec {
  MethodKind kind = MethodKind::Newton;
  std::optional<WeightFamily> weights;              // Om8, Om8Df
  std::optional<std::pair<Polynomial, Polynomial>> gh;  // Sm7: G, H
  int shift_exponent = 3;                           // Om8Df: w = x + a f(x)^m
  std::optional<Real> shift_scale;                  // Om8Df: a (default 1)

  static MethodSpec newton();
  static MethodSpec steffensen();
  /// Default weights G = 1 + t, H = 1 + t^2 (lowest-degree polynomials
  /// meeting G(0)=G'(0)=1; H(0)=1, H'(0)=0, H''(0)=2).
  static MethodSpec sm7(Precision prec);
  static MethodSpec sm7(Polynomial g, Polynomial h);
  static MethodSpec om8(const FamilyParams& params);
  static MethodSpec om8(WeightFamily weights);
  static MethodSpec om8_df(const FamilyParams& params, int shift_exponent = 3);
  static MethodSpec om8_df(const FamilyParams& params, int shift_exponent,
                           Real shift_scale);

  /// Function evaluations (value + derivative) per full iteration.
  int evals_per_iteration() const;

  /// Display name ("OM8", "SM7", ...).
  std::string name() const;

  /// Parses a lowercase CLI name ("om8", "newton", ...).
  static MethodKind kind_from_string(const std::string& name);

  /// Throws std::invalid_argument when weight conditions do not hold.
  void validate() const;
};

struct SolveConfig {
  enum class Mode { FixedIterations, Tolerance };

  Precision precision;
  Mode mode = Mode::Tolerance;
  int fixed_iterations = 3;
  Real epsilon{};           // Tolerance mode stop: |f(x_{n+1})| < epsilon
  int max_iterations = 100;
  Real divergence_bound{};  // |x| or |f(x)| beyond this is divergence

  static SolveConfig tolerance(Precision prec, std::string_view epsilon = "1e-50",
                               int max_iterations = 100);
  static SolveConfig fixed(Precision prec, int iterations);
};

enum class SolveStatus { Converged, MaxIterationsReached, Diverged, DomainFailure };

std::string to_string(SolveStatus status);

struct IterationRecord {
  int n;
  Real x;
  Real abs_f;
};

struct SolveResult {
  SolveStatus status = SolveStatus::DomainFailure;
  Real root;
  std::vector<IterationRecord> trace;  // entry 0 is the starting guess
  int iterations = 0;
  long tnfe = 0;  // evals_per_iteration * iterations, by table convention
};

struct StepOutcome {
  Real x_next;
  bool early_root = false;  // a sub-step hit a root exactly; x_next is it
};

/// Single iterations of each scheme. These evaluate f(x) themselves (plus
/// the scheme's inner evaluations) and throw DerivativeZero /
/// DegenerateNodes / DegenerateDifference on the degeneracies named in the
/// solve contract.
StepOutcome step_om8(ScalarFunction& f, const Real& x, const WeightFamily& w,
                     kernels::ThreeStepTrace<Real>* trace = nullptr);
StepOutcome step_om8_df(ScalarFunction& f, const Real& x, const WeightFamily& w,
                        int shift_exponent, const Real& shift_scale,
                        kernels::ThreeStepTrace<Real>* trace = nullptr);
StepOutcome step_sm7(ScalarFunction& f, const Real& x, const Polynomial& g,
                     const Polynomial& h);
StepOutcome step_newton(ScalarFunction& f, const Real& x);
StepOutcome step_steffensen(ScalarFunction& f, const Real& x);

/// Runs a full solve. Numerical failures become statuses, never exceptions;
/// invalid configurations (weight conditions, bad parameters) throw
/// std::invalid_argument before the iteration starts.
SolveResult solve(const MethodSpec& method, ScalarFunction& f, const Real& x0,
                  const SolveConfig& cfg);

}  // namespace mproots
