#pragma once

#include <utility>
#include <vector>

#include "mproots/expr.hpp"
#include "mproots/numerics.hpp"
#include "mproots/solvers.hpp"
#include "mproots/weights.hpp"

namespace mproots {

struct InsufficientData : std::runtime_error {
  InsufficientData() : std::runtime_error("not enough usable trace entries") {}
};

struct ZeroError : std::runtime_error {
  ZeroError() : std::runtime_error("an iterate hit the root exactly") {}
};

struct NotARoot : std::runtime_error {
  NotARoot() : std::runtime_error("the supplied point is not a root") {}
};

struct MultipleRoot : std::runtime_error {
  MultipleRoot() : std::runtime_error("f'(root) vanishes; root is not simple") {}
};

/// Computational order of convergence from successive known-root errors,
/// rho_n = ln(e_{n+1}/e_n) / ln(e_n/e_{n-1}).
struct CocEstimate {
  double value = 0;
  std::pair<size_t, size_t> window{0, 0};  // first/last trace index used
  double spread = 0;                       // max deviation of a rho from the mean
  size_t samples = 0;
};

/// Measurement window for order estimation. An estimate rho_n is admitted
/// when its three errors all sit above the precision floor
/// 10^(-floor_fraction*digits) and the trailing error has entered the
/// asymptotic regime (|e_{n+1}| <= 10^asymptotic_log10).
///
/// A hard per-error window cannot work at order eight: three consecutive
/// errors e, e^8, e^64 can never fit between 1e-30 and the floor, so the
/// window constrains each estimate, not each error.
struct CocWindow {
  double asymptotic_log10 = -30;
  double floor_fraction = 0.8;
};

CocEstimate coc(const std::vector<Real>& errors, Precision prec, CocWindow window = {});

/// p^(1/n) for order p and n evaluations per iteration.
double efficiency_index(double order, int evals);

/// c_h = f^(h)(root) / h! for h = 1..4.
struct TaylorCoefficients {
  Real c1, c2, c3, c4;
};

/// High-order central finite differences at step 10^(-digits/8); accurate
/// to at least digits/4 significant digits.
TaylorCoefficients taylor_coeffs(ScalarFunction& f, const Real& root, Precision prec);

struct AsymptoticRatios {
  std::vector<Real> ratios;  // e_{n+1} / e_n^order over the admitted window
  double max_rel_drift = 0;  // max relative deviation between consecutive ratios
};

/// Ratios of successive signed errors to the given order. For the true
/// order the sequence stabilizes at the asymptotic error constant.
AsymptoticRatios asymptotic_ratio(const std::vector<Real>& errors, int order,
                                  Precision prec, CocWindow window = {});

enum class ErrorFormula { General, Particular };

/// Evaluates one of the two printed e_n^8 coefficient expressions for the
/// four-parametric family. The two disagree for alpha != 0 or gamma != 0;
/// neither is asserted anywhere, measurement decides.
Real predicted_constant(const TaylorCoefficients& c, const FamilyParams& params,
                        ErrorFormula formula);

/// Reference root of a builtin: the exact value where one exists (f4, f5,
/// f6), otherwise a high-precision refinement of a 6-digit seed.
Real reference_root(const std::string& builtin_id, Precision prec = Precision(2000));

/// Signed errors x_n - root for every trace entry.
std::vector<Real> errors_from_trace(const SolveResult& result, const Real& root);

}  // namespace mproots
