#include "mproots/analysis.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace mproots {

namespace {

// Log magnitudes of the usable prefix: entries are dropped from the first
// zero or below-floor error onward.
std::vector<double> usable_log10(const std::vector<Real>& errors, double floor_log10,
                                 bool* hit_zero) {
  std::vector<double> logs;
  *hit_zero = false;
  for (const Real& e : errors) {
    if (e.is_zero()) {
      *hit_zero = true;
      break;
    }
    double l = e.log10_abs();
    if (l < floor_log10) break;
    logs.push_back(l);
  }
  return logs;
}

}  // namespace

CocEstimate coc(const std::vector<Real>& errors, Precision prec, CocWindow window) {
  const double floor_log10 = -window.floor_fraction * prec.digits();
  bool hit_zero = false;
  std::vector<double> logs = usable_log10(errors, floor_log10, &hit_zero);
  if (logs.size() < 3) {
    if (hit_zero) throw ZeroError();
    throw InsufficientData();
  }

  CocEstimate est;
  std::vector<double> rhos;
  for (size_t n = 1; n + 1 < logs.size(); ++n) {
    if (logs[n + 1] > window.asymptotic_log10) continue;
    double den = logs[n] - logs[n - 1];
    if (den == 0) continue;
    rhos.push_back((logs[n + 1] - logs[n]) / den);
    if (rhos.size() == 1) est.window.first = n - 1;
    est.window.second = n + 1;
  }
  if (rhos.empty()) throw InsufficientData();

  double mean = 0;
  for (double r : rhos) mean += r;
  mean /= static_cast<double>(rhos.size());
  double spread = 0;
  for (double r : rhos) spread = std::max(spread, std::abs(r - mean));
  est.value = mean;
  est.spread = spread;
  est.samples = rhos.size();
  return est;
}

double efficiency_index(double order, int evals) {
  if (order < 1 || evals < 1) throw std::invalid_argument("order and evals must be >= 1");
  return std::pow(order, 1.0 / evals);
}

TaylorCoefficients taylor_coeffs(ScalarFunction& f, const Real& root, Precision prec) {
  const int digits = prec.digits();
  const Real x = round_to(root, prec);
  const Real f0 = f.value(x);
  if (!f0.is_zero() && f0.log10_abs() > -digits / 2.0) throw NotARoot();

  const Real h = Real::from_decimal("1e-" + std::to_string(digits / 8), prec);
  const Real fm2 = f.value(x - h * 2);
  const Real fm1 = f.value(x - h);
  const Real fp1 = f.value(x + h);
  const Real fp2 = f.value(x + h * 2);

  TaylorCoefficients c;
  c.c1 = (fp1 - fm1) / (h * 2);
  c.c2 = (fp1 - f0 * 2 + fm1) / (h * h * 2);
  c.c3 = (fp2 - fp1 * 2 + fm1 * 2 - fm2) / (pow(h, 3L) * 12);
  c.c4 = (fp2 - fp1 * 4 + f0 * 6 - fm1 * 4 + fm2) / (pow(h, 4L) * 24);

  if (c.c1.is_zero() || c.c1.log10_abs() < -digits / 4.0) throw MultipleRoot();
  return c;
}

AsymptoticRatios asymptotic_ratio(const std::vector<Real>& errors, int order,
                                  Precision prec, CocWindow window) {
  const double floor_log10 = -window.floor_fraction * prec.digits();
  AsymptoticRatios out;
  for (size_t n = 0; n + 1 < errors.size(); ++n) {
    const Real& e = errors[n];
    const Real& en = errors[n + 1];
    if (e.is_zero() || en.is_zero()) break;
    if (e.log10_abs() < floor_log10 || en.log10_abs() < floor_log10) break;
    if (en.log10_abs() > window.asymptotic_log10) continue;
    out.ratios.push_back(en / pow(e, static_cast<long>(order)));
  }
  if (out.ratios.size() < 2) {
    if (out.ratios.empty()) throw InsufficientData();
    return out;
  }
  for (size_t i = 0; i + 1 < out.ratios.size(); ++i) {
    const Real& a = out.ratios[i];
    const Real& b = out.ratios[i + 1];
    if (b.is_zero()) {
      out.max_rel_drift = std::numeric_limits<double>::infinity();
      continue;
    }
    Real rel = abs((a - b) / b);
    out.max_rel_drift = std::max(out.max_rel_drift, rel.to_double());
  }
  return out;
}

Real predicted_constant(const TaylorCoefficients& c, const FamilyParams& params,
                        ErrorFormula formula) {
  const Real& c1 = c.c1;
  const Real& c2 = c.c2;
  const Real& c3 = c.c3;
  const Real& c4 = c.c4;
  const Real& alpha = params.alpha;
  const Real& beta = params.beta;
  const Real& gamma = params.gamma;

  if (formula == ErrorFormula::General) {
    // Derivative values of the particular family: A'''(0)=6a, B''(0)=2b,
    // B'''(0)=0, Q''(0)=2g, P4(0)=0.
    Real bpp = beta * 2;
    Real qpp = gamma * 2;
    Real a3 = alpha * 6;
    Real lead = c2 / (pow(c1, 7L) * 48);
    Real mid = c1 * c3 * 2 + c2 * c2 * (bpp - 6);
    Real tail = c1 * c1 * c3 * c3 * qpp * 12 +
                c1 * c2 * c2 * c3 * ((bpp - 6) * qpp + 8) * 12 +
                c1 * c1 * c2 * (c1 * a3 - c4 * 6) * 4 +
                pow(c2, 4L) * (qpp * 108 + bpp * ((bpp - 12) * qpp + 8) * 3 - 72);
    return lead * mid * tail;
  }

  // Particular-case expression exactly as printed.
  Real lead = c2 / pow(c1, 7L);
  Real mid = c1 * c3 + c2 * c2 * (beta - 3);
  Real tail = alpha * c1 * c1 * c2 +
              pow(c2, 4L) * (beta * 2 - 3 + (beta * beta - 3) * gamma) +
              c1 * c2 * c2 * c3 * ((beta - 3) * gamma + 2) * 2 +
              c1 * c1 * (gamma * c3 * c3 - c2 * c4);
  return lead * mid * tail;
}

Real reference_root(const std::string& builtin_id, Precision prec) {
  static const std::unordered_map<std::string, std::string> seeds = {
      {"f1", "1.67963"}, {"f2", "1.34742"}, {"f3", "-1.20764"}, {"f7", "1.19776"}};

  if (builtin_id == "f4") return sqrt(Real(2, prec));
  if (builtin_id == "f5") return Real(0, prec);
  if (builtin_id == "f6") return Real(-1, prec);

  auto it = seeds.find(builtin_id);
  if (it == seeds.end()) throw UnknownBuiltin(builtin_id);

  ScalarFunction f = builtin(builtin_id);
  Real x = Real::from_decimal(it->second, prec);
  for (int i = 0; i < 200; ++i) {
    Real fx = f.value(x);
    if (fx.is_zero()) break;
    Real next = x - fx / f.derivative(x);
    if (next == x) break;
    x = std::move(next);
  }
  return x;
}

std::vector<Real> errors_from_trace(const SolveResult& result, const Real& root) {
  std::vector<Real> errors;
  errors.reserve(result.trace.size());
  for (const auto& rec : result.trace) errors.push_back(rec.x - root);
  return errors;
}

}  // namespace mproots
