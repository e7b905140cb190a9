#pragma once

#include <string>
#include <vector>

#include "mproots/numerics.hpp"

namespace mproots {

/// Polynomial with ascending coefficients (c0, c1, c2, ...), evaluated by
/// Horner's rule.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Real> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::vector<Real>& coeffs() const { return coeffs_; }

  Real coeff(size_t k) const;

  /// k-th derivative at 0, which is exactly k! * c_k.
  Real derivative_at_zero(int k) const;

  Real operator()(const Real& t) const;

  bool is_zero() const;

 private:
  std::vector<Real> coeffs_;
};

/// The five weight functions of the three-step eighth-order family.
struct WeightFamily {
  Polynomial A, B, P, Q, R;
};

/// Free parameters of the four-parametric family
///   A = 1 + alpha t^3, B = 1 + t + beta t^2, P = t^2 + 2(beta-1) t^3,
///   Q = gamma t^2, R = 1 + 2t + delta t^2.
struct FamilyParams {
  Real alpha, beta, gamma, delta;

  static FamilyParams defaults(Precision prec);
  static FamilyParams make(double alpha, double beta, double gamma, double delta,
                           Precision prec);
};

struct ConditionViolation {
  std::string condition;  // e.g. "B'(0)=1"
  std::string detail;
};

/// Checks the exact coefficient identities required for eighth order:
///   A(0)=1, A'(0)=0, A''(0)=0;  B(0)=1, B'(0)=1;
///   P'(0)=0, P''(0)=2, P'''(0)=6B''(0)-12;  Q'(0)=0;
///   R(0)=1-P(0)-Q(0), R'(0)=2.
/// Violations are data, not errors: the list is empty iff all hold.
std::vector<ConditionViolation> validate_weights(const WeightFamily& w);

/// Builds the four-parametric family; the result passes validate_weights
/// for every parameter choice.
WeightFamily weights_from_params(const FamilyParams& p);

}  // namespace mproots
