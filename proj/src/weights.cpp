#include "mproots/weights.hpp"

namespace mproots {

Real Polynomial::coeff(size_t k) const {
  if (k < coeffs_.size()) return coeffs_[k];
  return Real();
}

Real Polynomial::derivative_at_zero(int k) const {
  long factorial = 1;
  for (int i = 2; i <= k; ++i) factorial *= i;
  return coeff(static_cast<size_t>(k)) * factorial;
}

Real Polynomial::operator()(const Real& t) const {
  if (coeffs_.empty()) return Real::constant_like(0, t);
  Real acc = coeffs_.back();
  for (size_t i = coeffs_.size() - 1; i-- > 0;) {
    acc = acc * t + coeffs_[i];
  }
  return acc;
}

bool Polynomial::is_zero() const {
  for (const Real& c : coeffs_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

FamilyParams FamilyParams::defaults(Precision prec) {
  return {Real(0, prec), Real(3, prec), Real(0, prec), Real(1, prec)};
}

FamilyParams FamilyParams::make(double alpha, double beta, double gamma, double delta,
                                Precision prec) {
  return {Real::from_double(alpha, prec), Real::from_double(beta, prec),
          Real::from_double(gamma, prec), Real::from_double(delta, prec)};
}

namespace {

void require(std::vector<ConditionViolation>& out, bool ok, const char* condition,
             const Real& lhs, const Real& rhs) {
  if (ok) return;
  out.push_back({condition, "got " + lhs.to_string(8) + ", expected " + rhs.to_string(8)});
}

}  // namespace

std::vector<ConditionViolation> validate_weights(const WeightFamily& w) {
  std::vector<ConditionViolation> out;
  const Real zero;
  const Real one = Real::constant_like(1, zero);
  const Real two = Real::constant_like(2, zero);

  Real v = w.A.derivative_at_zero(0);
  require(out, v == 1, "A(0)=1", v, one);
  v = w.A.derivative_at_zero(1);
  require(out, v.is_zero(), "A'(0)=0", v, zero);
  v = w.A.derivative_at_zero(2);
  require(out, v.is_zero(), "A''(0)=0", v, zero);

  v = w.B.derivative_at_zero(0);
  require(out, v == 1, "B(0)=1", v, one);
  v = w.B.derivative_at_zero(1);
  require(out, v == 1, "B'(0)=1", v, one);

  v = w.P.derivative_at_zero(1);
  require(out, v.is_zero(), "P'(0)=0", v, zero);
  v = w.P.derivative_at_zero(2);
  require(out, v == 2, "P''(0)=2", v, two);
  v = w.P.derivative_at_zero(3);
  Real want = w.B.derivative_at_zero(2) * 6 - 12;
  require(out, v == want, "P'''(0)=6B''(0)-12", v, want);

  v = w.Q.derivative_at_zero(1);
  require(out, v.is_zero(), "Q'(0)=0", v, zero);

  v = w.R.derivative_at_zero(0);
  want = 1 - w.P.derivative_at_zero(0) - w.Q.derivative_at_zero(0);
  require(out, v == want, "R(0)=1-P(0)-Q(0)", v, want);
  v = w.R.derivative_at_zero(1);
  require(out, v == 2, "R'(0)=2", v, two);

  return out;
}

WeightFamily weights_from_params(const FamilyParams& p) {
  const Real zero = Real::constant_like(0, p.alpha);
  const Real one = Real::constant_like(1, p.alpha);
  WeightFamily w;
  w.A = Polynomial({one, zero, zero, p.alpha});
  w.B = Polynomial({one, one, p.beta});
  w.P = Polynomial({zero, zero, one, (p.beta - 1) * 2});
  w.Q = Polynomial({zero, zero, p.gamma});
  w.R = Polynomial({one, one * 2, p.delta});
  return w;
}

}  // namespace mproots
