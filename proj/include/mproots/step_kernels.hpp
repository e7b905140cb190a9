#pragma once

#include <vector>

namespace mproots::kernels {

/// Outcome flags for one iteration of a multipoint kernel. Degeneracies are
/// reported as data so the caller (solver loop or pixel loop) decides how to
/// treat them; kernels never throw on their own.
enum class StepFlag {
  Ok,
  EarlyRoot,             // a sub-step landed exactly on a root
  DerivativeZero,        // f'(x) = 0
  DegenerateNodes,       // two divided-difference nodes coincide
  DegenerateDifference,  // a divided difference evaluated to zero
};

template <class Num>
struct StepResult {
  Num x_next{};
  Num f_next{};  // meaningful only for EarlyRoot (exact zero there)
  StepFlag flag = StepFlag::Ok;
};

/// Intermediate quantities of one three-step iteration, for diagnostics.
template <class Num>
struct ThreeStepTrace {
  Num y{}, z{};
  Num t1{}, t2{}, t3{}, t4{};
};

template <class Num>
bool is_zero_value(const Num& v) {
  return v == Num{};
}

template <class Num>
Num eval_poly(const std::vector<Num>& coeffs, const Num& t) {
  if (coeffs.empty()) return Num{};
  Num acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * t + coeffs[i];
  return acc;
}

template <class Num>
Num ipow(Num base, int n) {
  Num acc = base;
  for (int i = 1; i < n; ++i) acc = acc * base;
  return acc;
}

/// Weight functions of the three-step family as coefficient vectors.
template <class Num>
struct WeightSet {
  std::vector<Num> A, B, P, Q, R;
};

/// Multiplicative identity carrying the argument's precision; overridden by
/// ADL for scalar types that carry state (the arbitrary-precision Real).
template <class Num>
Num unit_like(const Num&) {
  return Num(1);
}

/// Four-parametric family: A = 1 + a t^3, B = 1 + t + b t^2,
/// P = t^2 + 2(b-1) t^3, Q = g t^2, R = 1 + 2t + d t^2.
template <class Num>
WeightSet<Num> make_weight_set(const Num& alpha, const Num& beta, const Num& gamma,
                               const Num& delta) {
  Num one = unit_like(alpha);
  Num zero = alpha - alpha;
  Num two = one + one;
  WeightSet<Num> w;
  w.A = {one, zero, zero, alpha};
  w.B = {one, one, beta};
  w.P = {zero, zero, one, (beta - one) * two};
  w.Q = {zero, zero, gamma};
  w.R = {one, two, delta};
  return w;
}

namespace detail {

// Steps two and three shared by the derivative and derivative-free kernels:
// z = y - B(t2) f(y)/f[x,y];  x+ = z - {P(t2)+Q(t3)+R(t4)} f(z)/f[y,z].
template <class Num, class F>
StepResult<Num> three_step_tail(F&& f, const Num& x, const Num& fx, const Num& y,
                                const WeightSet<Num>& w, ThreeStepTrace<Num>* trace) {
  StepResult<Num> r;
  if (y == x) {
    r.flag = StepFlag::DegenerateNodes;
    return r;
  }
  Num fy = f(y);
  if (is_zero_value(fy)) {
    r.x_next = y;
    r.f_next = fy;
    r.flag = StepFlag::EarlyRoot;
    return r;
  }
  Num fxy = (fx - fy) / (x - y);
  if (is_zero_value(fxy)) {
    r.flag = StepFlag::DegenerateDifference;
    return r;
  }
  Num t2 = fy / fx;
  Num z = y - eval_poly(w.B, t2) * fy / fxy;
  if (z == y) {
    r.flag = StepFlag::DegenerateNodes;
    return r;
  }
  Num fz = f(z);
  if (is_zero_value(fz)) {
    r.x_next = z;
    r.f_next = fz;
    r.flag = StepFlag::EarlyRoot;
    return r;
  }
  Num t3 = fz / fy;
  Num t4 = fz / fx;
  Num fyz = (fy - fz) / (y - z);
  if (is_zero_value(fyz)) {
    r.flag = StepFlag::DegenerateDifference;
    return r;
  }
  Num weight = eval_poly(w.P, t2) + eval_poly(w.Q, t3) + eval_poly(w.R, t4);
  r.x_next = z - weight * fz / fyz;
  if (trace) {
    trace->y = y;
    trace->z = z;
    trace->t2 = t2;
    trace->t3 = t3;
    trace->t4 = t4;
  }
  return r;
}

}  // namespace detail

/// Three-step eighth-order iteration:
///   y  = x - A(t1) f(x)/f'(x),            t1 = f(x)/f'(x)
///   z  = y - B(t2) f(y)/f[x,y],           t2 = f(y)/f(x)
///   x+ = z - {P(t2)+Q(t3)+R(t4)} f(z)/f[y,z]
/// Evaluates f'(x), f(y), f(z); f(x) is supplied by the caller.
template <class Num, class F, class DF>
StepResult<Num> om8_step(F&& f, DF&& df, const Num& x, const Num& fx,
                         const WeightSet<Num>& w, ThreeStepTrace<Num>* trace = nullptr) {
  Num fpx = df(x);
  if (is_zero_value(fpx)) return {Num{}, Num{}, StepFlag::DerivativeZero};
  Num t1 = fx / fpx;
  Num y = x - eval_poly(w.A, t1) * t1;
  if (trace) trace->t1 = t1;
  return detail::three_step_tail(f, x, fx, y, w, trace);
}

/// Derivative-free variant: f'(x) is replaced by f[w,x] with the shifted
/// node w = x + a f(x)^m. Evaluates f(w), f(y), f(z).
template <class Num, class F>
StepResult<Num> om8df_step(F&& f, const Num& x, const Num& fx, const WeightSet<Num>& w,
                           int shift_exponent, const Num& shift_scale,
                           ThreeStepTrace<Num>* trace = nullptr) {
  Num wn = x + shift_scale * ipow(fx, shift_exponent);
  if (wn == x) return {Num{}, Num{}, StepFlag::DegenerateDifference};
  Num fw = f(wn);
  Num fwx = (fw - fx) / (wn - x);
  if (is_zero_value(fwx)) return {Num{}, Num{}, StepFlag::DegenerateDifference};
  Num t1 = fx / fwx;
  Num y = x - eval_poly(w.A, t1) * t1;
  if (trace) trace->t1 = t1;
  return detail::three_step_tail(f, x, fx, y, w, trace);
}

/// Seventh-order three-step scheme with weights G, H of t = f(y)/f(x):
///   y  = x - f(x)/f'(x)
///   z  = y - G(t) f(y)/f[x,y]
///   x+ = z - H(t) f(z)/f[y,z]
template <class Num, class F, class DF>
StepResult<Num> sm7_step(F&& f, DF&& df, const Num& x, const Num& fx,
                         const std::vector<Num>& g, const std::vector<Num>& h) {
  StepResult<Num> r;
  Num fpx = df(x);
  if (is_zero_value(fpx)) {
    r.flag = StepFlag::DerivativeZero;
    return r;
  }
  Num y = x - fx / fpx;
  if (y == x) {
    r.flag = StepFlag::DegenerateNodes;
    return r;
  }
  Num fy = f(y);
  if (is_zero_value(fy)) {
    r.x_next = y;
    r.f_next = fy;
    r.flag = StepFlag::EarlyRoot;
    return r;
  }
  Num t = fy / fx;
  Num fxy = (fx - fy) / (x - y);
  if (is_zero_value(fxy)) {
    r.flag = StepFlag::DegenerateDifference;
    return r;
  }
  Num z = y - eval_poly(g, t) * fy / fxy;
  if (z == y) {
    r.flag = StepFlag::DegenerateNodes;
    return r;
  }
  Num fz = f(z);
  if (is_zero_value(fz)) {
    r.x_next = z;
    r.f_next = fz;
    r.flag = StepFlag::EarlyRoot;
    return r;
  }
  Num fyz = (fy - fz) / (y - z);
  if (is_zero_value(fyz)) {
    r.flag = StepFlag::DegenerateDifference;
    return r;
  }
  r.x_next = z - eval_poly(h, t) * fz / fyz;
  return r;
}

template <class Num, class F, class DF>
StepResult<Num> newton_step(F&&, DF&& df, const Num& x, const Num& fx) {
  Num fpx = df(x);
  if (is_zero_value(fpx)) return {Num{}, Num{}, StepFlag::DerivativeZero};
  return {x - fx / fpx, Num{}, StepFlag::Ok};
}

/// x+ = x - f(x)^2 / (f(x + f(x)) - f(x))
template <class Num, class F>
StepResult<Num> steffensen_step(F&& f, const Num& x, const Num& fx) {
  Num w = x + fx;
  if (w == x) return {Num{}, Num{}, StepFlag::DegenerateDifference};
  Num fw = f(w);
  if (fw == fx) return {Num{}, Num{}, StepFlag::DegenerateDifference};
  return {x - fx * fx / (fw - fx), Num{}, StepFlag::Ok};
}

}  // namespace mproots::kernels
