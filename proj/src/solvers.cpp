#include "mproots/solvers.hpp"

#include <cmath>

namespace mproots {

namespace {

std::vector<Real> coeffs_of(const Polynomial& p) { return p.coeffs(); }

kernels::WeightSet<Real> weight_set_of(const WeightFamily& w) {
  return {coeffs_of(w.A), coeffs_of(w.B), coeffs_of(w.P), coeffs_of(w.Q), coeffs_of(w.R)};
}

[[noreturn]] void raise(kernels::StepFlag flag) {
  switch (flag) {
    case kernels::StepFlag::DerivativeZero: throw DerivativeZero();
    case kernels::StepFlag::DegenerateNodes: throw DegenerateNodes();
    case kernels::StepFlag::DegenerateDifference: throw DegenerateDifference();
    default: throw std::logic_error("unexpected step flag");
  }
}

StepOutcome to_outcome(kernels::StepResult<Real>&& r) {
  if (r.flag == kernels::StepFlag::Ok) return {std::move(r.x_next), false};
  if (r.flag == kernels::StepFlag::EarlyRoot) return {std::move(r.x_next), true};
  raise(r.flag);
}

}  // namespace

Real divided_difference(const Real& a, const Real& fa, const Real& b, const Real& fb) {
  if (a == b) throw DegenerateNodes();
  return (fa - fb) / (a - b);
}

MethodSpec MethodSpec::newton() {
  MethodSpec m;
  m.kind = MethodKind::Newton;
  return m;
}

MethodSpec MethodSpec::steffensen() {
  MethodSpec m;
  m.kind = MethodKind::Steffensen;
  return m;
}

MethodSpec MethodSpec::sm7(Precision prec) {
  const Real zero(0, prec);
  const Real one(1, prec);
  Polynomial g({one, one});
  Polynomial h({one, zero, one});
  return sm7(std::move(g), std::move(h));
}

MethodSpec MethodSpec::sm7(Polynomial g, Polynomial h) {
  MethodSpec m;
  m.kind = MethodKind::Sm7;
  m.gh = {std::move(g), std::move(h)};
  return m;
}

MethodSpec MethodSpec::om8(const FamilyParams& params) {
  return om8(weights_from_params(params));
}

MethodSpec MethodSpec::om8(WeightFamily weights) {
  MethodSpec m;
  m.kind = MethodKind::Om8;
  m.weights = std::move(weights);
  return m;
}

MethodSpec MethodSpec::om8_df(const FamilyParams& params, int shift_exponent) {
  return om8_df(params, shift_exponent, Real::constant_like(1, params.alpha));
}

MethodSpec MethodSpec::om8_df(const FamilyParams& params, int shift_exponent,
                              Real shift_scale) {
  MethodSpec m;
  m.kind = MethodKind::Om8Df;
  m.weights = weights_from_params(params);
  m.shift_exponent = shift_exponent;
  m.shift_scale = std::move(shift_scale);
  return m;
}

int MethodSpec::evals_per_iteration() const {
  switch (kind) {
    case MethodKind::Newton:
    case MethodKind::Steffensen: return 2;
    case MethodKind::Sm7:
    case MethodKind::Om8:
    case MethodKind::Om8Df: return 4;
  }
  return 0;
}

std::string MethodSpec::name() const {
  switch (kind) {
    case MethodKind::Newton: return "Newton";
    case MethodKind::Steffensen: return "Steffensen";
    case MethodKind::Sm7: return "SM7";
    case MethodKind::Om8: return "OM8";
    case MethodKind::Om8Df: return "OM8DF";
  }
  return "?";
}

MethodKind MethodSpec::kind_from_string(const std::string& name) {
  if (name == "newton") return MethodKind::Newton;
  if (name == "steffensen") return MethodKind::Steffensen;
  if (name == "sm7") return MethodKind::Sm7;
  if (name == "om8") return MethodKind::Om8;
  if (name == "om8df") return MethodKind::Om8Df;
  throw std::invalid_argument("unknown method '" + name + "'");
}

void MethodSpec::validate() const {
  switch (kind) {
    case MethodKind::Newton:
    case MethodKind::Steffensen:
      return;
    case MethodKind::Sm7: {
      if (!gh) throw std::invalid_argument("sm7 requires weight polynomials G, H");
      const auto& [g, h] = *gh;
      bool ok = g.derivative_at_zero(0) == 1 && g.derivative_at_zero(1) == 1 &&
                h.derivative_at_zero(0) == 1 && h.derivative_at_zero(1).is_zero() &&
                h.derivative_at_zero(2) == 2;
      if (!ok) {
        throw std::invalid_argument(
            "sm7 weights must satisfy G(0)=G'(0)=1; H(0)=1, H'(0)=0, H''(0)=2");
      }
      return;
    }
    case MethodKind::Om8:
    case MethodKind::Om8Df: {
      if (!weights) throw std::invalid_argument("method requires a weight family");
      auto violations = validate_weights(*weights);
      if (!violations.empty()) {
        std::string msg = "weight family violates:";
        for (const auto& v : violations) msg += " " + v.condition + ";";
        throw std::invalid_argument(msg);
      }
      if (kind == MethodKind::Om8Df) {
        if (shift_exponent < 1) throw std::invalid_argument("shift exponent must be >= 1");
        if (!shift_scale || shift_scale->is_zero()) {
          throw std::invalid_argument("shift scale must be nonzero");
        }
      }
      return;
    }
  }
}

StepOutcome step_om8(ScalarFunction& f, const Real& x, const WeightFamily& w,
                     kernels::ThreeStepTrace<Real>* trace) {
  Real fx = f.value(x);
  auto set = weight_set_of(w);
  auto r = kernels::om8_step([&f](const Real& v) { return f.value(v); },
                             [&f](const Real& v) { return f.derivative(v); }, x, fx, set,
                             trace);
  return to_outcome(std::move(r));
}

StepOutcome step_om8_df(ScalarFunction& f, const Real& x, const WeightFamily& w,
                        int shift_exponent, const Real& shift_scale,
                        kernels::ThreeStepTrace<Real>* trace) {
  Real fx = f.value(x);
  auto set = weight_set_of(w);
  auto r = kernels::om8df_step([&f](const Real& v) { return f.value(v); }, x, fx, set,
                               shift_exponent, shift_scale, trace);
  return to_outcome(std::move(r));
}

StepOutcome step_sm7(ScalarFunction& f, const Real& x, const Polynomial& g,
                     const Polynomial& h) {
  Real fx = f.value(x);
  auto r = kernels::sm7_step([&f](const Real& v) { return f.value(v); },
                             [&f](const Real& v) { return f.derivative(v); }, x, fx,
                             g.coeffs(), h.coeffs());
  return to_outcome(std::move(r));
}

StepOutcome step_newton(ScalarFunction& f, const Real& x) {
  Real fx = f.value(x);
  auto r = kernels::newton_step([&f](const Real& v) { return f.value(v); },
                                [&f](const Real& v) { return f.derivative(v); }, x, fx);
  return to_outcome(std::move(r));
}

StepOutcome step_steffensen(ScalarFunction& f, const Real& x) {
  Real fx = f.value(x);
  auto r = kernels::steffensen_step([&f](const Real& v) { return f.value(v); }, x, fx);
  return to_outcome(std::move(r));
}

SolveConfig SolveConfig::tolerance(Precision prec, std::string_view epsilon,
                                   int max_iterations) {
  SolveConfig cfg{prec};
  cfg.mode = Mode::Tolerance;
  cfg.epsilon = Real::from_decimal(epsilon, prec);
  if (cfg.epsilon <= 0) throw std::invalid_argument("tolerance must be positive");
  cfg.max_iterations = max_iterations;
  cfg.divergence_bound = Real::from_decimal("1e100", prec);
  return cfg;
}

SolveConfig SolveConfig::fixed(Precision prec, int iterations) {
  SolveConfig cfg{prec};
  cfg.mode = Mode::FixedIterations;
  cfg.fixed_iterations = iterations;
  cfg.max_iterations = iterations;
  cfg.epsilon = Real::from_decimal("1e-50", prec);
  cfg.divergence_bound = Real::from_decimal("1e100", prec);
  return cfg;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIterationsReached: return "max-iterations";
    case SolveStatus::Diverged: return "diverged";
    case SolveStatus::DomainFailure: return "domain-failure";
  }
  return "?";
}

namespace {

class Stepper {
 public:
  Stepper(const MethodSpec& method, ScalarFunction& f)
      : method_(method), f_(f) {
    if (method_.weights) set_ = weight_set_of(*method_.weights);
  }

  // One iteration from (x, fx). Returns the kernel result; the caller
  // evaluates f at the new point.
  kernels::StepResult<Real> operator()(const Real& x, const Real& fx) {
    auto f = [this](const Real& v) { return f_.value(v); };
    auto df = [this](const Real& v) { return f_.derivative(v); };
    switch (method_.kind) {
      case MethodKind::Newton: return kernels::newton_step(f, df, x, fx);
      case MethodKind::Steffensen: return kernels::steffensen_step(f, x, fx);
      case MethodKind::Sm7:
        return kernels::sm7_step(f, df, x, fx, method_.gh->first.coeffs(),
                                 method_.gh->second.coeffs());
      case MethodKind::Om8: return kernels::om8_step(f, df, x, fx, set_);
      case MethodKind::Om8Df:
        return kernels::om8df_step(f, x, fx, set_, method_.shift_exponent,
                                   *method_.shift_scale);
    }
    throw std::logic_error("unknown method kind");
  }

 private:
  const MethodSpec& method_;
  ScalarFunction& f_;
  kernels::WeightSet<Real> set_;
};

}  // namespace

SolveResult solve(const MethodSpec& method, ScalarFunction& f, const Real& x0,
                  const SolveConfig& cfg) {
  method.validate();
  if (cfg.max_iterations < 1) throw std::invalid_argument("max_iterations must be >= 1");
  bool needs_derivative = method.kind == MethodKind::Newton ||
                          method.kind == MethodKind::Sm7 || method.kind == MethodKind::Om8;
  if (needs_derivative && !f.has_derivative()) {
    throw std::invalid_argument("method '" + method.name() +
                                "' needs a derivative channel; function '" + f.id() +
                                "' has none");
  }

  const bool fixed = cfg.mode == SolveConfig::Mode::FixedIterations;
  const int evals = method.evals_per_iteration();
  const int target = fixed ? cfg.fixed_iterations : cfg.max_iterations;
  // Stagnation at a point with |f| below this counts as convergence.
  const Real stagnation_eps =
      fixed ? Real::from_decimal("1e-" + std::to_string(cfg.precision.digits() / 2),
                                 cfg.precision)
            : cfg.epsilon;

  SolveResult out;
  Real x = round_to(x0, cfg.precision);

  const auto finish = [&](SolveStatus status, Real root, int iterations) {
    out.status = status;
    out.root = std::move(root);
    out.iterations = iterations;
    out.tnfe = static_cast<long>(evals) * iterations;
    return out;
  };

  Real fx;
  try {
    fx = f.value(x);
  } catch (const Overflow&) {
    return finish(SolveStatus::Diverged, std::move(x), 0);
  } catch (const NumericError&) {
    return finish(SolveStatus::DomainFailure, std::move(x), 0);
  }
  out.trace.push_back({0, x, abs(fx)});

  if (fx.is_zero() || (!fixed && abs(fx) < cfg.epsilon)) {
    return finish(SolveStatus::Converged, std::move(x), 0);
  }
  if (abs(x) > cfg.divergence_bound || abs(fx) > cfg.divergence_bound) {
    return finish(SolveStatus::Diverged, std::move(x), 0);
  }

  Stepper stepper(method, f);
  const Real excursion_bound =
      (abs(x) + 1) * 10;  // domain failures beyond this count as divergence

  for (int n = 1; n <= target; ++n) {
    kernels::StepResult<Real> step;
    Real fx_next;
    try {
      step = stepper(x, fx);
      if (step.flag == kernels::StepFlag::Ok) {
        fx_next = f.value(step.x_next);
      }
    } catch (const Overflow&) {
      return finish(SolveStatus::Diverged, std::move(x), n);
    } catch (const NumericError&) {
      bool excursion = abs(x) > excursion_bound;
      return finish(excursion ? SolveStatus::Diverged : SolveStatus::DomainFailure,
                    std::move(x), n);
    }

    switch (step.flag) {
      case kernels::StepFlag::Ok:
        break;
      case kernels::StepFlag::EarlyRoot:
        out.trace.push_back({n, step.x_next, abs(step.f_next)});
        return finish(SolveStatus::Converged, std::move(step.x_next), n);
      case kernels::StepFlag::DerivativeZero:
      case kernels::StepFlag::DegenerateNodes:
      case kernels::StepFlag::DegenerateDifference:
        // Stagnation: success if already at a root, otherwise failure.
        if (abs(fx) < stagnation_eps) {
          return finish(SolveStatus::Converged, std::move(x), n - 1);
        }
        return finish(SolveStatus::DomainFailure, std::move(x), n);
    }

    out.trace.push_back({n, step.x_next, abs(fx_next)});

    if (abs(step.x_next) > cfg.divergence_bound || abs(fx_next) > cfg.divergence_bound) {
      return finish(SolveStatus::Diverged, std::move(step.x_next), n);
    }

    x = std::move(step.x_next);
    fx = std::move(fx_next);

    if (!fixed && abs(fx) < cfg.epsilon) {
      return finish(SolveStatus::Converged, std::move(x), n);
    }
    if (fx.is_zero()) {
      return finish(SolveStatus::Converged, std::move(x), n);
    }
  }

  return finish(SolveStatus::MaxIterationsReached, std::move(x), target);
}

}  // namespace mproots
