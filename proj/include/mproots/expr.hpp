#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "mproots/numerics.hpp"

namespace mproots {

struct SyntaxError : std::runtime_error {
  SyntaxError(const std::string& what, size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset(offset) {}
  size_t offset;
};

struct UnknownIdentifier : std::runtime_error {
  UnknownIdentifier(const std::string& name, size_t offset)
      : std::runtime_error("unknown identifier '" + name + "' (at byte " +
                           std::to_string(offset) + ")"),
        offset(offset) {}
  size_t offset;
};

struct UnknownBuiltin : std::runtime_error {
  explicit UnknownBuiltin(const std::string& id)
      : std::runtime_error("unknown builtin function '" + id + "'") {}
};

/// Forward-mode dual number: carries a value and its derivative with
/// respect to the single free variable.
struct Dual {
  Real value;
  Real tangent;
};

Dual operator+(const Dual& a, const Dual& b);
Dual operator-(const Dual& a, const Dual& b);
Dual operator*(const Dual& a, const Dual& b);
Dual operator/(const Dual& a, const Dual& b);
Dual operator-(const Dual& a);

/// Parsed expression in one variable x.
///
/// Grammar (whitespace insignificant, function names lowercase):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?          -- right-associative, binds
///                                            tighter than unary minus
///   atom   := number | 'x' | 'pi' | 'e' | ident '(' expr ')' | '(' expr ')'
///
/// Number literals are plain decimals without exponent notation ('e' is the
/// Euler constant). Implicit multiplication is rejected.
class ExprAst {
 public:
  static ExprAst parse(std::string_view text);

  Real eval(const Real& x) const;
  Dual eval_dual(const Real& x) const;

  const std::string& text() const { return text_; }

  struct Node;

 private:
  ExprAst(std::string text, std::shared_ptr<const Node> root)
      : text_(std::move(text)), root_(std::move(root)) {}

  std::string text_;
  std::shared_ptr<const Node> root_;
};

ExprAst parse(std::string_view text);

/// A real function of one variable with an optional derivative channel.
/// Each instance owns its evaluation counters, so a solve session never
/// shares counts with another.
class ScalarFunction {
 public:
  using Fn = std::function<Real(const Real&)>;

  ScalarFunction(std::string id, Fn eval);
  ScalarFunction(std::string id, Fn eval, Fn deriv);

  /// Wraps a parsed expression; the derivative channel evaluates the
  /// expression with dual numbers.
  static ScalarFunction from_expression(const ExprAst& ast);

  const std::string& id() const { return id_; }
  bool has_derivative() const { return static_cast<bool>(deriv_); }

  Real value(const Real& x) const;
  Real derivative(const Real& x) const;

  std::uint64_t eval_count() const { return eval_count_; }
  std::uint64_t deriv_count() const { return deriv_count_; }
  void reset_counts() { eval_count_ = deriv_count_ = 0; }

 private:
  std::string id_;
  Fn eval_;
  Fn deriv_;
  mutable std::uint64_t eval_count_ = 0;
  mutable std::uint64_t deriv_count_ = 0;
};

/// The bundled test functions f1..f7 with hand-coded exact derivatives.
ScalarFunction builtin(const std::string& id);

bool is_builtin(const std::string& id);

/// Textual form of each builtin, parseable by the expression grammar.
const std::vector<std::pair<std::string, std::string>>& builtin_expressions();

/// Resolves either a builtin id or an expression string.
ScalarFunction resolve_function(const std::string& spec);

}  // namespace mproots
