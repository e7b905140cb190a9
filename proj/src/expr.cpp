#include "mproots/expr.hpp"

#include <cctype>
#include <cmath>
#include <utility>

namespace mproots {

Dual operator+(const Dual& a, const Dual& b) { return {a.value + b.value, a.tangent + b.tangent}; }
Dual operator-(const Dual& a, const Dual& b) { return {a.value - b.value, a.tangent - b.tangent}; }

Dual operator*(const Dual& a, const Dual& b) {
  return {a.value * b.value, a.tangent * b.value + a.value * b.tangent};
}

Dual operator/(const Dual& a, const Dual& b) {
  return {a.value / b.value,
          (a.tangent * b.value - a.value * b.tangent) / (b.value * b.value)};
}

Dual operator-(const Dual& a) { return {-a.value, -a.tangent}; }

namespace {

enum class CallFn { Sin, Cos, Exp, Ln, Abs };

enum class NodeKind { Number, Pi, Euler, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

}  // namespace

struct ExprAst::Node {
  NodeKind kind;
  std::string literal;  // Number
  CallFn fn = CallFn::Sin;
  std::shared_ptr<const Node> lhs;
  std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const ExprAst::Node>;

NodePtr make_node(NodeKind kind, NodePtr lhs = nullptr, NodePtr rhs = nullptr) {
  auto n = std::make_shared<ExprAst::Node>();
  n->kind = kind;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

NodePtr number_node(std::string literal) {
  auto n = std::make_shared<ExprAst::Node>();
  n->kind = NodeKind::Number;
  n->literal = std::move(literal);
  return n;
}

NodePtr call_node(CallFn fn, NodePtr arg) {
  auto n = std::make_shared<ExprAst::Node>();
  n->kind = NodeKind::Call;
  n->fn = fn;
  n->lhs = std::move(arg);
  return n;
}

struct Token {
  enum Type { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::string text;
  size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    size_t start = pos_;
    if (pos_ >= src_.size()) return {Token::End, "", start};
    char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; return {Token::Plus, "+", start};
      case '-': ++pos_; return {Token::Minus, "-", start};
      case '*': ++pos_; return {Token::Star, "*", start};
      case '/': ++pos_; return {Token::Slash, "/", start};
      case '^': ++pos_; return {Token::Caret, "^", start};
      case '(': ++pos_; return {Token::LParen, "(", start};
      case ')': ++pos_; return {Token::RParen, ")", start};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      size_t end = pos_;
      bool seen_dot = false;
      while (end < src_.size()) {
        char d = src_[end];
        if (std::isdigit(static_cast<unsigned char>(d))) { ++end; continue; }
        if (d == '.' && !seen_dot) { seen_dot = true; ++end; continue; }
        break;
      }
      std::string text(src_.substr(pos_, end - pos_));
      if (text == ".") throw SyntaxError("malformed number", start);
      pos_ = end;
      return {Token::Number, text, start};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t end = pos_;
      while (end < src_.size() && std::isalpha(static_cast<unsigned char>(src_[end]))) ++end;
      std::string text(src_.substr(pos_, end - pos_));
      pos_ = end;
      return {Token::Ident, text, start};
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", start);
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  NodePtr parse_all() {
    NodePtr root = parse_expr();
    if (cur_.type != Token::End) throw SyntaxError("unexpected trailing input", cur_.offset);
    return root;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  NodePtr parse_expr() {
    NodePtr lhs = parse_term();
    while (cur_.type == Token::Plus || cur_.type == Token::Minus) {
      NodeKind kind = cur_.type == Token::Plus ? NodeKind::Add : NodeKind::Sub;
      advance();
      lhs = make_node(kind, std::move(lhs), parse_term());
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (cur_.type == Token::Star || cur_.type == Token::Slash) {
      NodeKind kind = cur_.type == Token::Star ? NodeKind::Mul : NodeKind::Div;
      advance();
      lhs = make_node(kind, std::move(lhs), parse_factor());
    }
    return lhs;
  }

  // '^' binds tighter than unary minus on its right operand: -x^2 is -(x^2).
  NodePtr parse_factor() {
    if (cur_.type == Token::Minus) {
      advance();
      return make_node(NodeKind::Neg, parse_factor());
    }
    return parse_power();
  }

  NodePtr parse_power() {
    NodePtr base = parse_atom();
    if (cur_.type == Token::Caret) {
      advance();
      return make_node(NodeKind::Pow, std::move(base), parse_factor());
    }
    return base;
  }

  NodePtr parse_atom() {
    switch (cur_.type) {
      case Token::Number: {
        NodePtr n = number_node(cur_.text);
        advance();
        return n;
      }
      case Token::Ident: {
        Token ident = cur_;
        advance();
        if (cur_.type == Token::LParen) {
          CallFn fn;
          if (ident.text == "sin") fn = CallFn::Sin;
          else if (ident.text == "cos") fn = CallFn::Cos;
          else if (ident.text == "exp") fn = CallFn::Exp;
          else if (ident.text == "ln") fn = CallFn::Ln;
          else if (ident.text == "abs") fn = CallFn::Abs;
          else throw UnknownIdentifier(ident.text, ident.offset);
          advance();
          NodePtr arg = parse_expr();
          expect(Token::RParen, "expected ')'");
          return call_node(fn, std::move(arg));
        }
        if (ident.text == "x") return make_node(NodeKind::Var);
        if (ident.text == "pi") return make_node(NodeKind::Pi);
        if (ident.text == "e") return make_node(NodeKind::Euler);
        throw UnknownIdentifier(ident.text, ident.offset);
      }
      case Token::LParen: {
        advance();
        NodePtr inner = parse_expr();
        expect(Token::RParen, "expected ')'");
        return inner;
      }
      default:
        throw SyntaxError("expected a number, 'x', constant, function call or '('",
                          cur_.offset);
    }
  }

  void expect(Token::Type type, const char* msg) {
    if (cur_.type != type) throw SyntaxError(msg, cur_.offset);
    advance();
  }

  Lexer lexer_;
  Token cur_;
};

Real eval_node(const ExprAst::Node& n, const Real& x) {
  switch (n.kind) {
    case NodeKind::Number: return Real::from_decimal_bits(n.literal, x.precision_bits());
    case NodeKind::Pi: return Real::pi_bits(x.precision_bits());
    case NodeKind::Euler: return exp(Real::constant_like(1, x));
    case NodeKind::Var: return x;
    case NodeKind::Neg: return -eval_node(*n.lhs, x);
    case NodeKind::Add: return eval_node(*n.lhs, x) + eval_node(*n.rhs, x);
    case NodeKind::Sub: return eval_node(*n.lhs, x) - eval_node(*n.rhs, x);
    case NodeKind::Mul: return eval_node(*n.lhs, x) * eval_node(*n.rhs, x);
    case NodeKind::Div: return eval_node(*n.lhs, x) / eval_node(*n.rhs, x);
    case NodeKind::Pow: return pow(eval_node(*n.lhs, x), eval_node(*n.rhs, x));
    case NodeKind::Call: {
      Real a = eval_node(*n.lhs, x);
      switch (n.fn) {
        case CallFn::Sin: return sin(a);
        case CallFn::Cos: return cos(a);
        case CallFn::Exp: return exp(a);
        case CallFn::Ln: return ln(a);
        case CallFn::Abs: return abs(a);
      }
    }
  }
  throw std::logic_error("corrupt expression node");
}

Dual eval_dual_node(const ExprAst::Node& n, const Real& x) {
  const Real zero = Real::constant_like(0, x);
  switch (n.kind) {
    case NodeKind::Number:
      return {Real::from_decimal_bits(n.literal, x.precision_bits()), zero};
    case NodeKind::Pi: return {Real::pi_bits(x.precision_bits()), zero};
    case NodeKind::Euler: return {exp(Real::constant_like(1, x)), zero};
    case NodeKind::Var: return {x, Real::constant_like(1, x)};
    case NodeKind::Neg: return -eval_dual_node(*n.lhs, x);
    case NodeKind::Add: return eval_dual_node(*n.lhs, x) + eval_dual_node(*n.rhs, x);
    case NodeKind::Sub: return eval_dual_node(*n.lhs, x) - eval_dual_node(*n.rhs, x);
    case NodeKind::Mul: return eval_dual_node(*n.lhs, x) * eval_dual_node(*n.rhs, x);
    case NodeKind::Div: return eval_dual_node(*n.lhs, x) / eval_dual_node(*n.rhs, x);
    case NodeKind::Pow: {
      Dual base = eval_dual_node(*n.lhs, x);
      Dual expo = eval_dual_node(*n.rhs, x);
      Real value = pow(base.value, expo.value);
      if (expo.tangent.is_zero()) {
        // d/dx a^c = c a^(c-1) a'; also valid for negative bases with
        // integer exponents.
        if (base.tangent.is_zero()) return {value, zero};
        return {value, expo.value * pow(base.value, expo.value - 1) * base.tangent};
      }
      // General a^b requires a > 0.
      Real t = value * (expo.tangent * ln(base.value) +
                        expo.value * base.tangent / base.value);
      return {value, t};
    }
    case NodeKind::Call: {
      Dual a = eval_dual_node(*n.lhs, x);
      switch (n.fn) {
        case CallFn::Sin: return {sin(a.value), cos(a.value) * a.tangent};
        case CallFn::Cos: return {cos(a.value), -sin(a.value) * a.tangent};
        case CallFn::Exp: {
          Real v = exp(a.value);
          return {v, v * a.tangent};
        }
        case CallFn::Ln: return {ln(a.value), a.tangent / a.value};
        case CallFn::Abs:
          return {abs(a.value), Real::constant_like(a.value.sign(), x) * a.tangent};
      }
    }
  }
  throw std::logic_error("corrupt expression node");
}

int working_decimal_digits(const Real& x) {
  return static_cast<int>(static_cast<double>(x.precision_bits()) / 3.3219280948873626);
}

}  // namespace

ExprAst ExprAst::parse(std::string_view text) {
  if (text.empty()) throw SyntaxError("empty expression", 0);
  Parser parser(text);
  return ExprAst(std::string(text), parser.parse_all());
}

Real ExprAst::eval(const Real& x) const { return eval_node(*root_, x); }

Dual ExprAst::eval_dual(const Real& x) const { return eval_dual_node(*root_, x); }

ExprAst parse(std::string_view text) { return ExprAst::parse(text); }

ScalarFunction::ScalarFunction(std::string id, Fn eval)
    : id_(std::move(id)), eval_(std::move(eval)) {}

ScalarFunction::ScalarFunction(std::string id, Fn eval, Fn deriv)
    : id_(std::move(id)), eval_(std::move(eval)), deriv_(std::move(deriv)) {}

ScalarFunction ScalarFunction::from_expression(const ExprAst& ast) {
  return ScalarFunction(
      ast.text(), [ast](const Real& x) { return ast.eval(x); },
      [ast](const Real& x) { return ast.eval_dual(x).tangent; });
}

Real ScalarFunction::value(const Real& x) const {
  ++eval_count_;
  return eval_(x);
}

Real ScalarFunction::derivative(const Real& x) const {
  if (!deriv_) throw std::logic_error("function '" + id_ + "' has no derivative channel");
  ++deriv_count_;
  return deriv_(x);
}

namespace {

// Per-session cache for a constant that depends only on the working
// precision (recomputed when the precision changes).
class ConstCache {
 public:
  explicit ConstCache(std::function<Real(mpfr_prec_t)> make) : make_(std::move(make)) {}

  const Real& at(mpfr_prec_t bits) {
    if (bits != bits_) {
      value_ = make_(bits);
      bits_ = bits;
    }
    return value_;
  }

 private:
  std::function<Real(mpfr_prec_t)> make_;
  mpfr_prec_t bits_ = 0;
  Real value_;
};

}  // namespace

ScalarFunction builtin(const std::string& id) {
  if (id == "f1") {
    // 10 x e^(-x^2) - 1
    return ScalarFunction(
        id,
        [](const Real& x) { return x * exp(-(x * x)) * 10 - 1; },
        [](const Real& x) {
          return exp(-(x * x)) * (Real::constant_like(1, x) - x * x * 2) * 10;
        });
  }
  if (id == "f2") {
    // x^5 + x^4 + 4 x^2 - 15
    return ScalarFunction(
        id,
        [](const Real& x) { return pow(x, 5L) + pow(x, 4L) + x * x * 4 - 15; },
        [](const Real& x) { return pow(x, 4L) * 5 + pow(x, 3L) * 4 + x * 8; });
  }
  if (id == "f3") {
    // x e^(x^2) - sin(x)^2 + 3 cos(x) + 5
    return ScalarFunction(
        id,
        [](const Real& x) {
          Real s = sin(x);
          return x * exp(x * x) - s * s + cos(x) * 3 + 5;
        },
        [](const Real& x) {
          Real s = sin(x);
          return exp(x * x) * (x * x * 2 + 1) - s * cos(x) * 2 - s * 3;
        });
  }
  if (id == "f4") {
    // x^4 + sin(pi/x^2) - 5; undefined near x = 0 where sin(pi/x^2)
    // oscillates faster than the working precision resolves.
    auto pi_cache = std::make_shared<ConstCache>(
        [](mpfr_prec_t bits) { return Real::pi_bits(bits); });
    auto guard = [](const Real& x) {
      if (x.is_zero() || x.log10_abs() < -working_decimal_digits(x) / 4.0) {
        throw DomainError("f4 is not evaluable near x = 0");
      }
    };
    return ScalarFunction(
        id,
        [pi_cache, guard](const Real& x) {
          guard(x);
          return pow(x, 4L) + sin(pi_cache->at(x.precision_bits()) / (x * x)) - 5;
        },
        [pi_cache, guard](const Real& x) {
          guard(x);
          const Real& pi = pi_cache->at(x.precision_bits());
          return pow(x, 3L) * 4 - cos(pi / (x * x)) * pi * 2 / pow(x, 3L);
        });
  }
  if (id == "f5") {
    // x^2 e^x - sin(x)
    return ScalarFunction(
        id,
        [](const Real& x) { return x * x * exp(x) - sin(x); },
        [](const Real& x) { return (x * x + x * 2) * exp(x) - cos(x); });
  }
  if (id == "f6") {
    // (sin(x) - sqrt(2)/2)^2 (x + 1)
    auto half_sqrt2 = std::make_shared<ConstCache>([](mpfr_prec_t bits) {
      return sqrt(Real::from_decimal_bits("2", bits)) / 2;
    });
    return ScalarFunction(
        id,
        [half_sqrt2](const Real& x) {
          Real d = sin(x) - half_sqrt2->at(x.precision_bits());
          return d * d * (x + 1);
        },
        [half_sqrt2](const Real& x) {
          Real d = sin(x) - half_sqrt2->at(x.precision_bits());
          return d * cos(x) * (x + 1) * 2 + d * d;
        });
  }
  if (id == "f7") {
    // sin(3x) + x cos(x)
    return ScalarFunction(
        id,
        [](const Real& x) { return sin(x * 3) + x * cos(x); },
        [](const Real& x) { return cos(x * 3) * 3 + cos(x) - x * sin(x); });
  }
  throw UnknownBuiltin(id);
}

bool is_builtin(const std::string& id) {
  return id.size() == 2 && id[0] == 'f' && id[1] >= '1' && id[1] <= '7';
}

const std::vector<std::pair<std::string, std::string>>& builtin_expressions() {
  static const std::vector<std::pair<std::string, std::string>> table = {
      {"f1", "10*x*exp(-x^2)-1"},
      {"f2", "x^5+x^4+4*x^2-15"},
      {"f3", "x*exp(x^2)-sin(x)^2+3*cos(x)+5"},
      {"f4", "x^4+sin(pi/x^2)-5"},
      {"f5", "x^2*exp(x)-sin(x)"},
      {"f6", "(sin(x)-2^0.5/2)^2*(x+1)"},
      {"f7", "sin(3*x)+x*cos(x)"},
  };
  return table;
}

ScalarFunction resolve_function(const std::string& spec) {
  if (is_builtin(spec)) return builtin(spec);
  return ScalarFunction::from_expression(ExprAst::parse(spec));
}

}  // namespace mproots
