#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace mproots {

/// Thrown when an arithmetic operation is numerically invalid.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : NumericError {
  DivisionByZero() : NumericError("division by zero") {}
};

struct DomainError : NumericError {
  using NumericError::NumericError;
};

/// Raised when a magnitude exceeds 10^(10^6). Divergent iterates surface
/// this way instead of propagating infinities.
struct Overflow : NumericError {
  Overflow() : NumericError("magnitude exceeds 10^1000000") {}
};

/// Working precision in decimal significant digits plus internal guard digits.
class Precision {
 public:
  static constexpr int kDefaultGuard = 20;

  explicit Precision(int digits, int guard = kDefaultGuard)
      : digits_(digits), guard_(guard) {
    if (digits < 50) throw std::invalid_argument("precision must be at least 50 digits");
    if (guard < 0) throw std::invalid_argument("guard digits must be non-negative");
  }

  int digits() const { return digits_; }
  int guard() const { return guard_; }
  int working_digits() const { return digits_ + guard_; }

  /// Binary precision covering working_digits decimal digits.
  mpfr_prec_t bits() const;

  friend bool operator==(const Precision& a, const Precision& b) {
    return a.digits_ == b.digits_ && a.guard_ == b.guard_;
  }

 private:
  int digits_;
  int guard_;
};

/// Immutable-by-convention arbitrary-precision real backed by MPFR.
///
/// Every value carries its own binary precision; binary operations round to
/// nearest at the larger of the two operand precisions. Values are always
/// finite: operations that would produce NaN or infinity throw instead, so
/// sentinel values never propagate into results.
class Real {
 public:
  Real();                       // zero at minimal precision
  Real(long value, Precision prec);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  /// Parses a decimal literal (e.g. "1.72", "1e-50") directly at the given
  /// working precision, with no intermediate machine-float rounding.
  static Real from_decimal(std::string_view text, Precision prec);
  static Real from_decimal_bits(std::string_view text, mpfr_prec_t bits);

  static Real pi(Precision prec);
  static Real pi_bits(mpfr_prec_t bits);

  /// Integer constant at the same precision as a reference value.
  static Real constant_like(long value, const Real& like);

  /// Exact lift of a machine double (binary conversion, no rounding).
  static Real from_double(double value, Precision prec);

  mpfr_prec_t precision_bits() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// Decimal rendering with the requested number of significant digits.
  std::string to_string(int significant_digits) const;

  /// log10 of the magnitude as a machine double; -inf for zero.
  double log10_abs() const;

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);

  friend Real operator+(const Real& a, long b);
  friend Real operator-(const Real& a, long b);
  friend Real operator*(const Real& a, long b);
  friend Real operator/(const Real& a, long b);
  friend Real operator+(long a, const Real& b) { return b + a; }
  friend Real operator-(long a, const Real& b);
  friend Real operator*(long a, const Real& b) { return b * a; }
  friend Real operator/(long a, const Real& b);

  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
  friend bool operator!=(const Real& a, const Real& b) { return !(a == b); }
  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend bool operator!=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) != 0; }
  friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
  friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
  friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
  friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

 private:
  explicit Real(mpfr_prec_t bits);
  mpfr_t v_;

  friend Real abs(const Real& a);
  friend Real sqrt(const Real& a);
  friend Real pow(const Real& a, const Real& b);
  friend Real pow(const Real& a, long n);
  friend Real exp(const Real& a);
  friend Real sin(const Real& a);
  friend Real cos(const Real& a);
  friend Real ln(const Real& a);
  friend Real round_to(const Real& a, Precision prec);
};

Real abs(const Real& a);    // exact
Real sqrt(const Real& a);
Real pow(const Real& a, const Real& b);
Real pow(const Real& a, long n);
Real exp(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real ln(const Real& a);

/// Re-rounds a value to a (usually different) working precision.
Real round_to(const Real& a, Precision prec);

/// Field-generic hook used by the templated iteration kernels.
inline Real unit_like(const Real& v) { return Real::constant_like(1, v); }

}  // namespace mproots
