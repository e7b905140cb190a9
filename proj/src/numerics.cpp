#include "mproots/numerics.hpp"

#include <cmath>
#include <memory>
#include <vector>

namespace mproots {

namespace {

// Binary exponent bound corresponding to 10^(10^6).
constexpr mpfr_exp_t kOverflowExp = 3321929;

void check_valid(mpfr_srcptr v) {
  if (mpfr_nan_p(v)) throw DomainError("operation produced an undefined value");
  if (mpfr_inf_p(v)) throw Overflow();
  if (!mpfr_zero_p(v) && mpfr_get_exp(v) > kOverflowExp) throw Overflow();
}

mpfr_prec_t max_prec(const Real& a, const Real& b) {
  return std::max(a.precision_bits(), b.precision_bits());
}

}  // namespace

mpfr_prec_t Precision::bits() const {
  return static_cast<mpfr_prec_t>(std::ceil(working_digits() * 3.3219280948873626)) + 1;
}

Real::Real() { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_set_zero(v_, 1); }

Real::Real(mpfr_prec_t bits) { mpfr_init2(v_, bits); mpfr_set_zero(v_, 1); }

Real::Real(long value, Precision prec) {
  mpfr_init2(v_, prec.bits());
  mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, mpfr_get_prec(other.v_));
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::from_decimal(std::string_view text, Precision prec) {
  return from_decimal_bits(text, prec.bits());
}

Real Real::from_decimal_bits(std::string_view text, mpfr_prec_t bits) {
  Real r(bits);
  std::string buf(text);
  if (buf.empty() || mpfr_set_str(r.v_, buf.c_str(), 10, MPFR_RNDN) != 0) {
    throw std::invalid_argument("not a decimal number: '" + buf + "'");
  }
  check_valid(r.v_);
  return r;
}

Real Real::pi(Precision prec) { return pi_bits(prec.bits()); }

Real Real::pi_bits(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

Real Real::constant_like(long value, const Real& like) {
  Real r(like.precision_bits());
  mpfr_set_si(r.raw(), value, MPFR_RNDN);
  return r;
}

Real Real::from_double(double value, Precision prec) {
  if (!std::isfinite(value)) throw DomainError("non-finite double");
  Real r(prec.bits());
  mpfr_set_d(r.raw(), value, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int significant_digits) const {
  if (significant_digits < 1) significant_digits = 1;
  int n = mpfr_snprintf(nullptr, 0, "%.*RNg", significant_digits, v_);
  std::vector<char> buf(static_cast<size_t>(n) + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*RNg", significant_digits, v_);
  return std::string(buf.data());
}

double Real::log10_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_abs(t, v_, MPFR_RNDN);
  mpfr_log10(t, t, MPFR_RNDN);
  double r = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

#define MPROOTS_BINOP(OP, FN)                          \
  Real operator OP(const Real& a, const Real& b) {     \
    Real r(max_prec(a, b));                            \
    FN(r.raw(), a.raw(), b.raw(), MPFR_RNDN);          \
    check_valid(r.raw());                              \
    return r;                                          \
  }

MPROOTS_BINOP(+, mpfr_add)
MPROOTS_BINOP(-, mpfr_sub)
MPROOTS_BINOP(*, mpfr_mul)
#undef MPROOTS_BINOP

Real operator/(const Real& a, const Real& b) {
  if (b.is_zero()) throw DivisionByZero();
  Real r(max_prec(a, b));
  mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real operator-(const Real& a) {
  Real r(a.precision_bits());
  mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real operator+(const Real& a, long b) {
  Real r(a.precision_bits());
  mpfr_add_si(r.raw(), a.raw(), b, MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real operator-(const Real& a, long b) {
  Real r(a.precision_bits());
  mpfr_sub_si(r.raw(), a.raw(), b, MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real operator*(const Real& a, long b) {
  Real r(a.precision_bits());
  mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real operator/(const Real& a, long b) {
  if (b == 0) throw DivisionByZero();
  Real r(a.precision_bits());
  mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real operator-(long a, const Real& b) {
  Real r(b.precision_bits());
  mpfr_si_sub(r.raw(), a, b.raw(), MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real operator/(long a, const Real& b) {
  if (b.is_zero()) throw DivisionByZero();
  Real r(b.precision_bits());
  mpfr_si_div(r.raw(), a, b.raw(), MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real abs(const Real& a) {
  Real r(a.precision_bits());
  mpfr_abs(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real sqrt(const Real& a) {
  if (a.sign() < 0) throw DomainError("sqrt of negative value");
  Real r(a.precision_bits());
  mpfr_sqrt(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real pow(const Real& a, const Real& b) {
  if (a.is_zero() && b.sign() < 0) throw DivisionByZero();
  if (a.sign() < 0 && !mpfr_integer_p(b.raw())) {
    throw DomainError("pow of negative base with non-integer exponent");
  }
  Real r(max_prec(a, b));
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real pow(const Real& a, long n) {
  if (a.is_zero() && n < 0) throw DivisionByZero();
  Real r(a.precision_bits());
  mpfr_pow_si(r.raw(), a.raw(), n, MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real exp(const Real& a) {
  Real r(a.precision_bits());
  mpfr_exp(r.raw(), a.raw(), MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real sin(const Real& a) {
  Real r(a.precision_bits());
  mpfr_sin(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real cos(const Real& a) {
  Real r(a.precision_bits());
  mpfr_cos(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

Real ln(const Real& a) {
  if (a.sign() <= 0) throw DomainError("ln of non-positive value");
  Real r(a.precision_bits());
  mpfr_log(r.raw(), a.raw(), MPFR_RNDN);
  check_valid(r.raw());
  return r;
}

Real round_to(const Real& a, Precision prec) {
  Real r(prec.bits());
  mpfr_set(r.raw(), a.raw(), MPFR_RNDN);
  return r;
}

}  // namespace mproots
