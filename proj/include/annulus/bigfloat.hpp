#pragma once

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "annulus/errors.hpp"

namespace annulus {

// Thin RAII wrapper over mpfr_t with per-value precision. Only the
// operations this toolkit needs; rounding is to-nearest unless a directed
// variant is used explicitly (the interval layer below relies on those).
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = default_precision()) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

  BigFloat(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }

  explicit BigFloat(double x) : BigFloat(x, default_precision()) {}
  explicit BigFloat(long x, mpfr_prec_t prec = default_precision()) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(BigFloat o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  static mpfr_prec_t& default_precision() {
    static mpfr_prec_t prec = 256;
    return prec;
  }

  static BigFloat from_string(const std::string& s, mpfr_prec_t prec = default_precision()) {
    BigFloat x(prec);
    require(mpfr_set_str(x.v_, s.c_str(), 10, MPFR_RNDN) == 0, errc::parse,
            "cannot parse number '" + s + "'");
    return x;
  }

  static BigFloat pi(mpfr_prec_t prec = default_precision(), mpfr_rnd_t rnd = MPFR_RNDN) {
    BigFloat x(prec);
    mpfr_const_pi(x.v_, rnd);
    return x;
  }

  // 2^e, exact for any exponent in mpfr's (huge) range
  static BigFloat pow2(long e, mpfr_prec_t prec = default_precision()) {
    BigFloat x(prec);
    mpfr_set_ui_2exp(x.v_, 1, e, MPFR_RNDN);
    return x;
  }

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }
  bool is_integer() const { return mpfr_integer_p(v_) != 0; }
  bool fits_long() const { return mpfr_fits_slong_p(v_, MPFR_RNDN) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  std::string str(int digits = 0) const {
    mpfr_exp_t e;
    char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    const bool neg = !mant.empty() && mant[0] == '-';
    std::string digits_only = neg ? mant.substr(1) : mant;
    std::string out = (neg ? "-" : "") + ("0." + digits_only) + "e" + std::to_string(e);
    return out;
  }

#define ANNULUS_BF_BINOP(name, fn)                                               \
  friend BigFloat name(const BigFloat& a, const BigFloat& b, mpfr_rnd_t rnd) {   \
    BigFloat r(std::max(a.precision(), b.precision()));                          \
    fn(r.v_, a.v_, b.v_, rnd);                                                   \
    return r;                                                                    \
  }
  ANNULUS_BF_BINOP(add, mpfr_add)
  ANNULUS_BF_BINOP(sub, mpfr_sub)
  ANNULUS_BF_BINOP(mul, mpfr_mul)
  ANNULUS_BF_BINOP(div, mpfr_div)
#undef ANNULUS_BF_BINOP

#define ANNULUS_BF_UNOP(name, fn)                                \
  friend BigFloat name(const BigFloat& a, mpfr_rnd_t rnd) {      \
    BigFloat r(a.precision());                                   \
    fn(r.v_, a.v_, rnd);                                         \
    return r;                                                    \
  }
  ANNULUS_BF_UNOP(sqrt, mpfr_sqrt)
  ANNULUS_BF_UNOP(log, mpfr_log)
  ANNULUS_BF_UNOP(log2, mpfr_log2)
  ANNULUS_BF_UNOP(exp, mpfr_exp)
  ANNULUS_BF_UNOP(exp2, mpfr_exp2)
  ANNULUS_BF_UNOP(sin, mpfr_sin)
  ANNULUS_BF_UNOP(cos, mpfr_cos)
  ANNULUS_BF_UNOP(neg, mpfr_neg)
  ANNULUS_BF_UNOP(abs, mpfr_abs)
#undef ANNULUS_BF_UNOP

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b, MPFR_RNDN); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b, MPFR_RNDN); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b, MPFR_RNDN); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b, MPFR_RNDN); }
  friend BigFloat operator-(const BigFloat& a) { return neg(a, MPFR_RNDN); }

  friend BigFloat round_nearest(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_round(r.v_, a.v_);
    return r;
  }

  friend int cmp(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return cmp(a, b) < 0; }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) <= 0; }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return cmp(a, b) > 0; }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return cmp(a, b) >= 0; }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return cmp(a, b) == 0; }

  mpfr_exp_t exponent() const { return mpfr_get_exp(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding; the certification
// primitive behind the log-space tower arithmetic.
struct BigInterval {
  BigFloat lo, hi;

  BigInterval() = default;
  explicit BigInterval(const BigFloat& x) : lo(x), hi(x) {}
  BigInterval(BigFloat l, BigFloat h) : lo(std::move(l)), hi(std::move(h)) {
    require(!(hi < lo), errc::domain, "interval endpoints out of order");
  }
  static BigInterval point(double x, mpfr_prec_t prec = BigFloat::default_precision()) {
    return BigInterval(BigFloat(x, prec));
  }

  bool is_point() const { return lo == hi; }

  friend BigInterval add(const BigInterval& a, const BigInterval& b) {
    return {add(a.lo, b.lo, MPFR_RNDD), add(a.hi, b.hi, MPFR_RNDU)};
  }
  friend BigInterval sub(const BigInterval& a, const BigInterval& b) {
    return {sub(a.lo, b.hi, MPFR_RNDD), sub(a.hi, b.lo, MPFR_RNDU)};
  }
  // valid for nonnegative intervals, which is all the tower needs
  friend BigInterval mul_nn(const BigInterval& a, const BigInterval& b) {
    require(a.lo.sign() >= 0 && b.lo.sign() >= 0, errc::domain,
            "mul_nn expects nonnegative intervals");
    return {mul(a.lo, b.lo, MPFR_RNDD), mul(a.hi, b.hi, MPFR_RNDU)};
  }
  friend BigInterval div_nn(const BigInterval& a, const BigInterval& b) {
    require(a.lo.sign() >= 0 && b.lo.sign() > 0, errc::domain,
            "div_nn expects positive divisor");
    return {div(a.lo, b.hi, MPFR_RNDD), div(a.hi, b.lo, MPFR_RNDU)};
  }
  friend BigInterval log2(const BigInterval& a) {
    require(a.lo.sign() > 0, errc::domain, "log2 of a nonpositive interval");
    return {log2(a.lo, MPFR_RNDD), log2(a.hi, MPFR_RNDU)};
  }
  friend BigInterval exp2(const BigInterval& a) {
    return {exp2(a.lo, MPFR_RNDD), exp2(a.hi, MPFR_RNDU)};
  }
  friend BigInterval log_e(const BigInterval& a) {
    require(a.lo.sign() > 0, errc::domain, "log of a nonpositive interval");
    return {log(a.lo, MPFR_RNDD), log(a.hi, MPFR_RNDU)};
  }

  // certified comparisons: true only when the whole intervals are ordered
  friend bool certainly_less(const BigInterval& a, const BigInterval& b) { return a.hi < b.lo; }
  friend bool certainly_greater(const BigInterval& a, const BigInterval& b) { return a.lo > b.hi; }
};

}  // namespace annulus
