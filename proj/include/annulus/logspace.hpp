#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "annulus/bigfloat.hpp"

namespace annulus {

// Certified positive quantity that may lie far beyond floating-point range:
// value = exp2 applied `depth` times to the interval `top`, with outward
// rounding everywhere. Depth-0 intervals are ordinary mpfr numbers; exact
// integers ride on degenerate integral intervals.
//
// Representation changes used below, all exact at the value level:
//   raise:  exp2^d(top) == exp2^{d+1}(log2 top)      (top > 0)
//   lower:  exp2^d(top) == exp2^{d-1}(exp2 top)      (when exp2 top is safe)
// and two soundness facts for tops t >= 1:
//   2 exp2^d(t) <= exp2^d(t + 1)        exp2^d(t) / 2 >= exp2^d(t - 1)
class LogValue {
 public:
  LogValue() : top_(BigFloat(1.0)) {}

  static LogValue exact(std::uint64_t n) {
    require(n > 0, errc::domain, "log-space values are positive");
    LogValue v;
    v.top_ = BigInterval(BigFloat(static_cast<long>(n), 64));
    v.integer_ = true;
    return v;
  }

  static LogValue from_interval(BigInterval i, bool integer_certified = false) {
    require(i.lo.sign() > 0, errc::domain, "log-space values are positive");
    LogValue v;
    v.top_ = std::move(i);
    v.integer_ = integer_certified;
    v.canonicalize();
    return v;
  }

  static LogValue from_double(double x) { return from_interval(BigInterval::point(x)); }

  int depth() const { return depth_; }
  const BigInterval& top() const { return top_; }
  bool integer_certified() const { return integer_; }
  LogValue tagged_integer() const {
    LogValue v = *this;
    v.integer_ = true;
    return v;
  }

  bool exact_uint64(std::uint64_t* out = nullptr) const {
    if (depth_ != 0 || !top_.is_point() || !top_.lo.is_integer() || !top_.lo.fits_long())
      return false;
    const long v = top_.lo.to_long();
    if (v <= 0) return false;
    if (out) *out = static_cast<std::uint64_t>(v);
    return true;
  }

  // 2^x; x may be a signed depth-0 interval
  friend LogValue pow2(const LogValue& x) {
    LogValue v;
    v.depth_ = x.depth_ + 1;
    v.top_ = x.top_;
    v.integer_ = x.integer_ && x.nonnegative();
    v.canonicalize();
    return v;
  }

  // log2 as a representation shift; depth-0 values produce a signed interval
  friend LogValue log2_of(const LogValue& x) {
    LogValue v;
    if (x.depth_ >= 1) {
      v.depth_ = x.depth_ - 1;
      v.top_ = x.top_;
      v.integer_ = false;
      v.signed_ok_ = false;
      return v;
    }
    require(x.top_.lo.sign() > 0, errc::domain, "log2 of a nonpositive value");
    v.top_ = log2(x.top_);
    v.signed_ok_ = true;
    return v;
  }

  enum class Order { less, greater, overlap };

  friend Order compare(LogValue a, LogValue b) {
    if (a.depth_ == 0 && b.depth_ == 0) return interval_order(a.top_, b.top_);
    // a side whose log chain went nonpositive is certainly below any tower
    if (a.depth_ == 0 && a.top_.hi.sign() <= 0) return Order::less;
    if (b.depth_ == 0 && b.top_.hi.sign() <= 0) return Order::greater;
    while (a.depth_ != b.depth_) (a.depth_ < b.depth_ ? a : b).raise();
    return interval_order(a.top_, b.top_);
  }

  friend bool certainly_less(const LogValue& a, const LogValue& b) {
    return compare(a, b) == Order::less;
  }

  // a >= b, certified; exact equality of degenerate intervals counts
  friend bool certainly_geq(LogValue a, LogValue b) {
    if (a.depth_ != 0 || b.depth_ != 0) {
      if (compare(b, a) == Order::less) return true;
      while (a.depth_ != b.depth_) (a.depth_ < b.depth_ ? a : b).raise();
    }
    return a.top_.lo >= b.top_.hi;
  }

  friend LogValue add_values(LogValue a, LogValue b) {
    if (a.depth_ == 0 && b.depth_ == 0) {
      LogValue v;
      v.top_ = add(a.top_, b.top_);
      v.integer_ = a.integer_ && b.integer_;
      v.signed_ok_ = a.signed_ok_ || b.signed_ok_;
      if (!v.signed_ok_)
        require(v.top_.lo.sign() > 0, errc::domain, "log-space value must stay positive");
      v.canonicalize();
      return v;
    }
    while (a.depth_ != b.depth_) (a.depth_ < b.depth_ ? a : b).raise();
    // a + b <= 2 max <= exp2^d(max_hi + 1); a + b >= max >= exp2^d(max_lo)
    LogValue v;
    v.depth_ = a.depth_;
    v.top_ = BigInterval(a.top_.lo > b.top_.lo ? a.top_.lo : b.top_.lo,
                         add(a.top_.hi > b.top_.hi ? a.top_.hi : b.top_.hi, BigFloat(1.0),
                             MPFR_RNDU));
    v.canonicalize();
    return v;
  }

  // a - b; when towers are involved b must be certifiably below a/2
  friend LogValue sub_values(LogValue a, LogValue b) {
    if (a.depth_ == 0 && b.depth_ == 0) {
      LogValue v;
      v.top_ = sub(a.top_, b.top_);
      v.signed_ok_ = true;
      v.canonicalize();
      return v;
    }
    require(compare(add_values(b, b), a) == Order::less, errc::domain,
            "log-space sub: could not certify domination");
    while (a.depth_ != b.depth_) (a.depth_ < b.depth_ ? a : b).raise();
    LogValue v;
    v.depth_ = a.depth_;
    v.top_ = BigInterval(sub(a.top_.lo, BigFloat(1.0), MPFR_RNDD), a.top_.hi);
    v.canonicalize();
    return v;
  }

  // smallest certified interval containing both: [min lo, max hi]
  friend LogValue hull_values(LogValue a, LogValue b) {
    if (a.depth_ != 0 || b.depth_ != 0)
      while (a.depth_ != b.depth_) (a.depth_ < b.depth_ ? a : b).raise();
    LogValue v;
    v.depth_ = a.depth_;
    v.top_ = BigInterval(a.top_.lo < b.top_.lo ? a.top_.lo : b.top_.lo,
                         a.top_.hi > b.top_.hi ? a.top_.hi : b.top_.hi);
    v.signed_ok_ = a.signed_ok_ || b.signed_ok_;
    v.canonicalize();
    return v;
  }

  friend LogValue mul_values(const LogValue& a, const LogValue& b) {
    if (a.depth_ == 0 && b.depth_ == 0) {
      LogValue v;
      v.top_ = mul_nn(a.top_, b.top_);
      v.integer_ = a.integer_ && b.integer_;
      v.canonicalize();
      return v;
    }
    return pow2(add_values(log2_of(a), log2_of(b)));
  }

  friend LogValue div_values(const LogValue& a, const LogValue& b) {
    if (a.depth_ == 0 && b.depth_ == 0) {
      LogValue v;
      v.top_ = div_nn(a.top_, b.top_);
      v.canonicalize();
      return v;
    }
    return pow2(sub_values(log2_of(a), log2_of(b)));
  }

  bool nonnegative() const { return top_.lo.sign() >= 0 || depth_ > 0; }

  std::string brief() const {
    std::string s;
    for (int i = 0; i < depth_; ++i) s += "2^(";
    s += top_.is_point() ? top_.lo.str(18) : "[" + top_.lo.str(18) + "," + top_.hi.str(18) + "]";
    for (int i = 0; i < depth_; ++i) s += ")";
    return s;
  }

 private:
  static Order interval_order(const BigInterval& x, const BigInterval& y) {
    if (certainly_less(x, y)) return Order::less;
    if (certainly_greater(x, y)) return Order::greater;
    return Order::overlap;
  }

  void raise() {
    require(top_.lo.sign() > 0, errc::domain, "cannot raise a nonpositive level");
    top_ = log2(top_);
    ++depth_;
    integer_ = false;
  }

  // keep exp2 arguments representable: lower shallow towers, raise huge
  // depth-0 values (hysteresis between the two thresholds avoids cycling)
  void canonicalize() {
    while (depth_ >= 1 && !(top_.hi > BigFloat(kLowerBound))) {
      if (top_.is_point() && top_.lo.is_integer() && top_.lo.fits_long()) {
        top_ = BigInterval(BigFloat::pow2(top_.lo.to_long()));  // exact
      } else {
        top_ = exp2(top_);
      }
      --depth_;
      signed_ok_ = false;
    }
    while (depth_ == 0 && top_.lo.sign() > 0 && !top_.hi.is_zero() &&
           top_.hi.exponent() > static_cast<mpfr_exp_t>(kRaiseBound)) {
      raise();
    }
  }

  static constexpr double kLowerBound = 1e15;
  static constexpr long kRaiseBound = 4000000000000000L;  // 4e15

  int depth_ = 0;
  BigInterval top_;
  bool integer_ = false;
  bool signed_ok_ = false;  // depth-0 intermediate allowed to be <= 0
};

// m^e for a small integer base and a log-space exponent.
inline LogValue int_pow(std::uint64_t base, const LogValue& e) {
  require(base >= 2, errc::domain, "int_pow expects base >= 2");
  std::uint64_t small = 0;
  if (e.exact_uint64(&small) && small <= 63) {
    std::uint64_t acc = 1;
    bool fits = true;
    for (std::uint64_t i = 0; i < small; ++i) {
      if (acc > std::uint64_t(9e18) / base) {
        fits = false;
        break;
      }
      acc *= base;
    }
    if (fits) return LogValue::exact(acc);
  }
  if ((base & (base - 1)) == 0) {  // power of two: exact in log space
    std::uint64_t ex = 0;
    while ((std::uint64_t(1) << ex) < base) ++ex;
    const LogValue lg = ex == 1 ? e : mul_values(LogValue::exact(ex), e);
    return pow2(lg).tagged_integer();
  }
  const BigFloat b(static_cast<long>(base));
  const BigInterval lg2(log2(b, MPFR_RNDD), log2(b, MPFR_RNDU));
  // the result is an integer structurally (integer base, integer exponent)
  LogValue v = pow2(mul_values(e, LogValue::from_interval(lg2)));
  return e.integer_certified() ? v.tagged_integer() : v;
}

}  // namespace annulus
