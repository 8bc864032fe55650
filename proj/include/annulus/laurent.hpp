#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "annulus/errors.hpp"

namespace annulus {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Coefficients below this magnitude are snapped to zero after any
// sampling recovery; keeps winding and classification logic stable.
inline constexpr double kZeroSnap = 1e-14;

// Default truncation order. Polynomial data (monomials, random test
// polynomials) is entire on C*, so it carries a wide validity annulus.
inline constexpr int kDefaultDegree = 64;
inline constexpr double kDefaultInner = 1.0 / 1024.0;
inline constexpr double kDefaultOuter = 1024.0;

inline int next_pow2(int n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

// Truncated two-sided Laurent series sum_{k=-N}^{N} a_k z^k together with
// the open annulus on which evaluation is contracted. Immutable in spirit:
// every operation returns a fresh value.
class LaurentSeries {
 public:
  LaurentSeries(int degree_bound, double inner, double outer)
      : coeffs_(2 * static_cast<std::size_t>(degree_bound) + 1),
        degree_bound_(degree_bound),
        inner_(inner),
        outer_(outer) {
    require(degree_bound >= 0, errc::domain, "degree bound must be nonnegative");
    require(inner > 0.0 && inner < 1.0 && outer > 1.0, errc::domain,
            "validity annulus must satisfy 0 < inner < 1 < outer");
  }

  explicit LaurentSeries(int degree_bound = kDefaultDegree)
      : LaurentSeries(degree_bound, kDefaultInner, kDefaultOuter) {}

  LaurentSeries(std::vector<cplx> coeffs, int degree_bound, double inner, double outer)
      : LaurentSeries(degree_bound, inner, outer) {
    require(coeffs.size() == coeffs_.size(), errc::domain,
            "coefficient vector must have length 2N+1");
    coeffs_ = std::move(coeffs);
    for (const cplx& c : coeffs_)
      require(std::isfinite(c.real()) && std::isfinite(c.imag()), errc::domain,
              "coefficients must be finite");
  }

  static LaurentSeries monomial(int k, cplx c = 1.0, double inner = kDefaultInner,
                                double outer = kDefaultOuter) {
    LaurentSeries f(std::abs(k), inner, outer);
    f.set_coeff(k, c);
    return f;
  }

  static LaurentSeries zero(int degree_bound = 0) { return LaurentSeries(degree_bound); }

  int degree_bound() const { return degree_bound_; }
  double inner_radius() const { return inner_; }
  double outer_radius() const { return outer_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx coeff(int k) const {
    if (std::abs(k) > degree_bound_) return 0.0;
    return coeffs_[static_cast<std::size_t>(k + degree_bound_)];
  }

  void set_coeff(int k, cplx v) {
    require(std::abs(k) <= degree_bound_, errc::domain, "coefficient index out of range");
    coeffs_[static_cast<std::size_t>(k + degree_bound_)] = v;
  }

  void add_coeff(int k, cplx v) { set_coeff(k, coeff(k) + v); }

  bool contains_radius(double r) const { return r > inner_ && r < outer_; }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

  bool is_zero(double tol = 0.0) const { return max_abs_coeff() <= tol; }

  // Index of the single surviving coefficient, or no value if the series is
  // not a monomial after snapping at `tol`.
  std::optional<int> monomial_index(double tol = kZeroSnap) const {
    std::optional<int> found;
    for (int k = -degree_bound_; k <= degree_bound_; ++k) {
      if (std::abs(coeff(k)) > tol) {
        if (found) return std::nullopt;
        found = k;
      }
    }
    return found;
  }

  LaurentSeries snapped(double tol = kZeroSnap) const {
    LaurentSeries out = *this;
    for (cplx& c : out.coeffs_)
      if (std::abs(c) <= tol) c = 0.0;
    return out;
  }

  // Drop exact-zero padding at both ends (never below degree 0).
  LaurentSeries compressed() const {
    int need = 0;
    for (int k = -degree_bound_; k <= degree_bound_; ++k)
      if (coeff(k) != 0.0) need = std::max(need, std::abs(k));
    return with_degree(need);
  }

  LaurentSeries with_degree(int new_bound) const {
    LaurentSeries out(new_bound, inner_, outer_);
    const int m = std::min(new_bound, degree_bound_);
    for (int k = -m; k <= m; ++k) out.set_coeff(k, coeff(k));
    return out;
  }

  LaurentSeries with_annulus(double inner, double outer) const {
    LaurentSeries out(coeffs_, degree_bound_, inner, outer);
    return out;
  }

 private:
  std::vector<cplx> coeffs_;  // coeffs_[k + N] is the coefficient of z^k
  int degree_bound_;
  double inner_, outer_;
};

// Two-sided Horner evaluation: ascending powers of z for k >= 0 and of 1/z
// for k < 0.
inline cplx eval(const LaurentSeries& f, cplx z) {
  const double az = std::abs(z);
  require(f.contains_radius(az), errc::domain,
          "evaluation point outside the validity annulus");
  const int n = f.degree_bound();
  cplx pos = f.coeff(n);
  for (int k = n - 1; k >= 0; --k) pos = pos * z + f.coeff(k);
  if (n == 0) return pos;
  const cplx w = 1.0 / z;
  cplx neg = f.coeff(-n);
  for (int k = n - 1; k >= 1; --k) neg = neg * w + f.coeff(-k);
  return pos + neg * w;
}

namespace detail {
inline void intersect_annulus(const LaurentSeries& f, const LaurentSeries& g, double& inner,
                              double& outer) {
  inner = std::max(f.inner_radius(), g.inner_radius());
  outer = std::min(f.outer_radius(), g.outer_radius());
  require(inner < outer, errc::domain, "validity annuli do not intersect");
}
}  // namespace detail

inline LaurentSeries add(const LaurentSeries& f, const LaurentSeries& g) {
  double inner, outer;
  detail::intersect_annulus(f, g, inner, outer);
  LaurentSeries out(std::max(f.degree_bound(), g.degree_bound()), inner, outer);
  for (int k = -out.degree_bound(); k <= out.degree_bound(); ++k)
    out.set_coeff(k, f.coeff(k) + g.coeff(k));
  return out;
}

inline LaurentSeries scale(const LaurentSeries& f, cplx c) {
  LaurentSeries out = f;
  for (int k = -f.degree_bound(); k <= f.degree_bound(); ++k) out.set_coeff(k, c * f.coeff(k));
  return out;
}

inline LaurentSeries sub(const LaurentSeries& f, const LaurentSeries& g) {
  return add(f, scale(g, -1.0));
}

inline LaurentSeries operator+(const LaurentSeries& f, const LaurentSeries& g) { return add(f, g); }
inline LaurentSeries operator-(const LaurentSeries& f, const LaurentSeries& g) { return sub(f, g); }
inline LaurentSeries operator*(cplx c, const LaurentSeries& f) { return scale(f, c); }

// Coefficient convolution; result degree bound N_f + N_g, validity annulus
// the intersection.
inline LaurentSeries multiply(const LaurentSeries& f, const LaurentSeries& g) {
  double inner, outer;
  detail::intersect_annulus(f, g, inner, outer);
  LaurentSeries out(f.degree_bound() + g.degree_bound(), inner, outer);
  for (int i = -f.degree_bound(); i <= f.degree_bound(); ++i) {
    const cplx a = f.coeff(i);
    if (a == 0.0) continue;
    for (int j = -g.degree_bound(); j <= g.degree_bound(); ++j) {
      const cplx b = g.coeff(j);
      if (b == 0.0) continue;
      out.add_coeff(i + j, a * b);
    }
  }
  return out;
}

inline LaurentSeries operator*(const LaurentSeries& f, const LaurentSeries& g) {
  return multiply(f, g);
}

// d/dz: k a_k moves to index k-1.
inline LaurentSeries differentiate(const LaurentSeries& f) {
  LaurentSeries out(f.degree_bound() + 1, f.inner_radius(), f.outer_radius());
  for (int k = -f.degree_bound(); k <= f.degree_bound(); ++k)
    if (k != 0) out.set_coeff(k - 1, static_cast<double>(k) * f.coeff(k));
  return out;
}

inline LaurentSeries power(const LaurentSeries& f, int n) {
  require(n >= 0, errc::domain, "power expects a nonnegative exponent");
  LaurentSeries acc = LaurentSeries::monomial(0, 1.0, f.inner_radius(), f.outer_radius());
  for (int i = 0; i < n; ++i) acc = multiply(acc, f).compressed();
  return acc;
}

// Uniform samples f(r e^{2 pi i j / M}), j = 0..M-1.
struct CircleSamples {
  double radius = 1.0;
  std::vector<cplx> values;
};

inline std::vector<cplx> unit_roots(int m) {
  std::vector<cplx> w(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) w[static_cast<std::size_t>(j)] = std::polar(1.0, kTwoPi * j / m);
  return w;
}

inline CircleSamples sample_circle(const LaurentSeries& f, double r, int m) {
  require(m >= 1, errc::domain, "sample count must be positive");
  CircleSamples s;
  s.radius = r;
  s.values.reserve(static_cast<std::size_t>(m));
  for (const cplx& w : unit_roots(m)) s.values.push_back(eval(f, r * w));
  return s;
}

// Recommended samples per circle for work at degree N: 4(2N+1) rounded up
// to a power of two.
inline int default_samples(int degree_bound) { return next_pow2(4 * (2 * degree_bound + 1)); }

// Discrete Fourier recovery of a_k for |k| <= N: a_k r^k is the k-th
// Fourier coefficient of f on the circle of radius r. The recovered block
// is exact (up to rounding) for series of degree <= N when M >= 2(2N+1);
// for longer series the tails alias in, which two-circle agreement bounds.
inline LaurentSeries from_circle_samples(const CircleSamples& samples, int degree_bound,
                                         double inner = kDefaultInner,
                                         double outer = kDefaultOuter,
                                         double dynamic_range = 1e12,
                                         double snap_tol = kZeroSnap) {
  const int m = static_cast<int>(samples.values.size());
  require(m >= 2 * (2 * degree_bound + 1), errc::domain,
          "need at least 2(2N+1) samples to recover degree N");
  const double grow = std::pow(samples.radius, degree_bound);
  require(std::max(grow, 1.0 / grow) <= dynamic_range, errc::ill_conditioned,
          "radius^N exceeds the configured dynamic-range bound");
  const std::vector<cplx> roots = unit_roots(m);
  LaurentSeries out(degree_bound, inner, outer);
  for (int k = -degree_bound; k <= degree_bound; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < m; ++j) {
      // e^{-2 pi i j k / M} via an exact index reduction mod M
      const long long t = (static_cast<long long>(j) * k) % m;
      const int idx = static_cast<int>((m - t) % m);
      acc += samples.values[static_cast<std::size_t>(j)] * roots[static_cast<std::size_t>(idx)];
    }
    acc /= static_cast<double>(m);
    acc /= std::pow(samples.radius, k);
    out.set_coeff(k, std::abs(acc) <= snap_tol ? cplx(0.0) : acc);
  }
  return out;
}

// Recover a series for an arbitrary evaluator by sampling one circle, with
// a truncation-error estimate from the disagreement against a second
// circle. Used for functions that are not already finite Laurent data.
template <typename F>
LaurentSeries recover_from_function(F&& fn, int degree_bound, double r1, double r2, int m,
                                    double inner, double outer, double* tail_bound = nullptr) {
  const std::vector<cplx> roots = unit_roots(m);
  auto sample = [&](double r) {
    CircleSamples s;
    s.radius = r;
    s.values.reserve(static_cast<std::size_t>(m));
    for (const cplx& w : roots) s.values.push_back(fn(r * w));
    return s;
  };
  LaurentSeries a = from_circle_samples(sample(r1), degree_bound, inner, outer);
  LaurentSeries b = from_circle_samples(sample(r2), degree_bound, inner, outer);
  double disagree = 0.0;
  for (int k = -degree_bound; k <= degree_bound; ++k)
    disagree = std::max(disagree, std::abs(a.coeff(k) - b.coeff(k)));
  if (tail_bound) *tail_bound = disagree;
  return std::abs(r1 - 1.0) <= std::abs(r2 - 1.0) ? a : b;
}

// z^m f(z): every index moves up by m.
inline LaurentSeries shifted(const LaurentSeries& f, int m) {
  LaurentSeries out(f.degree_bound() + std::abs(m), f.inner_radius(), f.outer_radius());
  for (int k = -f.degree_bound(); k <= f.degree_bound(); ++k) out.set_coeff(k + m, f.coeff(k));
  return out;
}

// max_k |f_k - g_k| over the union of index ranges.
inline double coeff_distance(const LaurentSeries& f, const LaurentSeries& g) {
  double d = 0.0;
  const int n = std::max(f.degree_bound(), g.degree_bound());
  for (int k = -n; k <= n; ++k) d = std::max(d, std::abs(f.coeff(k) - g.coeff(k)));
  return d;
}

}  // namespace annulus
