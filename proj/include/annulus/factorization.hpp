#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "annulus/domain.hpp"

namespace annulus {

struct WindingOptions {
  int samples = 0;           // 0: derive from the degree bound
  double vanish_tol = 1e-8;  // min sampled |f| on the contour
  double round_tol = 1e-3;   // max distance of the integral from an integer
};

namespace detail {

inline int winding_samples(const LaurentSeries& f, int requested) {
  if (requested > 0) return requested;
  return next_pow2(std::max(2048, 8 * (2 * f.degree_bound() + 1)));
}

struct ContourData {
  double min_modulus = 0.0;
  cplx integral = 0.0;  // (1/2 pi i) contour integral of f'/f
};

inline ContourData contour_data(const LaurentSeries& f, const LaurentSeries& fprime, double r,
                                int m) {
  ContourData out;
  out.min_modulus = std::numeric_limits<double>::infinity();
  cplx acc = 0.0;
  for (int j = 0; j < m; ++j) {
    const cplx z = std::polar(r, kTwoPi * j / m);
    const cplx v = eval(f, z);
    out.min_modulus = std::min(out.min_modulus, std::abs(v));
    if (v != 0.0) acc += eval(fprime, z) * z / v;
  }
  out.integral = acc / static_cast<double>(m);
  return out;
}

}  // namespace detail

// Argument-principle winding of f around 0 along the circle rT, by the
// trapezoidal contour integral of f'/f. The pre-rounding value must sit
// within round_tol of an integer; a larger defect signals undersampling or
// a zero near the contour.
inline int winding_number(const LaurentSeries& f, double r, const WindingOptions& opt = {}) {
  require(f.contains_radius(r), errc::domain, "contour outside the validity annulus");
  const int m = detail::winding_samples(f, opt.samples);
  const LaurentSeries fp = differentiate(f);
  const detail::ContourData data = detail::contour_data(f, fp, r, m);
  require(data.min_modulus > opt.vanish_tol, errc::near_zero_on_contour,
          "f nearly vanishes on the contour");
  const double rounded = std::round(data.integral.real());
  require(std::abs(data.integral - rounded) <= opt.round_tol, errc::non_integer_winding,
          "contour integral is not close to an integer");
  return static_cast<int>(rounded);
}

struct NonvanishingOptions {
  int grid_circles = 9;
  WindingOptions winding;
};

// Certifies that f has no zeros in the closed annulus [1/s, s] (clipped to
// the validity annulus): the winding number must be constant across a
// radius grid and the sampled min-modulus must stay above vanish_tol on
// every circle. Returns the common winding.
inline int nonvanishing_winding(const LaurentSeries& f, double s,
                                const NonvanishingOptions& opt = {}) {
  require(s > 1.0, errc::domain, "annulus parameter s must exceed 1");
  require(f.contains_radius(s) && f.contains_radius(1.0 / s), errc::domain,
          "closed annulus [1/s, s] must sit inside the validity annulus");
  const double lo = 1.0 / s;
  const double hi = s;
  const int m = detail::winding_samples(f, opt.winding.samples);
  const LaurentSeries fp = differentiate(f);
  std::optional<int> common;
  for (int i = 0; i < opt.grid_circles; ++i) {
    const double t = static_cast<double>(i) / (opt.grid_circles - 1);
    const double r = lo * std::pow(hi / lo, t);
    const detail::ContourData data = detail::contour_data(f, fp, r, m);
    require(data.min_modulus > opt.winding.vanish_tol, errc::vanishing_in_annulus,
            "f nearly vanishes inside the annulus");
    const double rounded = std::round(data.integral.real());
    require(std::abs(data.integral - rounded) <= opt.winding.round_tol,
            errc::non_integer_winding, "contour integral is not close to an integer");
    const int w = static_cast<int>(rounded);
    if (common && *common != w)
      fail(errc::winding_mismatch, "winding varies across the annulus: a zero lies inside");
    common = w;
  }
  return *common;
}

struct AnnulusLogOptions {
  int recovered_degree = 64;
  int samples = 0;  // 0: derive from recovered_degree
  NonvanishingOptions check;
  bool run_precheck = true;
};

struct AnnulusLog {
  int winding = 0;
  LaurentSeries h{0};
  double roundtrip_residual = 0.0;  // sup over test circles of |g - z^n exp(h)|, relative
};

// Lemma "g = z^n exp(h)" on a nonvanishing annulus, computed without any
// branch tracking: h' = (g/z^n)'/(g/z^n) is recovered coefficientwise, the
// antiderivative has no 1/z term because g/z^n has winding zero, and the
// constant of integration is fixed by the principal logarithm at z = 1.
inline AnnulusLog annulus_log(const LaurentSeries& g, double s, const AnnulusLogOptions& opt = {}) {
  AnnulusLog out;
  out.winding = opt.run_precheck
                    ? nonvanishing_winding(g, s, opt.check)
                    : winding_number(g, 1.0, opt.check.winding);
  const int n = out.winding;
  const LaurentSeries shifted_g = shifted(g, -n);  // winding zero on the annulus
  const LaurentSeries num = differentiate(shifted_g);

  const int rec = opt.recovered_degree;
  const int m = opt.samples > 0 ? opt.samples : next_pow2(8 * (2 * (rec + 1) + 1));
  CircleSamples ratio;
  ratio.radius = 1.0;
  ratio.values.reserve(static_cast<std::size_t>(m));
  for (const cplx& w : unit_roots(m)) ratio.values.push_back(eval(num, w) / eval(shifted_g, w));
  const LaurentSeries hprime =
      from_circle_samples(ratio, rec + 1, g.inner_radius(), g.outer_radius());

  LaurentSeries h(rec, g.inner_radius(), g.outer_radius());
  for (int k = -rec; k <= rec; ++k)
    if (k != 0) h.set_coeff(k, hprime.coeff(k - 1) / static_cast<double>(k));
  // h(1) = Log g(1): the principal branch pins the constant term
  cplx at_one = 0.0;
  for (int k = -rec; k <= rec; ++k) at_one += h.coeff(k);
  h.set_coeff(0, std::log(eval(shifted_g, cplx(1.0))) - at_one);
  out.h = h;

  double residual = 0.0;
  double scale = 1.0;
  const double rt = std::sqrt(std::min(s, g.outer_radius() * (1.0 - 1e-9)));
  for (double r : {1.0, rt, 1.0 / rt}) {
    for (int j = 0; j < 64; ++j) {
      const cplx z = std::polar(r, kTwoPi * j / 64);
      const cplx gz = eval(g, z);
      scale = std::max(scale, std::abs(gz));
      residual = std::max(residual, std::abs(gz - std::pow(z, n) * std::exp(eval(h, z))));
    }
  }
  out.roundtrip_residual = residual / scale;
  return out;
}

// h = h_+ + h_- with h_+ supported on k >= 0 (it keeps the constant term,
// so h_+(0) = h(0)) and h_- on k < 0.
inline std::pair<LaurentSeries, LaurentSeries> laurent_split(const LaurentSeries& h) {
  LaurentSeries plus(h.degree_bound(), h.inner_radius(), h.outer_radius());
  LaurentSeries minus(h.degree_bound(), h.inner_radius(), h.outer_radius());
  for (int k = -h.degree_bound(); k <= h.degree_bound(); ++k)
    (k >= 0 ? plus : minus).set_coeff(k, h.coeff(k));
  return {plus.compressed(), minus.compressed()};
}

// reflect(g)(z) = conj(g(1/conj(z))): coefficient a_k moves to index -k,
// conjugated. On the unit circle this equals conj(g(z)) pointwise.
inline LaurentSeries reflect(const LaurentSeries& g) {
  LaurentSeries out(g.degree_bound(), 1.0 / g.outer_radius(), 1.0 / g.inner_radius());
  for (int k = -g.degree_bound(); k <= g.degree_bound(); ++k)
    out.set_coeff(-k, std::conj(g.coeff(k)));
  return out;
}

// exp of a one-sided series through the y' = h' y recurrence; exact
// convolution arithmetic, no sampling.
inline LaurentSeries exp_one_sided(const LaurentSeries& h, int out_degree) {
  for (int k = -h.degree_bound(); k < 0; ++k)
    require(h.coeff(k) == 0.0, errc::domain, "exp_one_sided expects no negative indices");
  LaurentSeries y(out_degree, h.inner_radius(), h.outer_radius());
  y.set_coeff(0, std::exp(h.coeff(0)));
  for (int k = 1; k <= out_degree; ++k) {
    cplx acc = 0.0;
    for (int j = 1; j <= std::min(k, h.degree_bound()); ++j)
      acc += static_cast<double>(j) * h.coeff(j) * y.coeff(k - j);
    y.set_coeff(k, acc / static_cast<double>(k));
  }
  return y;
}

// exp of a general series. Two-sided coefficient exponentials have no
// finite closed convolution, so that branch goes through sampling and
// recovery on two circles.
inline LaurentSeries exp_series(const LaurentSeries& h, int out_degree) {
  bool one_sided = true;
  for (int k = -h.degree_bound(); k < 0; ++k) one_sided = one_sided && h.coeff(k) == 0.0;
  if (one_sided) return exp_one_sided(h, out_degree);
  const int m = next_pow2(8 * (2 * out_degree + 1));
  const double r2 = std::min(1.25, std::sqrt(h.outer_radius()));
  return recover_from_function([&](cplx z) { return std::exp(eval(h, z)); }, out_degree, 1.0, r2,
                               m, h.inner_radius(), h.outer_radius());
}

struct FactorOptions {
  double domain_R = 2.0;     // search ladder starts at the ambient R
  int grid_steps = 15;       // s_j = R^{1 - j/16}, j = 0..grid_steps-1
  double uni_tol = 1e-8;     // sup_T ||f| - 1| admission bound
  int g0_degree = 64;
  AnnulusLogOptions log_options;
  int residual_samples = 128;
};

struct FactorizationResult {
  int winding = 0;
  LaurentSeries g0{0};  // outer factor, supported on k >= 0, zero-free on the closed disc
  double s = 0.0;       // working annulus parameter in (1, R]
  double residual = 0.0;             // sup over test circles of |f - z^n g0 / reflect(g0)|
  double unimodularity_defect = 0.0; // sup over T of ||f| - 1|
  int g0_winding = 0;                // 0 certifies the outer-function surrogate
  double g0_min_modulus = 0.0;       // min |g0| on the disc radius grid
};

// Canonical factorisation of a function unimodular on the unit circle:
// f = z^n g0(z) / conj(g0(1/conj z)) on the working annulus, with g0 outer
// (zero-free on the closed disc, analytic past T). The normalisation that
// makes (n, g0) unique: h_- has no constant term and the branch constant
// comes from the principal logarithm at z = 1.
inline FactorizationResult factor_unimodular(const LaurentSeries& f,
                                             std::optional<double> s_hint = std::nullopt,
                                             const FactorOptions& opt = {}) {
  FactorizationResult out;

  // assertion (1): unimodular on T
  {
    const int m = default_samples(f.degree_bound());
    double defect = 0.0;
    int best = 0;
    std::vector<double> dev(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      dev[static_cast<std::size_t>(j)] =
          std::abs(std::abs(eval(f, std::polar(1.0, kTwoPi * j / m))) - 1.0);
      if (dev[static_cast<std::size_t>(j)] > dev[static_cast<std::size_t>(best)]) best = j;
    }
    const double h = kTwoPi / m;
    defect = detail::golden_max(
        [&](double t) { return std::abs(std::abs(eval(f, std::polar(1.0, t))) - 1.0); },
        (best - 1) * h, (best + 1) * h, 40, nullptr);
    defect = std::max(defect, dev[static_cast<std::size_t>(best)]);
    out.unimodularity_defect = defect;
    require(defect < opt.uni_tol, errc::not_unimodular,
            "input is not unimodular on the unit circle");
  }

  // pick the working annulus: the hint, or the largest ladder value whose
  // closed annulus passes the nonvanishing certificate
  std::vector<double> candidates;
  if (s_hint) {
    candidates.push_back(*s_hint);
  } else {
    for (int j = 0; j < opt.grid_steps; ++j)
      candidates.push_back(std::pow(opt.domain_R, 1.0 - j / 16.0));
  }
  std::optional<double> chosen;
  for (double s : candidates) {
    try {
      nonvanishing_winding(f, s, opt.log_options.check);
      chosen = s;
      break;
    } catch (const error& e) {
      // certificate failures and out-of-validity candidates advance the search
      if (errc_exit_code(e.code()) != 3 && e.code() != errc::domain) throw;
    }
  }
  require(chosen.has_value(), errc::no_nonvanishing_annulus,
          "no annulus in the search ladder is free of zeros");
  out.s = *chosen;

  AnnulusLogOptions log_opt = opt.log_options;
  log_opt.run_precheck = false;  // certified just above
  const AnnulusLog lg = annulus_log(f, out.s, log_opt);
  out.winding = lg.winding;
  const auto [h_plus, h_minus] = laurent_split(lg.h);
  out.g0 = exp_one_sided(h_plus, opt.g0_degree);

  // outer-function surrogate at this regularity: g0 extends past T and has
  // no zeros in the closed unit disc
  out.g0_winding = winding_number(out.g0, 1.0, opt.log_options.check.winding);
  out.g0_min_modulus = std::numeric_limits<double>::infinity();
  for (double r : {1.0, 0.7, 0.4, 0.1}) {
    const double rr = std::max(r, out.g0.inner_radius() * 2.0);
    for (int j = 0; j < 64; ++j)
      out.g0_min_modulus =
          std::min(out.g0_min_modulus, std::abs(eval(out.g0, std::polar(rr, kTwoPi * j / 64))));
  }

  // assertion (2) on the circles {1, sqrt(s), 1/sqrt(s)}
  const LaurentSeries refl = reflect(out.g0);
  const double rt = std::sqrt(std::min(out.s, f.outer_radius() * (1.0 - 1e-9)));
  double residual = 0.0;
  for (double r : {1.0, rt, 1.0 / rt}) {
    for (int j = 0; j < opt.residual_samples; ++j) {
      const cplx z = std::polar(r, kTwoPi * j / opt.residual_samples);
      const cplx rec = std::pow(z, out.winding) * eval(out.g0, z) / eval(refl, z);
      residual = std::max(residual, std::abs(eval(f, z) - rec));
    }
  }
  out.residual = residual;
  return out;
}

}  // namespace annulus
