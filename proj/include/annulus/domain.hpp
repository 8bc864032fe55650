#pragma once

#include <cmath>
#include <vector>

#include "annulus/laurent.hpp"

namespace annulus {

// The symmetric annulus A = { 1/R < |z| < R }, R > 1.
struct AnnulusDomain {
  double R;

  explicit AnnulusDomain(double outer = 2.0) : R(outer) {
    require(R > 1.0, errc::domain, "annulus outer radius must exceed 1");
  }
  double inner() const { return 1.0 / R; }
};

// R_n = R^{1-1/n}. The exhaustion compacta K_n = { 1/R_n <= |z| <= R_n }
// increase to the annulus; K_1 is the unit circle.
inline double exhaustion_radius(const AnnulusDomain& dom, int n) {
  require(n >= 1, errc::domain, "exhaustion level must be >= 1");
  return std::pow(dom.R, 1.0 - 1.0 / n);
}

struct ExhaustionLevel {
  int n;
  double R_n;
};

inline ExhaustionLevel exhaustion_level(const AnnulusDomain& dom, int n) {
  return {n, exhaustion_radius(dom, n)};
}

struct SupResult {
  double value = 0.0;      // refined sup of |f| on the circle
  double argmax = 0.0;     // angle attaining it
  double error_bound = 0.0;  // second-difference bound on the sampling error
};

namespace detail {

// Golden-section maximisation of a smooth function on [lo, hi].
template <typename F>
double golden_max(F&& g, double lo, double hi, int iters, double* arg) {
  constexpr double invphi = 0.6180339887498948482045868343656;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double g1 = g(x1), g2 = g(x2);
  for (int i = 0; i < iters; ++i) {
    if (g1 < g2) {
      a = x1;
      x1 = x2;
      g1 = g2;
      x2 = a + invphi * (b - a);
      g2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      g2 = g1;
      x1 = b - invphi * (b - a);
      g1 = g(x1);
    }
  }
  if (g1 >= g2) {
    if (arg) *arg = x1;
    return g1;
  }
  if (arg) *arg = x2;
  return g2;
}

}  // namespace detail

// Sampled sup of |f| on the circle of radius r, refined by golden-section
// search around the discrete argmax. The reported error bound is the
// O(M^-2) second-difference estimate of the sampling residual; the refined
// value is typically far closer than that.
inline SupResult sup_on_circle(const LaurentSeries& f, double r, int samples = 0,
                               int refine_iters = 40) {
  require(f.contains_radius(r), errc::domain, "circle outside the validity annulus");
  const int m = samples > 0 ? samples : default_samples(f.degree_bound());
  std::vector<double> mag(static_cast<std::size_t>(m));
  int best = 0;
  for (int j = 0; j < m; ++j) {
    mag[static_cast<std::size_t>(j)] = std::abs(eval(f, std::polar(r, kTwoPi * j / m)));
    if (mag[static_cast<std::size_t>(j)] > mag[static_cast<std::size_t>(best)]) best = j;
  }
  const double h = kTwoPi / m;
  auto g = [&](double theta) { return std::abs(eval(f, std::polar(r, theta))); };
  SupResult out;
  const double refined =
      detail::golden_max(g, (best - 1) * h, (best + 1) * h, refine_iters, &out.argmax);
  out.value = std::max(refined, mag[static_cast<std::size_t>(best)]);
  if (out.value == mag[static_cast<std::size_t>(best)]) out.argmax = best * h;
  double dd = 0.0;
  for (int j = 0; j < m; ++j) {
    const double d2 = mag[static_cast<std::size_t>((j + 1) % m)] - 2.0 * mag[static_cast<std::size_t>(j)] +
                      mag[static_cast<std::size_t>((j - 1 + m) % m)];
    dd = std::max(dd, std::abs(d2));
  }
  out.error_bound = dd / 8.0;
  return out;
}

struct SeminormDetail {
  double value = 0.0;
  double error_bound = 0.0;
};

// ||f||_{inf,n} = sup_{K_n} |f|. By the maximum modulus principle the sup
// sits on the boundary circles R_n T and R_n^{-1} T.
inline SeminormDetail seminorm_detail(const LaurentSeries& f, const AnnulusDomain& dom, int n,
                                      int samples = 0, int refine_iters = 40) {
  const double rn = exhaustion_radius(dom, n);
  require(f.contains_radius(rn) && f.contains_radius(1.0 / rn), errc::domain,
          "K_n exceeds the validity annulus");
  const SupResult outer = sup_on_circle(f, rn, samples, refine_iters);
  if (n == 1) return {outer.value, outer.error_bound};
  const SupResult inner = sup_on_circle(f, 1.0 / rn, samples, refine_iters);
  return {std::max(outer.value, inner.value), std::max(outer.error_bound, inner.error_bound)};
}

inline double seminorm(const LaurentSeries& f, const AnnulusDomain& dom, int n, int samples = 0,
                       int refine_iters = 40) {
  return seminorm_detail(f, dom, n, samples, refine_iters).value;
}

enum class MetricVariant { bounded, ratio };

struct FrechetDistance {
  double value = 0.0;  // partial sum over levels 1..k_max
  double tail = 0.0;   // certified tail interval is [0, 2^-k_max]
};

// d(f,g) = sum_k 2^{-k} phi(||f-g||_{inf,k}) with phi = min(1,.) for the
// bounded variant and x/(1+x) for the ratio variant.
inline FrechetDistance frechet_distance(const LaurentSeries& f, const LaurentSeries& g,
                                        const AnnulusDomain& dom, MetricVariant variant,
                                        int k_max = 20, int samples = 0) {
  require(k_max >= 1, errc::domain, "k_max must be >= 1");
  const LaurentSeries diff = sub(f, g);
  FrechetDistance out;
  double weight = 1.0;
  for (int k = 1; k <= k_max; ++k) {
    weight *= 0.5;
    const double s = seminorm(diff, dom, k, samples);
    out.value += weight * (variant == MetricVariant::bounded ? std::min(1.0, s) : s / (1.0 + s));
  }
  out.tail = weight;
  return out;
}

}  // namespace annulus
