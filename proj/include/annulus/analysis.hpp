#pragma once

#include <cmath>
#include <ostream>
#include <vector>

#include "annulus/domain.hpp"

namespace annulus {

// M(r) = sup{|f(z)| : |z| = r} together with the angles where the sampled
// modulus comes within tol of the sup.
struct CircleProfile {
  double radius = 1.0;
  double sup_modulus = 0.0;
  std::vector<double> argmax_angles;
  double refine_error = 0.0;
  int samples = 0;
};

struct ProfileOptions {
  int samples = 0;          // 0: derive from the degree bound
  int refine_iters = 40;
  double tol_max_rel = 1e-6;  // "within the max" means within tol_max_rel * M(r)
};

inline CircleProfile circle_profile(const LaurentSeries& f, double r,
                                    const ProfileOptions& opt = {}) {
  const int m = opt.samples > 0 ? opt.samples : default_samples(f.degree_bound());
  const SupResult sup = sup_on_circle(f, r, m, opt.refine_iters);
  CircleProfile out;
  out.radius = r;
  out.sup_modulus = sup.value;
  out.refine_error = sup.error_bound;
  out.samples = m;
  const double cutoff = sup.value * (1.0 - opt.tol_max_rel);
  for (int j = 0; j < m; ++j) {
    const double theta = kTwoPi * j / m;
    if (std::abs(eval(f, std::polar(r, theta))) >= cutoff) out.argmax_angles.push_back(theta);
  }
  return out;
}

struct HadamardResult {
  double residual = 0.0;   // RHS - LHS of the three-circle inequality
  bool equality = false;   // residual ~ 0 and f is a monomial c z^n
  double m1 = 0.0, m2 = 0.0, m3 = 0.0;
};

// log-convexity of r -> log M(r):
//   log(r3/r1) log M(r2) <= log(r3/r2) log M(r1) + log(r2/r1) log M(r3),
// with equality exactly for monomials. Equality detection goes through
// coefficient inspection, not residual magnitude alone: residuals near 0
// also occur for near-monomials.
inline HadamardResult hadamard_residual(const LaurentSeries& f, double r1, double r2, double r3,
                                        double tol_eq = 1e-8, double snap_tol = kZeroSnap,
                                        const ProfileOptions& opt = {}) {
  require(r1 < r2 && r2 < r3, errc::domain, "radii must be strictly increasing");
  HadamardResult out;
  out.m1 = sup_on_circle(f, r1, opt.samples, opt.refine_iters).value;
  out.m2 = sup_on_circle(f, r2, opt.samples, opt.refine_iters).value;
  out.m3 = sup_on_circle(f, r3, opt.samples, opt.refine_iters).value;
  require(out.m1 > 0.0 && out.m2 > 0.0 && out.m3 > 0.0, errc::undefined,
          "f vanishes identically on a circle, so f == 0 on the annulus");
  out.residual = std::log(r3 / r2) * std::log(out.m1) + std::log(r2 / r1) * std::log(out.m3) -
                 std::log(r3 / r1) * std::log(out.m2);
  out.equality = std::abs(out.residual) < tol_eq && f.monomial_index(snap_tol).has_value();
  return out;
}

// Verdict on Xi = {xi in rT : |f(xi)| = M(r)}: the set is the whole circle,
// a finite set, or unresolved at this sampling resolution. The numerical
// verdict names its resolution and admits Indeterminate instead of guessing.
struct MaxSetVerdict {
  enum class Kind { full_circle, finite, indeterminate };
  Kind kind = Kind::indeterminate;
  std::vector<double> cluster_angles;  // one representative angle per arc
  double evidence = 0.0;               // fraction of samples within tol of the sup
};

struct MaxSetOptions {
  int samples = 0;
  int refine_iters = 40;
  double tol_max_rel = 1e-6;
  int cluster_cap = 64;
  int max_arc_width = 3;  // in sample spacings
};

inline MaxSetVerdict max_modulus_set(const LaurentSeries& f, double r,
                                     const MaxSetOptions& opt = {}) {
  require(!f.is_zero(), errc::undefined, "max-modulus set undefined for f == 0");
  const int m = opt.samples > 0 ? opt.samples : default_samples(f.degree_bound());
  const SupResult sup = sup_on_circle(f, r, m, opt.refine_iters);
  std::vector<bool> near(static_cast<std::size_t>(m));
  int count = 0;
  for (int j = 0; j < m; ++j) {
    const double v = std::abs(eval(f, std::polar(r, kTwoPi * j / m)));
    near[static_cast<std::size_t>(j)] = v >= sup.value * (1.0 - opt.tol_max_rel);
    count += near[static_cast<std::size_t>(j)] ? 1 : 0;
  }
  MaxSetVerdict out;
  out.evidence = static_cast<double>(count) / m;
  if (count == m) {
    out.kind = MaxSetVerdict::Kind::full_circle;
    return out;
  }
  // group circularly adjacent near-max samples into arcs
  std::vector<std::pair<int, int>> arcs;  // [start, length]
  int j = 0;
  while (j < m && near[static_cast<std::size_t>(j)]) ++j;  // start outside an arc
  const int base = j;
  for (int step = 0; step < m; ++step) {
    const int idx = (base + step) % m;
    if (near[static_cast<std::size_t>(idx)]) {
      if (!arcs.empty() && (arcs.back().first + arcs.back().second) % m == idx)
        ++arcs.back().second;
      else
        arcs.push_back({idx, 1});
    }
  }
  bool narrow = true;
  for (const auto& arc : arcs) narrow = narrow && arc.second <= opt.max_arc_width;
  if (!arcs.empty() && static_cast<int>(arcs.size()) <= opt.cluster_cap && narrow) {
    out.kind = MaxSetVerdict::Kind::finite;
    for (const auto& arc : arcs) {
      const int mid = arc.first + (arc.second - 1) / 2;
      out.cluster_angles.push_back(kTwoPi * (mid % m) / m);
    }
  }
  return out;
}

// Three-circle rotation characterisation: if f maps three circles r_j T
// into r_j T, then f(z) = c z with |c| = 1. The hypothesis is checked on
// samples; on success the conclusion is verified by coefficient inspection.
struct RotationTest {
  bool is_rotation = false;
  cplx c = 0.0;
  int witness_circle = 0;   // 1-based index of the violated circle
  cplx witness_point = 0.0;
  double deviation = 0.0;   // | |f(z)| - r | at the witness, or the
                            // structural defect when samples passed
  bool structural_failure = false;
};

inline RotationTest three_circle_rotation_test(const LaurentSeries& f, double r1, double r2,
                                               double r3, double tol = 1e-9, int samples = 0,
                                               double snap_tol = kZeroSnap) {
  require(r1 < r2 && r2 < r3, errc::domain, "radii must be strictly increasing");
  const double radii[3] = {r1, r2, r3};
  const int m = samples > 0 ? samples : default_samples(f.degree_bound());
  RotationTest out;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < m; ++i) {
      const cplx z = std::polar(radii[j], kTwoPi * i / m);
      const double dev = std::abs(std::abs(eval(f, z)) - radii[j]);
      if (dev >= tol) {
        out.witness_circle = j + 1;
        out.witness_point = z;
        out.deviation = dev;
        return out;
      }
    }
  }
  // samples passed on every circle; the theorem then forces f = c e_1
  const auto idx = f.monomial_index(snap_tol);
  const cplx c = f.coeff(1);
  if (!idx || *idx != 1 || std::abs(std::abs(c) - 1.0) >= tol) {
    out.structural_failure = true;
    out.deviation = idx ? std::abs(std::abs(c) - 1.0) : f.max_abs_coeff();
    return out;
  }
  out.is_rotation = true;
  out.c = c;
  return out;
}

// CSV export of circle profiles for plotting.
inline void write_profile_csv(std::ostream& os, const LaurentSeries& f,
                              const std::vector<double>& radii, const ProfileOptions& opt = {}) {
  os << "radius,sup_modulus,log_radius,log_sup\n";
  for (double r : radii) {
    const CircleProfile p = circle_profile(f, r, opt);
    os << r << ',' << p.sup_modulus << ',' << std::log(r) << ',' << std::log(p.sup_modulus)
       << '\n';
  }
}

}  // namespace annulus
