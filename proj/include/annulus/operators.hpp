#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <string>

#include "annulus/domain.hpp"
#include "annulus/rng.hpp"

namespace annulus {

enum class CompositionKind { rotation, inversion };

inline const char* kind_name(CompositionKind k) {
  return k == CompositionKind::rotation ? "Rotation" : "Inversion";
}

// T_{a,b} f(z) = a f(b z)  (rotation)   S_{a,b} f(z) = a f(b / z)  (inversion)
// with |a| = |b| = 1, enforced at construction.
class WeightedComposition {
 public:
  WeightedComposition(CompositionKind kind, cplx alpha, cplx beta, double tol = 1e-12)
      : kind_(kind), alpha_(alpha), beta_(beta) {
    require(std::abs(std::abs(alpha) - 1.0) < tol, errc::domain, "alpha must be unimodular");
    require(std::abs(std::abs(beta) - 1.0) < tol, errc::domain, "beta must be unimodular");
  }

  CompositionKind kind() const { return kind_; }
  cplx alpha() const { return alpha_; }
  cplx beta() const { return beta_; }

  // beta^k through the polar form, so large |k| keeps unit modulus.
  cplx beta_power(int k) const {
    return std::polar(std::pow(std::abs(beta_), k), std::arg(beta_) * k);
  }

 private:
  CompositionKind kind_;
  cplx alpha_, beta_;
};

// Exact coefficient action: rotation sends a_k to a b^k a_k at index k,
// inversion sends it to index -k.
inline LaurentSeries apply(const WeightedComposition& op, const LaurentSeries& f) {
  LaurentSeries out(f.degree_bound(), f.inner_radius(), f.outer_radius());
  for (int k = -f.degree_bound(); k <= f.degree_bound(); ++k) {
    const cplx v = op.alpha() * op.beta_power(k) * f.coeff(k);
    out.set_coeff(op.kind() == CompositionKind::rotation ? k : -k, v);
  }
  return out;
}

inline WeightedComposition compose(const WeightedComposition& a, const WeightedComposition& b) {
  require(a.kind() == CompositionKind::rotation && b.kind() == CompositionKind::rotation,
          errc::domain, "compose implemented for rotations");
  return {CompositionKind::rotation, a.alpha() * b.alpha(), a.beta() * b.beta()};
}

// A general continuous linear operator modelled on the truncated Laurent
// basis e_{-N}..e_N. The matrix is trusted only on inputs of degree
// <= trusted(); columns beyond that carry truncation artefacts.
class OperatorMatrix {
 public:
  explicit OperatorMatrix(int degree_bound)
      : n_(degree_bound),
        trusted_(std::max(1, degree_bound / 2)),
        entries_(Eigen::MatrixXcd::Zero(dim(), dim())) {
    require(degree_bound >= 1, errc::domain, "matrix degree bound must be >= 1");
  }

  int degree_bound() const { return n_; }
  int dim() const { return 2 * n_ + 1; }
  int trusted() const { return trusted_; }
  void set_trusted(int t) {
    require(t >= 1 && t <= n_, errc::domain, "trusted range out of bounds");
    trusted_ = t;
  }

  cplx at(int row, int col) const { return entries_(row + n_, col + n_); }
  void set(int row, int col, cplx v) { entries_(row + n_, col + n_) = v; }

  Eigen::MatrixXcd& raw() { return entries_; }
  const Eigen::MatrixXcd& raw() const { return entries_; }

  static OperatorMatrix identity(int degree_bound) {
    OperatorMatrix m(degree_bound);
    m.entries_.setIdentity();
    return m;
  }

  static OperatorMatrix from_operator(const WeightedComposition& op, int degree_bound) {
    OperatorMatrix m(degree_bound);
    for (int k = -degree_bound; k <= degree_bound; ++k) {
      const cplx v = op.alpha() * op.beta_power(k);
      m.set(op.kind() == CompositionKind::rotation ? k : -k, k, v);
    }
    return m;
  }

  // f -> f' (top coefficient is lost to the truncation, as with any matrix
  // model of an unbounded-degree map)
  static OperatorMatrix differentiation(int degree_bound) {
    OperatorMatrix m(degree_bound);
    for (int k = -degree_bound; k <= degree_bound; ++k)
      if (k != 0 && std::abs(k - 1) <= degree_bound)
        m.set(k - 1, k, static_cast<double>(k));
    return m;
  }

  // f -> f(rho z)
  static OperatorMatrix dilation(double rho, int degree_bound) {
    OperatorMatrix m(degree_bound);
    for (int k = -degree_bound; k <= degree_bound; ++k) m.set(k, k, std::pow(rho, k));
    return m;
  }

  LaurentSeries column(int k) const {
    require(std::abs(k) <= n_, errc::domain, "column index out of range");
    LaurentSeries out(n_, kDefaultInner, kDefaultOuter);
    for (int row = -n_; row <= n_; ++row) out.set_coeff(row, at(row, k));
    return out;
  }

  LaurentSeries apply(const LaurentSeries& f) const {
    require(f.degree_bound() <= n_, errc::truncation,
            "input degree exceeds the matrix basis range");
    Eigen::VectorXcd v(dim());
    for (int k = -n_; k <= n_; ++k) v(k + n_) = f.coeff(k);
    const Eigen::VectorXcd w = entries_ * v;
    LaurentSeries out(n_, f.inner_radius(), f.outer_radius());
    for (int k = -n_; k <= n_; ++k) out.set_coeff(k, w(k + n_));
    return out;
  }

 private:
  int n_;
  int trusted_;
  Eigen::MatrixXcd entries_;
};

// 1/f recovered by sampling the reciprocal on the unit circle. Requires f
// to stay away from zero there.
inline LaurentSeries invert_on_circle(const LaurentSeries& f, int degree_bound,
                                      double vanish_tol = 1e-8) {
  const int m = next_pow2(8 * (2 * degree_bound + 1));
  const CircleSamples s = sample_circle(f, 1.0, m);
  for (const cplx& v : s.values)
    require(std::abs(v) > vanish_tol, errc::symbol_not_invertible,
            "function nearly vanishes on the unit circle");
  CircleSamples inv;
  inv.radius = 1.0;
  inv.values.reserve(s.values.size());
  for (const cplx& v : s.values) inv.values.push_back(1.0 / v);
  return from_circle_samples(inv, degree_bound, f.inner_radius(), f.outer_radius());
}

// Algebraic composition-operator test: T is a composition operator iff
// T e_0 = e_0 and T e_n = (T e_1)^n for all n. Positive powers are checked
// first, then the constant, then negative powers (which need the symbol to
// be invertible on the annulus).
struct CompositionTestResult {
  bool is_composition = false;
  LaurentSeries symbol{0};
  std::optional<int> first_failing_n;
  double deviation = 0.0;
};

inline CompositionTestResult composition_operator_test(const OperatorMatrix& m, int n_max,
                                                       double tol = 1e-9) {
  require(n_max >= 1 && n_max <= m.trusted(), errc::truncation,
          "n_max must lie within the trusted basis range");
  CompositionTestResult out;
  const LaurentSeries phi = m.column(1).compressed();
  out.symbol = phi;

  auto check = [&](int n, const LaurentSeries& expected) {
    const double dev = coeff_distance(m.column(n), expected);
    if (dev > tol) {
      out.first_failing_n = n;
      out.deviation = dev;
      return false;
    }
    return true;
  };

  LaurentSeries phi_pow = phi;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) phi_pow = multiply(phi_pow, phi).compressed();
    if (!check(n, phi_pow)) return out;
  }
  if (!check(0, LaurentSeries::monomial(0))) return out;

  // negative powers: need 1/phi, which exists only for symbols bounded away
  // from zero on the annulus
  const LaurentSeries phi_inv = invert_on_circle(phi, std::max(phi.degree_bound(), 8));
  LaurentSeries inv_pow = phi_inv;
  for (int n = 1; n <= n_max; ++n) {
    if (n > 1) inv_pow = multiply(inv_pow, phi_inv).compressed();
    if (!check(-n, inv_pow.snapped())) return out;
  }
  out.is_composition = true;
  return out;
}

// Outcome of the isometry classifier, with a concrete witness on rejection:
// either a probe whose seminorm is not preserved or a basis column whose
// structure deviates from the predicted form.
struct ClassificationWitness {
  enum class Kind { probe, structural };
  Kind kind = Kind::structural;
  std::string description;
  int basis_index = 0;  // structural witnesses
  int level = 0;        // probe witnesses: seminorm level n
  double lhs = 0.0;     // ||T f||_{inf,n}
  double rhs = 0.0;     // ||f||_{inf,n}
};

struct ClassificationResult {
  enum class Verdict { rotation, inversion, not_isometry };
  Verdict verdict = Verdict::not_isometry;
  cplx alpha = 0.0;
  cplx beta = 0.0;
  std::optional<ClassificationWitness> witness;
};

// Classifier for the structure theorem "every seminorm isometry is a
// rotation T_{a,b} or an inversion S_{a,b}". At finite truncation the
// contract is: exact-form verification on the trusted basis range plus
// probe-based seminorm preservation; any failure yields a witness.
inline ClassificationResult isometry_classify(const OperatorMatrix& m, const AnnulusDomain& dom,
                                              int n_levels = 4, int probes = 12,
                                              double tol = 1e-8, std::uint64_t seed = 1) {
  require(n_levels >= 4, errc::domain, "the classification argument needs levels up to 4");
  require(m.trusted() >= 4, errc::truncation, "trusted basis range too small to classify");
  ClassificationResult out;

  auto structural = [&](int k, const std::string& what) {
    ClassificationWitness w;
    w.kind = ClassificationWitness::Kind::structural;
    w.basis_index = k;
    w.description = what;
    out.witness = w;
    return out;
  };

  // Step 1: T e_0 must be a unimodular constant.
  const LaurentSeries f0 = m.column(0).snapped(tol);
  const auto idx0 = f0.monomial_index(tol);
  if (!idx0 || *idx0 != 0)
    return structural(0, "T e_0 is not a constant");
  const cplx alpha = f0.coeff(0);
  if (std::abs(std::abs(alpha) - 1.0) > tol) {
    ClassificationWitness w;
    w.kind = ClassificationWitness::Kind::probe;
    w.description = "constants are not preserved in seminorm";
    w.level = 1;
    w.lhs = std::abs(alpha);
    w.rhs = 1.0;
    out.witness = w;
    return out;
  }

  // Step 2: T e_1 must be c e_1 or c e_-1 with |c| = 1; mixtures are
  // excluded by the structure theorem.
  const LaurentSeries f1 = m.column(1).snapped(tol);
  const auto idx1 = f1.monomial_index(tol);
  if (!idx1) return structural(1, "T e_1 mixes several basis directions");
  if (*idx1 != 1 && *idx1 != -1) return structural(1, "T e_1 lands on an unexpected power");
  const bool rotation = *idx1 == 1;
  const cplx c1 = f1.coeff(*idx1);
  if (std::abs(std::abs(c1) - 1.0) > tol)
    return structural(1, "coefficient of T e_1 is not unimodular");
  const cplx beta = c1 / alpha;

  // Step 3: coherence across the trusted range, T e_k = alpha beta^k e_{±k}.
  const WeightedComposition model(
      rotation ? CompositionKind::rotation : CompositionKind::inversion, alpha / std::abs(alpha),
      beta / std::abs(beta));
  for (int k = -m.trusted(); k <= m.trusted(); ++k) {
    const LaurentSeries expected =
        apply(model, LaurentSeries::monomial(k));
    const double dev = coeff_distance(m.column(k), expected);
    if (dev > tol)
      return structural(k, "basis action deviates from the predicted weighted composition");
  }

  // Step 4: seminorm preservation on random probe polynomials.
  Rng rng(seed);
  for (int p = 0; p < probes; ++p) {
    LaurentSeries probe(m.trusted(), kDefaultInner, kDefaultOuter);
    for (int k = -m.trusted(); k <= m.trusted(); ++k) probe.set_coeff(k, rng.unit_disc());
    const LaurentSeries image = m.apply(probe);
    for (int n = 1; n <= n_levels; ++n) {
      const double a = seminorm(image, dom, n);
      const double b = seminorm(probe, dom, n);
      if (std::abs(a - b) > tol * std::max(1.0, b)) {
        ClassificationWitness w;
        w.kind = ClassificationWitness::Kind::probe;
        w.description = "random probe seminorm not preserved";
        w.level = n;
        w.lhs = a;
        w.rhs = b;
        out.witness = w;
        return out;
      }
    }
  }

  out.verdict = rotation ? ClassificationResult::Verdict::rotation
                         : ClassificationResult::Verdict::inversion;
  out.alpha = alpha;
  out.beta = beta;
  return out;
}

// Cayley transform D -> right half-plane and its inverse.
inline cplx cayley(cplx z) { return (1.0 + z) / (1.0 - z); }
inline cplx cayley_inverse(cplx w) { return (w - 1.0) / (w + 1.0); }

// Evaluation of the half-plane isometry conjugated from T_{a,b}:
// V F (w) = a F( tau( b tau^{-1}(w) ) ), Re w > 0.
inline cplx cayley_conjugate_eval(cplx alpha, cplx beta,
                                  const std::function<cplx(cplx)>& half_plane_fn, cplx w) {
  require(std::abs(std::abs(alpha) - 1.0) < 1e-12 && std::abs(std::abs(beta) - 1.0) < 1e-12,
          errc::domain, "alpha and beta must be unimodular");
  require(w.real() > 0.0, errc::domain, "evaluation point must lie in the right half-plane");
  const cplx z = cayley_inverse(w);
  require(std::abs(z) < 1.0, errc::domain, "conjugated point left the unit disc");
  const cplx image = cayley(beta * z);
  require(image.real() > 0.0, errc::domain, "conjugated point left the half-plane");
  return alpha * half_plane_fn(image);
}

}  // namespace annulus
