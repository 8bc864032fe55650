#pragma once

#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "annulus/bigfloat.hpp"
#include "annulus/logspace.hpp"
#include "annulus/operators.hpp"

namespace annulus {

struct EigenPair {
  cplx lambda;
  LaurentSeries f;
};

// sigma(S) = sigma_p(S) = {alpha, -alpha} with infinite-dimensional
// eigenspaces; for T the spectrum is the cycle {alpha beta^k} when beta is
// a root of unity (infinite-dimensional eigenspaces) and the closure of the
// orbit sits inside T when beta is aperiodic (one-dimensional eigenspaces).
struct SpectrumDescription {
  enum class Kind { inversion_pair, root_of_unity_cycle, aperiodic_orbit };
  Kind kind = Kind::inversion_pair;
  cplx alpha = 1.0, beta = 1.0;
  int cycle_order = 0;                  // root-of-unity case
  std::vector<cplx> points;             // explicit set, or orbit representatives
  bool eigenspace_infinite = false;
  std::vector<EigenPair> witnesses;
  long aperiodicity_cutoff = 0;         // reported when the aperiodic claim was checked
};

struct SpectralOptions {
  double period_tol = 1e-12;
  long aperiodicity_cutoff = 1000000;
};

namespace detail {
inline double beta_power_distance_to_one(cplx beta, long n) {
  const cplx p = std::polar(1.0, std::arg(beta) * static_cast<double>(n));
  return std::abs(p - 1.0);
}
}  // namespace detail

inline SpectrumDescription spectrum(const WeightedComposition& op,
                                    std::optional<long> n_root = std::nullopt,
                                    const SpectralOptions& opt = {}) {
  SpectrumDescription out;
  out.alpha = op.alpha();
  out.beta = op.beta();
  const cplx a = op.alpha();
  const cplx b = op.beta();

  if (op.kind() == CompositionKind::inversion) {
    out.kind = SpectrumDescription::Kind::inversion_pair;
    out.points = {a, -a};
    out.eigenspace_infinite = true;
    for (int k = 1; k <= 3; ++k) {
      const cplx bk = op.beta_power(k);
      LaurentSeries plus = LaurentSeries::monomial(k) + bk * LaurentSeries::monomial(-k);
      LaurentSeries minus = LaurentSeries::monomial(k) - bk * LaurentSeries::monomial(-k);
      out.witnesses.push_back({a, plus});
      out.witnesses.push_back({-a, minus});
    }
    return out;
  }

  if (n_root) {
    const long n = *n_root;
    require(n >= 1, errc::domain, "claimed period must be positive");
    require(detail::beta_power_distance_to_one(b, n) <= opt.period_tol,
            errc::inconsistent_period_claim, "beta^n differs from 1 beyond tolerance");
    for (long m = 1; m < n; ++m)
      if (n % m == 0)
        require(detail::beta_power_distance_to_one(b, m) > opt.period_tol,
                errc::inconsistent_period_claim, "a smaller period divides the claimed one");
    out.kind = SpectrumDescription::Kind::root_of_unity_cycle;
    out.cycle_order = static_cast<int>(n);
    out.eigenspace_infinite = true;
    for (long k = 0; k < n; ++k) {
      const cplx lambda = a * op.beta_power(static_cast<int>(k));
      out.points.push_back(lambda);
      out.witnesses.push_back({lambda, LaurentSeries::monomial(static_cast<int>(k))});
      // e_{k+n l} shares the eigenvalue: the infinite-dimension witness
      out.witnesses.push_back({lambda, LaurentSeries::monomial(static_cast<int>(k + n))});
    }
    return out;
  }

  // aperiodic claim: beta^n != 1 for all n up to the cutoff, which is the
  // honest numerical rendering of the exact dichotomy
  const double theta = std::arg(b) / kTwoPi;
  const double dist_tol = std::asin(std::min(1.0, opt.period_tol / 2.0)) / kPi;
  double t = 0.0;
  for (long n = 1; n <= opt.aperiodicity_cutoff; ++n) {
    t += theta;
    t -= std::floor(t);
    const double dist = std::min(t, 1.0 - t);
    require(dist > dist_tol, errc::inconsistent_period_claim,
            "beta has a period within the aperiodicity cutoff");
  }
  out.kind = SpectrumDescription::Kind::aperiodic_orbit;
  out.eigenspace_infinite = false;
  out.aperiodicity_cutoff = opt.aperiodicity_cutoff;
  for (int k = -8; k <= 8; ++k) {
    const cplx lambda = a * op.beta_power(k);
    out.points.push_back(lambda);
    out.witnesses.push_back({lambda, LaurentSeries::monomial(k)});
  }
  return out;
}

// || op f - lambda f ||_{inf,2} / || f ||_{inf,2}
inline double eigenvector_check(const WeightedComposition& op, cplx lambda,
                                const LaurentSeries& f,
                                const AnnulusDomain& dom = AnnulusDomain(2.0)) {
  require(!f.is_zero(), errc::zero_function, "eigenvector candidate is identically zero");
  const LaurentSeries residual = apply(op, f) - scale(f, lambda);
  return seminorm(residual, dom, 2) / seminorm(f, dom, 2);
}

struct ResolventResult {
  LaurentSeries f{0};
  double min_divisor = 0.0;
  int min_index = 0;
  double verify_residual = 0.0;  // max_k |((T - lambda) f - g)_k|
};

// Coefficientwise solve of (T_{a,b} - lambda) f = g: a_k = b_k/(a b^k - lambda).
// Refuses rather than amplifies: a divisor at or below div_tol raises
// SmallDivisor naming the offending index.
inline ResolventResult resolvent_solve(const WeightedComposition& op, cplx lambda,
                                       const LaurentSeries& g, double div_tol = 1e-12) {
  require(op.kind() == CompositionKind::rotation, errc::domain,
          "resolvent solve is for rotation operators");
  ResolventResult out;
  out.min_divisor = std::numeric_limits<double>::infinity();
  LaurentSeries f(g.degree_bound(), g.inner_radius(), g.outer_radius());
  for (int k = -g.degree_bound(); k <= g.degree_bound(); ++k) {
    const cplx d = op.alpha() * op.beta_power(k) - lambda;
    if (std::abs(d) < out.min_divisor) {
      out.min_divisor = std::abs(d);
      out.min_index = k;
    }
    if (std::abs(d) <= div_tol)
      throw small_divisor_error(k, "divisor vanishes at index " + std::to_string(k));
    f.set_coeff(k, g.coeff(k) / d);
  }
  out.f = f;
  out.verify_residual = coeff_distance(apply(op, f) - scale(f, lambda), g);
  return out;
}

// Small-divisor profile for lambda = e^{2 pi i p0/q0} against the orbit of
// beta = e^{2 pi i xi}: gap_value(k) = |beta^k - lambda|^{-1/k}, its running
// max envelope, and (with caller-supplied Diophantine data (gamma, tau))
// the certified comparison against c k^{tau-1}, c = q0^tau / (4 gamma).
struct GapProfile {
  std::vector<long> k_values;
  std::vector<double> divisors;    // |beta^k - lambda|
  std::vector<double> gap_values;  // |beta^k - lambda|^{-1/k}
  std::vector<double> envelope;    // running maximum of gap_values
  std::vector<double> bounds;      // (c k^{tau-1})^{1/k}, when certified
  bool has_certificate = false;
  bool certificate_ok = false;   // 1/divisor <= c k^{tau-1} for every k
  bool sine_bound_ok = false;    // divisor >= 4 dist(xi k - r, Z) for every k
  long envelope_argmax = 0;
  double envelope_max = 0.0;
  double final_value = 0.0;
  double bracket_lo = 0.0;  // 2^{-1/K} <= liminf
  double bracket_hi = 0.0;  // max gap value over the tail window
};

struct DiophantineOptions {
  std::optional<std::pair<double, double>> gamma_tau;  // (gamma, tau)
  long tail_window_divisor = 2;  // bracket_hi over k in [K/2, K]
};

inline GapProfile diophantine_gap_profile(const BigFloat& xi, long p0, long q0, long K,
                                          const DiophantineOptions& opt = {}) {
  require(q0 >= 1 && p0 % q0 != 0, errc::domain,
          "r = p0/q0 must be rational and not an integer");
  require(K >= 10, errc::domain, "profile needs K >= 10");
  const mpfr_prec_t prec = xi.precision();
  const BigFloat r = BigFloat(p0, prec) / BigFloat(q0, prec);
  const BigFloat pi = BigFloat::pi(prec);
  const BigFloat two(2.0, prec);
  const long min_exp = -static_cast<long>(prec) + 32;

  GapProfile out;
  out.k_values.reserve(static_cast<std::size_t>(K));
  out.sine_bound_ok = true;
  double c = 0.0, tau = 0.0;
  if (opt.gamma_tau) {
    std::tie(c, tau) = *opt.gamma_tau;  // c temporarily holds gamma
    c = std::pow(static_cast<double>(q0), tau) / (4.0 * c);
    out.has_certificate = true;
    out.certificate_ok = true;
  }

  double env = 0.0;
  for (long k = 1; k <= K; ++k) {
    BigFloat m = BigFloat(k, prec) * xi - r;
    m = m - round_nearest(m);
    BigFloat d = abs(m, MPFR_RNDN);
    require(!d.is_zero() && d.exponent() > min_exp, errc::precision_exhausted,
            "divisor at k=" + std::to_string(k) + " underflows the working precision");
    const BigFloat gap = two * sin(pi * d, MPFR_RNDN);
    require(!gap.is_zero() && gap.exponent() > min_exp, errc::precision_exhausted,
            "gap underflows the working precision");
    const BigFloat value = exp(-(log(gap, MPFR_RNDN) / BigFloat(k, prec)), MPFR_RNDN);

    const double gap_d = gap.to_double();
    const double value_d = value.to_double();
    out.k_values.push_back(k);
    out.divisors.push_back(gap_d);
    out.gap_values.push_back(value_d);
    if (value_d > env) {
      env = value_d;
      out.envelope_argmax = k;
      out.envelope_max = value_d;
    }
    out.envelope.push_back(env);
    // concavity of sine on [0, pi/2]: |beta^k - lambda| >= 4 |xi k - r - p|
    if (gap < BigFloat(4.0, prec) * d * BigFloat(1.0 - 1e-12, prec)) out.sine_bound_ok = false;
    if (out.has_certificate) {
      const double bound = c * std::pow(static_cast<double>(k), tau - 1.0);
      out.bounds.push_back(std::pow(bound, 1.0 / static_cast<double>(k)));
      if (BigFloat(bound, prec) * gap < BigFloat(1.0, prec)) out.certificate_ok = false;
    }
    out.final_value = value_d;
  }
  out.bracket_lo = std::pow(2.0, -1.0 / static_cast<double>(K));
  out.bracket_hi = 0.0;
  for (long k = K / opt.tail_window_divisor; k <= K; ++k)
    out.bracket_hi = std::max(out.bracket_hi, out.gap_values[static_cast<std::size_t>(k - 1)]);
  return out;
}

// --- Liouville fast-growth construction: p_1 = 1, p_{n+1} = 2^{n^{p_n}} ---

struct LiouvilleEntry {
  int n = 0;
  LogValue p;                      // p_n
  std::optional<LogValue> q;       // q_n with p_n = 2^{q_n}; empty means q_1 = 0
  LogValue eps_inv_lo, eps_inv_hi; // eps_n in [1/eps_inv_hi, 1/eps_inv_lo]
  bool ratio_integer_ok = false;   // p_{n+1}/p_n in N
  bool ratio_bound_ok = false;     // p_{n+1}/p_n >= 2^{n-1}
  bool power_bound_ok = false;     // p_{n+1} >= p_n^{n+1}
  bool liouville_witness_ok = false;  // eps_n <= 1/p_n^n
};

namespace detail {
inline LogValue pow_small(const LogValue& x, int k) {
  LogValue acc = x;
  for (int i = 1; i < k; ++i) acc = mul_values(acc, x);
  return acc;
}
}  // namespace detail

// Exact integers while representable, log2 towers beyond; every inequality
// of the construction is re-verified with certified arithmetic.
inline std::vector<LiouvilleEntry> liouville_sequence(int N) {
  require(N >= 2 && N <= 8, errc::domain, "sequence supported for 2 <= N <= 8");
  std::vector<LogValue> p;  // p[i] is p_{i+1}
  std::vector<std::optional<LogValue>> q;
  p.push_back(LogValue::exact(1));
  q.push_back(std::nullopt);  // q_1 = 0
  for (int n = 1; n <= N; ++n) {
    // q_{n+1} = n^{p_n}
    const LogValue qn1 = n == 1 ? LogValue::exact(1)
                                : int_pow(static_cast<std::uint64_t>(n), p.back());
    q.push_back(qn1);
    p.push_back(pow2(qn1).tagged_integer());
  }

  std::vector<LiouvilleEntry> out;
  for (int n = 1; n <= N; ++n) {
    LiouvilleEntry e;
    e.n = n;
    e.p = p[static_cast<std::size_t>(n - 1)];
    e.q = q[static_cast<std::size_t>(n - 1)];
    const LogValue& pn = e.p;
    const LogValue& pn1 = p[static_cast<std::size_t>(n)];
    // eps_n = sum_{k > n} 1/p_k in [1/p_{n+1}, 2/p_{n+1}]
    e.eps_inv_hi = pn1;
    e.eps_inv_lo = div_values(pn1, LogValue::exact(2));
    e.ratio_integer_ok = certainly_geq(pn1, pn) && pn1.integer_certified();
    e.ratio_bound_ok =
        certainly_geq(pn1, mul_values(pn, LogValue::exact(std::uint64_t(1) << (n - 1))));
    e.power_bound_ok = certainly_geq(pn1, detail::pow_small(pn, n + 1));
    e.liouville_witness_ok =
        certainly_geq(pn1, mul_values(LogValue::exact(2), detail::pow_small(pn, n)));
    out.push_back(std::move(e));
  }
  return out;
}

struct LiouvilleGrowth {
  int n = 0;
  LogValue divisor_neg_log;   // -ln|1 + beta^{p_n}|, certified interval
  LogValue growth_exponent;   // (1/p_n) ln|c_n|, certified interval
  double divisor_direct = 0.0;  // n = 2 only: direct evaluation of |1 + beta^{p_n}|
};

// Certified log-space bounds for the divisor collapse at lambda = -1:
// |1 + beta^{p_n}| = 2 sin(pi s_n / 2) with s_n = sum_{k>n} p_n/p_k bracketed
// by its first term and the geometric tail bound. The growth exponent
// (1/p_n) ln|c_n| then diverges, which is the coefficient-radius collapse
// putting -1 into the spectrum while it never becomes an eigenvalue.
inline LiouvilleGrowth liouville_growth(int n, mpfr_prec_t prec = 256) {
  require(n >= 2, errc::domain, "growth bounds start at n = 2");
  require(n <= 7, errc::domain, "growth bounds supported for n <= 7");
  std::vector<LogValue> p;
  p.push_back(LogValue::exact(1));
  for (int i = 1; i <= n + 1; ++i) {
    const LogValue qn1 =
        i == 1 ? LogValue::exact(1) : int_pow(static_cast<std::uint64_t>(i), p.back());
    p.push_back(pow2(qn1).tagged_integer());
  }
  const LogValue& pn = p[static_cast<std::size_t>(n - 1)];
  const LogValue& pn1 = p[static_cast<std::size_t>(n)];

  LiouvilleGrowth out;
  out.n = n;
  const BigFloat two(2.0, prec);
  if (n == 2) {
    // s_2 = p_2/p_3 + p_2/p_4 + tail with tail <= (p_2/p_4)/4 by the ratio
    // bounds; every term is representable, so the bracket is sharp
    const LogValue& p4 = p[3];
    const BigFloat t3 = div(BigFloat(2.0, prec), BigFloat(16.0, prec), MPFR_RNDN);  // exact
    const BigInterval t4(div(two, p4.top().hi, MPFR_RNDD), div(two, p4.top().lo, MPFR_RNDU));
    const BigInterval s(add(t3, t4.lo, MPFR_RNDD),
                        add(t3, mul(t4.hi, BigFloat(1.25, prec), MPFR_RNDU), MPFR_RNDU));
    const BigInterval pi_i(BigFloat::pi(prec, MPFR_RNDD), BigFloat::pi(prec, MPFR_RNDU));
    const BigInterval gap(
        mul(two, sin(mul(div(s.lo, two, MPFR_RNDD), pi_i.lo, MPFR_RNDD), MPFR_RNDD), MPFR_RNDD),
        mul(two, sin(mul(div(s.hi, two, MPFR_RNDU), pi_i.hi, MPFR_RNDU), MPFR_RNDU), MPFR_RNDU));
    out.divisor_direct = gap.lo.to_double();
    const BigInterval neg_log(neg(log(gap.hi, MPFR_RNDU), MPFR_RNDN),
                              neg(log(gap.lo, MPFR_RNDD), MPFR_RNDN));
    out.divisor_neg_log = LogValue::from_interval(neg_log);
    out.growth_exponent = div_values(out.divisor_neg_log, pn);
    return out;
  }

  // s_n in [t, t (1 + 2^{1-n})], t = p_n/p_{n+1} = 2^{-D}; with the
  // concavity and |sin x| <= x bounds, 2 s <= |1 + beta^{p_n}| <= pi s:
  //   D ln 2 - ln(pi (1 + 2^{1-n})) <= -ln|1 + beta^{p_n}| <= D ln 2 - ln 2
  const double slack = 1.0 + std::pow(2.0, 1.0 - n);  // exact in binary
  const LogValue inv_t = div_values(pn1, pn);         // 2^{D}
  const BigInterval ln2_i(log(two, MPFR_RNDD), log(two, MPFR_RNDU));
  const LogValue ln_inv_t = mul_values(log2_of(inv_t), LogValue::from_interval(ln2_i));
  const BigInterval ln_pi_slack(
      log(mul(BigFloat::pi(prec, MPFR_RNDD), BigFloat(slack, prec), MPFR_RNDD), MPFR_RNDD),
      log(mul(BigFloat::pi(prec, MPFR_RNDU), BigFloat(slack, prec), MPFR_RNDU), MPFR_RNDU));
  const LogValue lower = sub_values(ln_inv_t, LogValue::from_interval(ln_pi_slack));
  const LogValue upper = sub_values(ln_inv_t, LogValue::from_interval(ln2_i));
  out.divisor_neg_log = hull_values(lower, upper);
  out.growth_exponent = div_values(out.divisor_neg_log, pn);
  return out;
}

}  // namespace annulus
