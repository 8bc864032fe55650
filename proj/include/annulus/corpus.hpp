#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "annulus/rng.hpp"
#include "annulus/serialization.hpp"

namespace annulus {

// Deterministic fixture generators used by both the test suites and the
// `corpus` subcommand. Everything flows from one seed.

inline LaurentSeries random_laurent(Rng& rng, int degree, double scale = 1.0) {
  LaurentSeries f(degree, kDefaultInner, kDefaultOuter);
  for (int k = -degree; k <= degree; ++k) f.set_coeff(k, rng.unit_disc(scale));
  return f;
}

inline WeightedComposition random_composition(Rng& rng, CompositionKind kind) {
  return {kind, rng.unimodular(), rng.unimodular()};
}

// Blaschke factor (z - a)/(1 - conj(a) z), |a| < 1, as its Taylor series:
// c_0 = -a, c_m = conj(a)^{m-1} (1 - |a|^2). Truncation at `degree` is
// honest out to `outer` when |conj(a) outer|^degree is negligible.
inline LaurentSeries blaschke_series(cplx a, int degree = 200, double outer = 1.75) {
  require(std::abs(a) < 1.0, errc::domain, "Blaschke parameter must lie in the unit disc");
  LaurentSeries f(degree, kDefaultInner, outer);
  f.set_coeff(0, -a);
  cplx pw = 1.0;  // conj(a)^{m-1}
  const double norm = 1.0 - std::norm(a);
  for (int m = 1; m <= degree; ++m) {
    f.set_coeff(m, pw * norm);
    pw *= std::conj(a);
  }
  return f;
}

// exp(z - 1/z), unimodular on T and analytic on C*; the coefficients are
// the Bessel values J_k(2), recovered here by two-circle sampling.
inline LaurentSeries exp_z_minus_inv_series(int degree = 64) {
  auto fn = [](cplx z) { return std::exp(z - 1.0 / z); };
  const int m = next_pow2(8 * (2 * degree + 1));
  return recover_from_function(fn, degree, 1.0, 1.25, m, 0.125, 4.0).snapped();
}

struct UnimodularFixture {
  LaurentSeries f{0};       // z^n exp(h_plus - reflect(h_plus))
  LaurentSeries h_plus{0};  // canonical analytic part (imaginary constant term)
  int winding = 0;
};

// Forward synthesis of a function unimodular on T: draw a polynomial h_+
// of the given degree with coefficients in scale * unit disc (constant
// term purely imaginary so the canonical split reproduces it), then
// f = z^n exp(h_+) / reflect-conjugate(exp(h_+)) through exact one-sided
// recurrences. exp_degree is sized so that even adversarial draws keep the
// truncation tail negligible out to the fixture's validity radius.
inline UnimodularFixture synth_unimodular(Rng& rng, int winding_range = 5, int h_degree = 8,
                                          double scale = 0.3, int exp_degree = 512,
                                          double validity = 1.2) {
  UnimodularFixture out;
  out.winding = static_cast<int>(rng.index(2 * winding_range + 1)) - winding_range;
  LaurentSeries h(h_degree, kDefaultInner, kDefaultOuter);
  h.set_coeff(0, cplx(0.0, rng.uniform(-scale, scale)));
  for (int k = 1; k <= h_degree; ++k) h.set_coeff(k, rng.unit_disc(scale));
  out.h_plus = h;

  const LaurentSeries g0 = exp_one_sided(h, exp_degree);
  const LaurentSeries g0_inv = exp_one_sided(scale(h, -1.0), exp_degree);
  LaurentSeries f = multiply(g0, reflect(g0_inv));
  f = shifted(f, out.winding);

  // truncate where coefficients stop mattering at the validity radius
  int need = 1;
  for (int k = -f.degree_bound(); k <= f.degree_bound(); ++k)
    if (std::abs(f.coeff(k)) * std::pow(validity, std::abs(k)) > 1e-15)
      need = std::max(need, std::abs(k));
  out.f = f.with_degree(need).with_annulus(1.0 / validity, validity);
  return out;
}

struct CorpusConfig {
  std::uint64_t seed = 42;
  double R = 2.0;
  int N = 64;
  int polynomials = 20;
  int rotations = 10;
  int inversions = 10;
  int perturbations = 10;
  int unimodular = 10;
  int matrix_degree = 16;
  double perturbation_eps = 1e-3;
};

// Writes the deterministic fixture set: random Laurent polynomials,
// forward-built operator matrices (rotations, inversions, perturbations,
// dilation, differentiation), synthesized unimodular functions, and the
// named examples (Blaschke a = 0.5, exp(z - 1/z), monomials). A manifest
// records expected labels for round-trip checks.
inline void write_corpus(const std::string& dir, const CorpusConfig& cfg = {}) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  Rng rng(cfg.seed);
  json manifest;
  manifest["seed"] = cfg.seed;
  manifest["R"] = cfg.R;
  manifest["N"] = cfg.N;
  json files = json::array();

  auto emit = [&](const std::string& name, const json& payload, const std::string& tag,
                  const json& extra = json::object()) {
    write_text_file((fs::path(dir) / name).string(), payload.dump(2) + "\n");
    json entry{{"file", name}, {"tag", tag}};
    for (const auto& [k, v] : extra.items()) entry[k] = v;
    files.push_back(entry);
  };

  char name[128];
  for (int i = 0; i < cfg.polynomials; ++i) {
    std::snprintf(name, sizeof name, "poly_%03d.json", i);
    emit(name, to_json(random_laurent(rng, cfg.N / 4)), "polynomial");
  }
  for (int i = 0; i < cfg.rotations; ++i) {
    const WeightedComposition op = random_composition(rng, CompositionKind::rotation);
    std::snprintf(name, sizeof name, "op_rot_%03d.json", i);
    emit(name, to_json(OperatorMatrix::from_operator(op, cfg.matrix_degree)), "Rotation",
         json{{"alpha", to_json(op.alpha())}, {"beta", to_json(op.beta())}});
  }
  for (int i = 0; i < cfg.inversions; ++i) {
    const WeightedComposition op = random_composition(rng, CompositionKind::inversion);
    std::snprintf(name, sizeof name, "op_inv_%03d.json", i);
    emit(name, to_json(OperatorMatrix::from_operator(op, cfg.matrix_degree)), "Inversion",
         json{{"alpha", to_json(op.alpha())}, {"beta", to_json(op.beta())}});
  }
  for (int i = 0; i < cfg.perturbations; ++i) {
    const WeightedComposition op = random_composition(
        rng, i % 2 == 0 ? CompositionKind::rotation : CompositionKind::inversion);
    OperatorMatrix m = OperatorMatrix::from_operator(op, cfg.matrix_degree);
    for (int r = -cfg.matrix_degree; r <= cfg.matrix_degree; ++r)
      for (int c = -cfg.matrix_degree; c <= cfg.matrix_degree; ++c)
        m.set(r, c, m.at(r, c) + cfg.perturbation_eps * rng.unit_disc());
    std::snprintf(name, sizeof name, "op_pert_%03d.json", i);
    emit(name, to_json(m), "NotIsometry");
  }
  emit("op_dilation.json", to_json(OperatorMatrix::dilation(0.9, cfg.matrix_degree)),
       "NotIsometry");
  emit("op_diff.json", to_json(OperatorMatrix::differentiation(cfg.matrix_degree)),
       "NotIsometry");
  for (int i = 0; i < cfg.unimodular; ++i) {
    const UnimodularFixture fx = synth_unimodular(rng);
    std::snprintf(name, sizeof name, "uni_%03d.json", i);
    emit(name, to_json(fx.f), "unimodular", json{{"winding", fx.winding}});
  }
  emit("blaschke.json", to_json(blaschke_series(cplx(0.5, 0.0))), "unimodular",
       json{{"winding", 1}});
  emit("exp_zminv.json", to_json(exp_z_minus_inv_series()), "unimodular", json{{"winding", 0}});
  for (int k : {-3, 0, 2, 5}) {
    std::snprintf(name, sizeof name, "monomial_%s%d.json", k < 0 ? "m" : "p", std::abs(k));
    emit(name, to_json(LaurentSeries::monomial(k)), "monomial", json{{"k", k}});
  }

  manifest["files"] = files;
  write_text_file((fs::path(dir) / "manifest.json").string(), manifest.dump(2) + "\n");
}

}  // namespace annulus
