#include <catch2/catch_amalgamated.hpp>

#include "annulus/laurent.hpp"
#include "annulus/rng.hpp"

using namespace annulus;

namespace {
LaurentSeries e(int k, cplx c = 1.0) { return LaurentSeries::monomial(k, c); }
}  // namespace

TEST_CASE("eval on monomials and small sums") {
  CHECK(std::abs(eval(e(3), cplx(2.0)) - cplx(8.0)) < 1e-14);
  CHECK(std::abs(eval(e(0), cplx(0.3, 0.7)) - cplx(1.0)) < 1e-14);
  // (e_1 + e_{-1}) at i: i + 1/i = 0
  CHECK(std::abs(eval(e(1) + e(-1), cplx(0.0, 1.0))) < 1e-14);
}

TEST_CASE("eval rejects points outside the validity annulus") {
  LaurentSeries f(4, 0.5, 2.0);
  f.set_coeff(1, 1.0);
  CHECK_THROWS_AS(eval(f, cplx(3.0)), error);
  CHECK_THROWS_AS(eval(f, cplx(0.1)), error);
  CHECK(eval(f, cplx(1.5)) == cplx(1.5));
}

TEST_CASE("multiply: inverse monomials, binomial square, annihilator") {
  CHECK(coeff_distance(multiply(e(2), e(-2)), e(0)) < 1e-15);
  const LaurentSeries sq = multiply(e(0) + e(1), e(0) + e(1));
  CHECK(std::abs(sq.coeff(0) - 1.0) < 1e-15);
  CHECK(std::abs(sq.coeff(1) - 2.0) < 1e-15);
  CHECK(std::abs(sq.coeff(2) - 1.0) < 1e-15);
  const LaurentSeries z = multiply(e(1) + e(-1), LaurentSeries::zero());
  CHECK(z.is_zero());
}

TEST_CASE("differentiate: monomials both ways") {
  CHECK(coeff_distance(differentiate(e(1)), e(0)) < 1e-15);
  CHECK(coeff_distance(differentiate(e(-1)), e(-2, -1.0)) < 1e-15);
  CHECK(differentiate(e(0)).is_zero());
}

TEST_CASE("product rule holds coefficientwise") {
  Rng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    LaurentSeries f(6), g(5);
    for (int k = -6; k <= 6; ++k) f.set_coeff(k, rng.unit_disc());
    for (int k = -5; k <= 5; ++k) g.set_coeff(k, rng.unit_disc());
    const LaurentSeries lhs = differentiate(multiply(f, g));
    const LaurentSeries rhs = multiply(differentiate(f), g) + multiply(f, differentiate(g));
    CHECK(coeff_distance(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("multiply is commutative and associative") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    LaurentSeries f(4), g(4), h(4);
    for (int k = -4; k <= 4; ++k) {
      f.set_coeff(k, rng.unit_disc());
      g.set_coeff(k, rng.unit_disc());
      h.set_coeff(k, rng.unit_disc());
    }
    CHECK(coeff_distance(multiply(f, g), multiply(g, f)) < 1e-10);
    CHECK(coeff_distance(multiply(multiply(f, g), h), multiply(f, multiply(g, h))) < 1e-10);
  }
}

TEST_CASE("eval is multiplicative on the common annulus") {
  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    LaurentSeries f(8), g(8);
    for (int k = -8; k <= 8; ++k) {
      f.set_coeff(k, rng.unit_disc());
      g.set_coeff(k, rng.unit_disc());
    }
    const cplx z = std::polar(rng.uniform(0.6, 1.6), rng.uniform(0.0, kTwoPi));
    const cplx lhs = eval(multiply(f, g), z);
    const cplx rhs = eval(f, z) * eval(g, z);
    CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("circle recovery: exact DFT of a harmonic") {
  const LaurentSeries f = e(5);
  const LaurentSeries back = from_circle_samples(sample_circle(f, 1.0, 64), 8);
  for (int k = -8; k <= 8; ++k)
    CHECK(std::abs(back.coeff(k) - (k == 5 ? cplx(1.0) : cplx(0.0))) < 1e-12);
}

TEST_CASE("circle recovery on r = 2 separates mixed indices") {
  const LaurentSeries f = e(0) + e(-3, 2.0);
  const LaurentSeries back = from_circle_samples(sample_circle(f, 2.0, 64), 5);
  CHECK(std::abs(back.coeff(0) - 1.0) < 1e-10);
  CHECK(std::abs(back.coeff(-3) - 2.0) < 1e-10);
  for (int k : {-5, -4, -2, -1, 1, 2, 3, 4, 5}) CHECK(std::abs(back.coeff(k)) < 1e-10);
}

TEST_CASE("circle recovery of the zero function is exactly zero") {
  const LaurentSeries back = from_circle_samples(sample_circle(LaurentSeries::zero(), 1.0, 64), 8);
  CHECK(back.is_zero());
}

TEST_CASE("recovery refuses undersampling and dynamic-range blowups") {
  CHECK_THROWS_AS(from_circle_samples(sample_circle(e(1), 1.0, 16), 8), error);
  try {
    from_circle_samples(sample_circle(e(1), 8.0, 2048), 64);
    FAIL("expected IllConditioned");
  } catch (const error& err) {
    CHECK(err.code() == errc::ill_conditioned);
  }
}

TEST_CASE("round trip through circle samples, r in {1, R_2}") {
  Rng rng(21);
  const double r2 = std::sqrt(2.0);  // R_2 for R = 2
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 32;
    LaurentSeries f(n);
    for (int k = -n; k <= n; ++k) f.set_coeff(k, rng.unit_disc());
    // on the unit circle the recovery is conditioning-free
    const LaurentSeries back1 = from_circle_samples(sample_circle(f, 1.0, default_samples(n)), n);
    CHECK(coeff_distance(back1, f) < 1e-13 * f.max_abs_coeff());
    // off the unit circle the error floor is r^N times the rounding of the
    // sampled data, so "relative" means relative to the data scale
    const CircleSamples s = sample_circle(f, r2, default_samples(n));
    double data_scale = 0.0;
    for (const cplx& v : s.values) data_scale = std::max(data_scale, std::abs(v));
    const LaurentSeries back2 = from_circle_samples(s, n);
    CHECK(coeff_distance(back2, f) < 1e-9 * data_scale);
  }
}

TEST_CASE("two-sided Horner matches direct summation away from 1") {
  LaurentSeries f(12);
  Rng rng(3);
  for (int k = -12; k <= 12; ++k) f.set_coeff(k, rng.unit_disc());
  const cplx z = std::polar(1.7, 0.9);
  cplx direct = 0.0;
  for (int k = -12; k <= 12; ++k) direct += f.coeff(k) * std::pow(z, k);
  CHECK(std::abs(eval(f, z) - direct) < 1e-11 * std::abs(direct));
}

TEST_CASE("monomial_index sees through snap noise") {
  LaurentSeries f = e(3, cplx(0.0, 2.0));
  f = f.with_degree(5);
  f.set_coeff(-2, 1e-16);
  CHECK(f.monomial_index() == 3);
  f.set_coeff(1, 0.5);
  CHECK(!f.monomial_index());
}
