#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace annulus {

// Deterministic random source. Doubles are derived from the raw 64-bit
// stream directly so that streams are reproducible independent of the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // integer in [0, n)
  std::uint64_t index(std::uint64_t n) { return gen_() % n; }

  std::complex<double> unit_disc(double scale = 1.0) {
    const double r = scale * std::sqrt(uniform());
    return std::polar(r, uniform(0.0, 6.283185307179586476925286766559));
  }

  std::complex<double> unimodular() {
    return std::polar(1.0, uniform(0.0, 6.283185307179586476925286766559));
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace annulus
