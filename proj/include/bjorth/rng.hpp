#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bjorth/matrix.hpp"

namespace bjorth {

// Deterministic random source.  The engine (mt19937_64) is pinned by the C++
// standard; the value transforms below are hand-rolled because the standard
// library distributions are not bit-reproducible across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Standard normal via Box-Muller.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Standard complex normal (unit variance overall).
  cd cnormal() {
    const double re = normal();
    const double im = normal();
    return cd(re * 0.7071067811865475244, im * 0.7071067811865475244);
  }

  Matrix gaussian_matrix(std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }

  // Uniform unit vector in C^n.
  Matrix unit_vector(std::size_t n) {
    Matrix v = gaussian_matrix(n, 1);
    double nn = vnorm(v);
    while (nn < 1e-12) {
      v = gaussian_matrix(n, 1);
      nn = vnorm(v);
    }
    return v * cd(1.0 / nn, 0.0);
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Derives independent sub-stream seeds from one master seed (splitmix64 step).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace bjorth
