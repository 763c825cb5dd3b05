#pragma once

#include <cstdint>
#include <random>

#include "qrc/types.hpp"

namespace qrc {

// Seeded generator with hand-rolled distributions so that streams are
// bit-identical across standard libraries (std::normal_distribution is
// implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n).
  int uniform_int(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }

  // Standard normal via Box-Muller.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Complex standard normal, E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) / std::sqrt(2.0);
  }

  // Matrix with i.i.d. complex standard normal entries.
  CMat ginibre(int rows, int cols) {
    CMat g(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) g(i, j) = complex_normal();
    return g;
  }

  // Random Hermitian matrix, GUE-like scaling with O(1) spectral range.
  CMat hermitian(int dim) {
    CMat g = ginibre(dim, dim);
    return (g + g.adjoint()) / (2.0 * std::sqrt(static_cast<double>(dim)));
  }

  // Haar-random pure state vector.
  CVec haar_state(int dim) {
    CVec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = complex_normal();
    return v / v.norm();
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace qrc
