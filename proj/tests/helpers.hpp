#pragma once

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "rgsv/gsv.hpp"
#include "rgsv/matrix_core.hpp"

namespace rgsv::test {

using Scalars = ::testing::Types<double, std::complex<double>>;

/// Small deterministic case generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Index size(Index lo, Index hi) {
    return std::uniform_int_distribution<Index>(lo, hi)(rng_);
  }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  std::uint64_t seed() { return rng_(); }
  bool coin() { return (rng_() & 1u) != 0; }

 private:
  std::mt19937_64 rng_;
};

template <typename Scalar>
Matrix<Scalar> random_unitary(Index n, std::uint64_t seed) {
  return reduced_qr(gaussian_matrix<Scalar>(n, n, seed)).q;
}

template <typename Scalar>
Matrix<Scalar> lift(const RealMatrix& m) {
  return m.cast<Scalar>();
}

inline double max_abs_diff(const RealVector& a, const RealVector& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline double pythagorean_max(const GsvSpectrum& s) {
  double worst = 0.0;
  for (Index i = 0; i < s.n(); ++i) {
    worst = std::max(worst, std::abs(s.alphas(i) * s.alphas(i) + s.betas(i) * s.betas(i) - 1.0));
  }
  return worst;
}

/// Random pair in general position; stacked rank n holds with probability 1.
template <typename Scalar>
GmpPair<Scalar> random_pair(Index m, Index p, Index n, std::uint64_t seed) {
  return GmpPair<Scalar>(gaussian_matrix<Scalar>(m, n, derive_seed(seed, 1)),
                         gaussian_matrix<Scalar>(p, n, derive_seed(seed, 2)));
}

inline GsvOptions direct_options() {
  GsvOptions o;
  o.method = GsvMethod::direct;
  return o;
}

inline GsvOptions randomized_options(double rel_tol, std::uint64_t seed) {
  GsvOptions o;
  o.method = GsvMethod::randomized;
  o.extraction.rel_tol = rel_tol;
  o.extraction.seed = seed;
  return o;
}

}  // namespace rgsv::test
