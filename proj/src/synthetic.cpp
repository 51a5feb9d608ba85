#include "rgsv/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

namespace rgsv {

template <typename Scalar>
SynthResult<Scalar> synth_from_spectrum(Index m, Index p, const RealVector& alphas,
                                        std::uint64_t seed) {
  const Index n = alphas.size();
  if (m < 1 || p < 1 || n < 1) fail(ErrorKind::invalid_argument, "synth: sizes must be positive");
  for (Index i = 0; i < n; ++i) {
    if (!(alphas(i) >= 0.0 && alphas(i) <= 1.0)) {
      fail(ErrorKind::invalid_argument, "synth: alphas must lie in [0, 1]");
    }
    if (i > 0 && alphas(i) > alphas(i - 1)) {
      fail(ErrorKind::invalid_argument, "synth: alphas must be nonincreasing");
    }
  }

  RealVector betas(n);
  std::vector<Index> nz1;
  std::vector<Index> nz2;
  for (Index i = 0; i < n; ++i) {
    const double a = alphas(i);
    betas(i) = std::sqrt((1.0 - a) * (1.0 + a));
    if (a > 0.0) nz1.push_back(i);
    if (betas(i) > 0.0) nz2.push_back(i);
  }
  const Index rank1 = static_cast<Index>(nz1.size());
  const Index rank2 = static_cast<Index>(nz2.size());
  if (rank1 > m || rank2 > p) {
    fail(ErrorKind::infeasible, "synth: rank(G1) = " + std::to_string(rank1) +
                                    ", rank(G2) = " + std::to_string(rank2) +
                                    " exceed the row counts");
  }

  const Matrix<Scalar> r = gaussian_matrix<Scalar>(n, n, derive_seed(seed, 0));

  auto side = [&](Index rows, const std::vector<Index>& nz, const RealVector& values,
                  std::uint64_t stream) -> Matrix<Scalar> {
    const Index rank = static_cast<Index>(nz.size());
    if (rank == 0) return Matrix<Scalar>::Zero(rows, n);
    const Matrix<Scalar> basis = reduced_qr(gaussian_matrix<Scalar>(rows, rank, derive_seed(seed, stream))).q;
    Matrix<Scalar> scaled_r(rank, n);
    for (Index c = 0; c < rank; ++c) scaled_r.row(c) = values(nz[c]) * r.row(nz[c]);
    return basis * scaled_r;
  };

  Matrix<Scalar> g1 = side(m, nz1, alphas, 1);
  Matrix<Scalar> g2 = side(p, nz2, betas, 2);

  const RealVector sr = singular_values(r);
  GsvSpectrum truth;
  truth.alphas = alphas;
  truth.betas = betas;
  const SpectrumCounts counts =
      classify_spectrum(truth.alphas, truth.betas, std::numeric_limits<double>::min());
  truth.r = counts.r;
  truth.s = counts.s;

  return SynthResult<Scalar>{GmpPair<Scalar>(std::move(g1), std::move(g2)), std::move(truth),
                             sr(0) / sr(sr.size() - 1)};
}

template <typename Scalar>
SynthResult<Scalar> synth_gmp(const SynthSpec& spec) {
  if (spec.m < 1 || spec.p < 1 || spec.n < 2) {
    fail(ErrorKind::invalid_argument, "synth: need m, p >= 1 and n >= 2");
  }
  if (!(spec.rank_frac > 0.0 && spec.rank_frac <= 1.0)) {
    fail(ErrorKind::invalid_argument, "synth: rank_frac must lie in (0, 1]");
  }
  const Index n = spec.n;
  const Index rank = static_cast<Index>(
      std::floor(spec.rank_frac * static_cast<double>(std::min({spec.m, spec.p, spec.n}))));
  if (rank < 1) fail(ErrorKind::infeasible, "synth: rank_frac yields rank 0");
  if (2 * rank < n) {
    fail(ErrorKind::infeasible, "synth: rank(G1) + rank(G2) = " + std::to_string(2 * rank) +
                                    " < n = " + std::to_string(n) +
                                    "; the stacked pair would be rank deficient");
  }

  const Index ones = n - rank;   // beta = 0
  const Index zeros = n - rank;  // alpha = 0
  const Index interior = n - ones - zeros;

  std::mt19937_64 gen(derive_seed(spec.seed, 3));
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> mid(interior);
  for (double& x : mid) {
    do {
      x = unif(gen);
    } while (x == 0.0);
  }
  std::sort(mid.begin(), mid.end(), std::greater<>());

  RealVector alphas(n);
  for (Index i = 0; i < ones; ++i) alphas(i) = 1.0;
  for (Index i = 0; i < interior; ++i) alphas(ones + i) = mid[i];
  for (Index i = ones + interior; i < n; ++i) alphas(i) = 0.0;

  return synth_from_spectrum<Scalar>(spec.m, spec.p, alphas, spec.seed);
}

template SynthResult<double> synth_gmp<double>(const SynthSpec&);
template SynthResult<std::complex<double>> synth_gmp<std::complex<double>>(const SynthSpec&);
template SynthResult<double> synth_from_spectrum<double>(Index, Index, const RealVector&,
                                                         std::uint64_t);
template SynthResult<std::complex<double>> synth_from_spectrum<std::complex<double>>(
    Index, Index, const RealVector&, std::uint64_t);

}  // namespace rgsv
