#pragma once

#include <cstdint>

#include "rgsv/gsv.hpp"

namespace rgsv {

struct SynthSpec {
  Index m = 0;
  Index p = 0;
  Index n = 0;
  /// rank(G1) = rank(G2) = floor(rank_frac * min(m, p, n)).
  double rank_frac = 0.6;
  std::uint64_t seed = 0;
  Field field = Field::real;
};

/// A generated pair together with the spectrum it was built from.
template <typename Scalar>
struct SynthResult {
  GmpPair<Scalar> pair;
  GsvSpectrum true_spectrum;
  double condition_r = 0.0;  ///< condition number of the shared right factor
};

/// Pair G1 = U diag(alpha) R, G2 = V diag(beta) R with Gaussian R and
/// orthonormalized Gaussian U, V. Interior values are uniform on (0, 1); the
/// exact-one and exact-zero blocks follow from the two rank constraints.
/// Throws ErrorKind::infeasible when 2 * rank < n.
template <typename Scalar>
SynthResult<Scalar> synth_gmp(const SynthSpec& spec);

/// Same construction with caller-chosen alphas (nonincreasing, in [0, 1]);
/// beta = sqrt(1 - alpha^2).
template <typename Scalar>
SynthResult<Scalar> synth_from_spectrum(Index m, Index p, const RealVector& alphas,
                                        std::uint64_t seed);

}  // namespace rgsv
