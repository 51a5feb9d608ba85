#pragma once

#include <optional>
#include <string_view>

#include "rgsv/matrix_core.hpp"
#include "rgsv/range_finder.hpp"

namespace rgsv {

/// A matrix pair {G1 (m x n), G2 (p x n)} whose vertical stack has full
/// column rank n. Validated on construction.
template <typename Scalar>
class GmpPair {
 public:
  /// Throws dimension (column mismatch, empty input), invalid_argument
  /// (non-finite entries) or rank_deficient (sigma_min <= 1e-12 sigma_max).
  GmpPair(Matrix<Scalar> g1, Matrix<Scalar> g2);

  const Matrix<Scalar>& g1() const noexcept { return g1_; }
  const Matrix<Scalar>& g2() const noexcept { return g2_; }
  Index m() const noexcept { return g1_.rows(); }
  Index p() const noexcept { return g2_.rows(); }
  Index n() const noexcept { return g1_.cols(); }

  /// (G1; G2), (m + p) x n.
  Matrix<Scalar> stacked() const;

  /// Extreme singular values of the stacked matrix.
  double sigma_max() const noexcept { return sigma_max_; }
  double sigma_min() const noexcept { return sigma_min_; }

 private:
  Matrix<Scalar> g1_;
  Matrix<Scalar> g2_;
  double sigma_max_ = 0.0;
  double sigma_min_ = 0.0;
};

/// Generalized singular value pairs, alphas nonincreasing, betas
/// nondecreasing, alpha_i^2 + beta_i^2 = 1. The first r pairs are (1, 0), the
/// last n - r - s are (0, 1).
struct GsvSpectrum {
  RealVector alphas;
  RealVector betas;
  Index r = 0;
  Index s = 0;

  Index n() const noexcept { return alphas.size(); }
};

struct SpectrumCounts {
  Index r = 0;
  Index s = 0;
};

/// Counts the (1, 0) and (0, 1) blocks using classify_tol and snaps those
/// entries to exact zeros and ones.
SpectrumCounts classify_spectrum(RealVector& alphas, RealVector& betas, double classify_tol);

/// max_i |alpha_i^2 + beta_i^2 - 1|.
double pythagorean_defect(const GsvSpectrum& spectrum);

enum class GsvMethod { randomized, direct };
std::string_view to_string(GsvMethod method) noexcept;
GsvMethod parse_method(std::string_view text);

/// Which block's singular values are computed. automatic picks L1 when
/// l1 <= l2; the forced values exist for cross-checking the two routes.
enum class GsvBranch { automatic, first, second };

struct GsvOptions {
  ExtractionConfig extraction;
  double classify_tol = 1e-10;
  GsvMethod method = GsvMethod::randomized;
  GsvBranch branch = GsvBranch::automatic;
};

/// Spectrum plus what the computation looked like.
template <typename Scalar>
struct GsvRun {
  GsvSpectrum spectrum;
  Index l1 = 0;
  Index l2 = 0;
  bool first_branch = true;
  /// Present for the randomized method only.
  std::optional<BasisResult<Scalar>> basis1;
  std::optional<BasisResult<Scalar>> basis2;
};

/// G1 = U diag(alpha) R, G2 = V diag(beta) R.
template <typename Scalar>
struct GsvdFactors {
  Matrix<Scalar> u;         ///< m x n
  Matrix<Scalar> v;         ///< p x n
  Matrix<Scalar> r_factor;  ///< n x n
  GsvSpectrum spectrum;
};

template <typename Scalar>
GsvRun<Scalar> compute_gsv_run(const GmpPair<Scalar>& pair, const GsvOptions& opts);

/// Generalized singular values via compressed bases (randomized) or of the
/// full pair (direct).
template <typename Scalar>
GsvSpectrum compute_gsv(const GmpPair<Scalar>& pair, const GsvOptions& opts);

/// Full reduced GSVD. Requires m >= n and p >= n so that U and V can have
/// orthonormal columns.
template <typename Scalar>
GsvdFactors<Scalar> recover_gsvd(const GmpPair<Scalar>& pair, const GsvOptions& opts);

}  // namespace rgsv
