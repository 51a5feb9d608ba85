#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rgsv/matrix_core.hpp"

namespace rgsv {

/// Settings for blocked randomized basis extraction.
struct ExtractionConfig {
  /// Absolute Frobenius tolerance on ||(I - QQ^H) G||_F. When unset the
  /// tolerance is rel_tol * ||G||_F.
  std::optional<double> tol;
  double rel_tol = 1e-10;
  /// Columns sampled per iteration; clamped to cols(G).
  Index blocksize = 100;
  std::uint64_t seed = 0;
  /// Hard cap on the number of basis columns.
  std::optional<Index> max_cols;
  /// A sampled direction is kept only if its pivoted-QR diagonal is at least
  /// trim_tol * ||G||_F. Zero keeps every direction that can be normalized.
  double trim_tol = 1e-12;
};

template <typename Scalar>
struct BasisResult {
  Matrix<Scalar> q;          ///< m x l, orthonormal columns
  Matrix<Scalar> projected;  ///< Q^H G, l x n, accumulated block by block
  /// Residual ||(I - QQ^H) G||_F: entry 0 is the pre-iteration value ||G||_F,
  /// entry i the value after iteration i.
  std::vector<double> residual_history;
  bool converged = false;
  int iterations = 0;
  double tol = 0.0;  ///< effective absolute tolerance
};

/// Randomized blocked range finder.
///
/// Each iteration draws a Gaussian block, projects the sample against the
/// current basis twice, factors it with column pivoting and appends the
/// directions that survive trimming. The squared residual is tracked as
/// ||G||_F^2 - ||Q^H G||_F^2; once that difference falls into the range where
/// cancellation makes it unreliable and the tolerance is below it, the
/// residual is evaluated explicitly instead. The loop stops on convergence,
/// after ceil(n / b) blocks, or when max_cols is reached.
template <typename Scalar>
BasisResult<Scalar> extract_basis(const Matrix<Scalar>& g, const ExtractionConfig& cfg);

/// Explicit ||G - Q (Q^H G)||_F.
template <typename Scalar>
double residual_norm(const Matrix<Scalar>& g, const Matrix<Scalar>& q);

}  // namespace rgsv
