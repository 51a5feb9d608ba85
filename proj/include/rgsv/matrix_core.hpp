#pragma once

#include <complex>
#include <cstdint>
#include <string_view>
#include <type_traits>

#include <Eigen/Dense>

#include "rgsv/error.hpp"

namespace rgsv {

using Index = Eigen::Index;

enum class Field { real, complex };

std::string_view to_string(Field field) noexcept;
Field parse_field(std::string_view text);

/// Dense column-major matrix over double or std::complex<double>.
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using RealMatrix = Matrix<double>;
using ComplexMatrix = Matrix<std::complex<double>>;
using RealVector = Eigen::VectorXd;

template <typename Scalar>
inline constexpr bool is_complex_v = !std::is_same_v<Scalar, double>;

template <typename Scalar>
inline constexpr Field field_of_v = is_complex_v<Scalar> ? Field::complex : Field::real;

/// Thin QR: q is rows x k with orthonormal columns, r is k x cols upper
/// triangular, k = min(rows, cols). The diagonal of r is real and >= 0.
template <typename Scalar>
struct QrFactors {
  Matrix<Scalar> q;
  Matrix<Scalar> r;
};

/// m = u * diag(s) * v^H with s nonincreasing.
template <typename Scalar>
struct SvdFactors {
  Matrix<Scalar> u;
  RealVector s;
  Matrix<Scalar> v;
};

/// Throws ErrorKind::invalid_argument when any entry is NaN or infinite.
template <typename Scalar>
void require_finite(const Matrix<Scalar>& m, std::string_view what);

/// I.i.d. Gaussian entries, a pure function of (rows, cols, seed, Scalar).
/// Real entries are N(0, 1). Complex entries have independent real and
/// imaginary parts, each N(0, 1/2).
template <typename Scalar>
Matrix<Scalar> gaussian_matrix(Index rows, Index cols, std::uint64_t seed);

/// Householder QR with the nonnegative-diagonal phase convention.
template <typename Scalar>
QrFactors<Scalar> reduced_qr(const Matrix<Scalar>& m);

/// Reduced SVD. With full_v the right factor is cols x cols, otherwise it is
/// cols x min(rows, cols). Throws ErrorKind::convergence if the kernel fails.
template <typename Scalar>
SvdFactors<Scalar> svd(const Matrix<Scalar>& m, bool full_v = false);

/// Singular values only, nonincreasing. Tall inputs are QR-compressed first.
template <typename Scalar>
RealVector singular_values(const Matrix<Scalar>& m);

/// Sum of |m_ij|^2 accumulated with compensated summation.
template <typename Scalar>
double squared_frobenius_norm(const Matrix<Scalar>& m);

template <typename Scalar>
double frobenius_norm(const Matrix<Scalar>& m);

/// ||m^+||_2 = 1 / sigma_min(m). Requires full column rank:
/// sigma_min > 1e-13 * sigma_max, otherwise ErrorKind::rank_deficient.
template <typename Scalar>
double pseudoinverse_norm(const Matrix<Scalar>& m);

/// Largest singular value.
template <typename Scalar>
double spectral_norm(const Matrix<Scalar>& m);

/// 64-bit mixing used to derive independent child seeds from a base seed.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept;

}  // namespace rgsv
