#include "rgsv/matrix_core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "rgsv/kahan.hpp"

namespace rgsv {

std::string_view to_string(Field field) noexcept {
  return field == Field::real ? "real" : "complex";
}

Field parse_field(std::string_view text) {
  if (text == "real") return Field::real;
  if (text == "complex") return Field::complex;
  fail(ErrorKind::invalid_argument, "unknown field '" + std::string(text) + "'");
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  // splitmix64 finalizer over the combined state
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

template <typename Scalar>
void require_finite(const Matrix<Scalar>& m, std::string_view what) {
  if (!m.allFinite()) {
    fail(ErrorKind::invalid_argument, std::string(what) + " contains NaN or Inf entries");
  }
}

template <typename Scalar>
Matrix<Scalar> gaussian_matrix(Index rows, Index cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1) {
    fail(ErrorKind::dimension, "gaussian_matrix: sizes must be positive, got " +
                                   std::to_string(rows) + "x" + std::to_string(cols));
  }
  std::mt19937_64 gen(seed);
  Matrix<Scalar> out(rows, cols);
  if constexpr (is_complex_v<Scalar>) {
    std::normal_distribution<double> dist(0.0, std::sqrt(0.5));
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) {
        const double re = dist(gen);
        const double im = dist(gen);
        out(i, j) = Scalar(re, im);
      }
    }
  } else {
    std::normal_distribution<double> dist(0.0, 1.0);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) out(i, j) = dist(gen);
    }
  }
  return out;
}

template <typename Scalar>
QrFactors<Scalar> reduced_qr(const Matrix<Scalar>& m) {
  const Index rows = m.rows();
  const Index cols = m.cols();
  const Index k = std::min(rows, cols);

  QrFactors<Scalar> f;
  if (k == 0) {
    f.q.resize(rows, 0);
    f.r.resize(0, cols);
    return f;
  }

  Eigen::HouseholderQR<Matrix<Scalar>> qr(m);
  f.q = qr.householderQ() * Matrix<Scalar>::Identity(rows, k);
  f.r = qr.matrixQR().topRows(k).template triangularView<Eigen::Upper>();

  for (Index j = 0; j < k; ++j) {
    const Scalar d = f.r(j, j);
    const double mag = std::abs(d);
    if (mag == 0.0) continue;
    const Scalar phase = d / mag;
    if (phase == Scalar(1)) continue;
    f.r.row(j) *= Eigen::numext::conj(phase);
    f.r(j, j) = Scalar(mag);
    f.q.col(j) *= phase;
  }
  return f;
}

template <typename Scalar>
SvdFactors<Scalar> svd(const Matrix<Scalar>& m, bool full_v) {
  SvdFactors<Scalar> f;
  const Index k = std::min(m.rows(), m.cols());
  if (k == 0) {
    f.u.resize(m.rows(), 0);
    f.s.resize(0);
    f.v = full_v ? Matrix<Scalar>::Identity(m.cols(), m.cols()) : Matrix<Scalar>(m.cols(), 0);
    return f;
  }
  const unsigned opts = Eigen::ComputeThinU | (full_v ? Eigen::ComputeFullV : Eigen::ComputeThinV);
  Eigen::BDCSVD<Matrix<Scalar>> dec(m, opts);
  if (dec.info() != Eigen::Success) {
    fail(ErrorKind::convergence, "svd: kernel did not converge");
  }
  f.u = dec.matrixU();
  f.s = dec.singularValues();
  f.v = dec.matrixV();
  return f;
}

template <typename Scalar>
RealVector singular_values(const Matrix<Scalar>& m) {
  if (std::min(m.rows(), m.cols()) == 0) return RealVector(0);
  if (m.rows() > m.cols()) {
    Eigen::HouseholderQR<Matrix<Scalar>> qr(m);
    const Matrix<Scalar> r =
        qr.matrixQR().topRows(m.cols()).template triangularView<Eigen::Upper>();
    return singular_values(r);
  }
  Eigen::BDCSVD<Matrix<Scalar>> dec(m);
  if (dec.info() != Eigen::Success) {
    fail(ErrorKind::convergence, "singular_values: kernel did not converge");
  }
  return dec.singularValues();
}

template <typename Scalar>
double squared_frobenius_norm(const Matrix<Scalar>& m) {
  KahanSum acc;
  const Scalar* data = m.data();
  const Index size = m.size();
  for (Index i = 0; i < size; ++i) acc += std::norm(data[i]);
  return acc.value();
}

template <typename Scalar>
double frobenius_norm(const Matrix<Scalar>& m) {
  return std::sqrt(squared_frobenius_norm(m));
}

template <typename Scalar>
double pseudoinverse_norm(const Matrix<Scalar>& m) {
  if (m.rows() < m.cols() || m.cols() == 0) {
    fail(ErrorKind::rank_deficient, "pseudoinverse_norm: matrix cannot have full column rank");
  }
  const RealVector s = singular_values(m);
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (!(smin > 1e-13 * smax)) {
    fail(ErrorKind::rank_deficient, "pseudoinverse_norm: matrix is numerically rank deficient");
  }
  return 1.0 / smin;
}

template <typename Scalar>
double spectral_norm(const Matrix<Scalar>& m) {
  const RealVector s = singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

#define RGSV_INSTANTIATE(Scalar)                                                       \
  template void require_finite<Scalar>(const Matrix<Scalar>&, std::string_view);       \
  template Matrix<Scalar> gaussian_matrix<Scalar>(Index, Index, std::uint64_t);        \
  template QrFactors<Scalar> reduced_qr<Scalar>(const Matrix<Scalar>&);                \
  template SvdFactors<Scalar> svd<Scalar>(const Matrix<Scalar>&, bool);                \
  template RealVector singular_values<Scalar>(const Matrix<Scalar>&);                  \
  template double squared_frobenius_norm<Scalar>(const Matrix<Scalar>&);               \
  template double frobenius_norm<Scalar>(const Matrix<Scalar>&);                       \
  template double pseudoinverse_norm<Scalar>(const Matrix<Scalar>&);                   \
  template double spectral_norm<Scalar>(const Matrix<Scalar>&);

RGSV_INSTANTIATE(double)
RGSV_INSTANTIATE(std::complex<double>)

#undef RGSV_INSTANTIATE

}  // namespace rgsv
