#include "rgsv/range_finder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rgsv/kahan.hpp"

namespace rgsv {
namespace {

// Below this fraction of ||G||_F the cumulative residual loses its digits to
// cancellation in ||G||^2 - ||Q^H G||^2.
constexpr double kCumulativeFloor = 1e-6;

void validate(Index rows, Index cols, const ExtractionConfig& cfg) {
  if (rows < 1 || cols < 1) {
    fail(ErrorKind::dimension, "extract_basis: input matrix is empty");
  }
  if (cfg.tol && !(*cfg.tol > 0.0)) {
    fail(ErrorKind::invalid_argument, "extract_basis: tol must be positive");
  }
  if (!cfg.tol && !(cfg.rel_tol > 0.0)) {
    fail(ErrorKind::invalid_argument, "extract_basis: rel_tol must be positive");
  }
  if (cfg.blocksize < 1) {
    fail(ErrorKind::invalid_argument, "extract_basis: blocksize must be >= 1");
  }
  if (!(cfg.trim_tol >= 0.0)) {
    fail(ErrorKind::invalid_argument, "extract_basis: trim_tol must be >= 0");
  }
  if (cfg.max_cols && (*cfg.max_cols < 1 || *cfg.max_cols > std::min(rows, cols))) {
    fail(ErrorKind::invalid_argument,
         "extract_basis: max_cols must lie in [1, min(rows, cols)] = [1, " +
             std::to_string(std::min(rows, cols)) + "]");
  }
}

// Orthonormal basis for span(P) orthogonal to span(Q). P has unit columns.
// Repeats the projection when it cancels most of a column and drops columns
// that have nothing left outside span(Q).
template <typename Scalar>
Matrix<Scalar> orthonormalize_against(const Matrix<Scalar>& q, Matrix<Scalar> p) {
  for (int pass = 0; pass < 3 && p.cols() > 0; ++pass) {
    const Matrix<Scalar> coeff = q.adjoint() * p;
    p.noalias() -= q * coeff;

    // the usual case: p was already orthogonal to q up to roundoff
    const Matrix<Scalar> gram = p.adjoint() * p;
    if ((gram - Matrix<Scalar>::Identity(p.cols(), p.cols())).cwiseAbs().maxCoeff() <= 1e-13) {
      return p;
    }

    Eigen::HouseholderQR<Matrix<Scalar>> qr(p);
    const auto diag = qr.matrixQR().diagonal().cwiseAbs().eval();
    if (diag.minCoeff() >= 0.5) {
      return qr.householderQ() * Matrix<Scalar>::Identity(p.rows(), p.cols());
    }

    Eigen::ColPivHouseholderQR<Matrix<Scalar>> pqr(p);
    const auto pdiag = pqr.matrixR().diagonal().cwiseAbs().eval();
    Index keep = 0;
    while (keep < pdiag.size() && pdiag(keep) > 1e-8) ++keep;
    p = pqr.householderQ() * Matrix<Scalar>::Identity(p.rows(), keep);
  }
  return p;
}

}  // namespace

template <typename Scalar>
double residual_norm(const Matrix<Scalar>& g, const Matrix<Scalar>& q) {
  if (q.rows() != g.rows()) {
    fail(ErrorKind::dimension, "residual_norm: basis has " + std::to_string(q.rows()) +
                                   " rows, matrix has " + std::to_string(g.rows()));
  }
  if (q.cols() == 0) return frobenius_norm(g);
  const Matrix<Scalar> r = g - q * (q.adjoint() * g);
  return frobenius_norm(r);
}

template <typename Scalar>
BasisResult<Scalar> extract_basis(const Matrix<Scalar>& g, const ExtractionConfig& cfg) {
  const Index m = g.rows();
  const Index n = g.cols();
  validate(m, n, cfg);

  const double norm2 = squared_frobenius_norm(g);
  const double norm = std::sqrt(norm2);
  const double eps = cfg.tol ? *cfg.tol : cfg.rel_tol * norm;
  const Index b = std::min(cfg.blocksize, n);
  const Index cap = cfg.max_cols.value_or(std::min(m, n));
  const Index nblocks = (n + b - 1) / b;
  const double trim = cfg.trim_tol * norm;

  BasisResult<Scalar> out;
  out.tol = eps;
  out.q.resize(m, 0);
  out.projected.resize(0, n);
  out.residual_history.push_back(norm);

  if (norm2 == 0.0 || norm < eps) {
    out.converged = true;
    return out;
  }

  KahanSum captured;
  bool explicit_residual = false;

  for (Index i = 0; i < nblocks && out.q.cols() < cap; ++i) {
    const Index l = out.q.cols();
    const Index width = std::min({b, n - i * b, cap - l});

    const Matrix<Scalar> omega = gaussian_matrix<Scalar>(n, width, derive_seed(cfg.seed, i));
    Matrix<Scalar> y = g * omega;
    if (l > 0) {
      for (int pass = 0; pass < 2; ++pass) {
        const Matrix<Scalar> coeff = out.q.adjoint() * y;
        y.noalias() -= out.q * coeff;
      }
    }

    Eigen::ColPivHouseholderQR<Matrix<Scalar>> qr(y);
    const auto diag = qr.matrixR().diagonal().cwiseAbs().eval();
    Index keep = 0;
    const Index room = std::min(cap - l, m - l);
    while (keep < diag.size() && keep < room && diag(keep) > 0.0 && diag(keep) >= trim) ++keep;

    Matrix<Scalar> p = qr.householderQ() * Matrix<Scalar>::Identity(m, keep);
    if (l > 0 && keep > 0) p = orthonormalize_against(out.q, std::move(p));

    if (p.cols() > 0) {
      const Matrix<Scalar> c = p.adjoint() * g;
      captured += squared_frobenius_norm(c);

      out.q.conservativeResize(Eigen::NoChange, l + p.cols());
      out.q.rightCols(p.cols()) = p;
      out.projected.conservativeResize(l + p.cols(), Eigen::NoChange);
      out.projected.bottomRows(p.cols()) = c;
    }

    const double est2 = norm2 - captured.value();
    const double floor = kCumulativeFloor * norm;
    double residual;
    if (!explicit_residual && (est2 > floor * floor || eps >= 10.0 * floor)) {
      residual = std::sqrt(std::max(est2, 0.0));
    } else {
      explicit_residual = true;
      Matrix<Scalar> r = g;
      r.noalias() -= out.q * out.projected;
      residual = frobenius_norm(r);
    }

    out.residual_history.push_back(residual);
    out.iterations = static_cast<int>(i + 1);
    if (residual < eps) {
      out.converged = true;
      break;
    }
  }
  return out;
}

template BasisResult<double> extract_basis<double>(const Matrix<double>&, const ExtractionConfig&);
template BasisResult<std::complex<double>> extract_basis<std::complex<double>>(
    const Matrix<std::complex<double>>&, const ExtractionConfig&);
template double residual_norm<double>(const Matrix<double>&, const Matrix<double>&);
template double residual_norm<std::complex<double>>(const Matrix<std::complex<double>>&,
                                                    const Matrix<std::complex<double>>&);

}  // namespace rgsv
