#include "rgsv/gsv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

namespace rgsv {

template <typename Scalar>
GmpPair<Scalar>::GmpPair(Matrix<Scalar> g1, Matrix<Scalar> g2)
    : g1_(std::move(g1)), g2_(std::move(g2)) {
  if (g1_.cols() != g2_.cols()) {
    fail(ErrorKind::dimension, "GmpPair: column counts differ (" + std::to_string(g1_.cols()) +
                                   " vs " + std::to_string(g2_.cols()) + ")");
  }
  if (g1_.rows() < 1 || g2_.rows() < 1 || g1_.cols() < 1) {
    fail(ErrorKind::dimension, "GmpPair: empty matrix");
  }
  require_finite(g1_, "G1");
  require_finite(g2_, "G2");
  if (m() + p() < n()) {
    fail(ErrorKind::rank_deficient, "GmpPair: m + p < n, the stacked matrix cannot have rank n");
  }
  const RealVector s = singular_values(stacked());
  sigma_max_ = s(0);
  sigma_min_ = s(s.size() - 1);
  if (!(sigma_min_ > 1e-12 * sigma_max_)) {
    fail(ErrorKind::rank_deficient, "GmpPair: stacked matrix is numerically rank deficient");
  }
}

template <typename Scalar>
Matrix<Scalar> GmpPair<Scalar>::stacked() const {
  Matrix<Scalar> out(m() + p(), n());
  out.topRows(m()) = g1_;
  out.bottomRows(p()) = g2_;
  return out;
}

SpectrumCounts classify_spectrum(RealVector& alphas, RealVector& betas, double classify_tol) {
  if (alphas.size() != betas.size()) {
    fail(ErrorKind::dimension, "classify_spectrum: alphas and betas differ in length");
  }
  const Index n = alphas.size();
  SpectrumCounts c;
  Index zero_alpha = 0;
  for (Index i = 0; i < n; ++i) {
    if (betas(i) < classify_tol) {
      betas(i) = 0.0;
      alphas(i) = 1.0;
      ++c.r;
    } else if (alphas(i) < classify_tol) {
      alphas(i) = 0.0;
      betas(i) = 1.0;
      ++zero_alpha;
    }
  }
  c.s = n - c.r - zero_alpha;
  return c;
}

double pythagorean_defect(const GsvSpectrum& spectrum) {
  double worst = 0.0;
  for (Index i = 0; i < spectrum.n(); ++i) {
    const double a = spectrum.alphas(i);
    const double b = spectrum.betas(i);
    worst = std::max(worst, std::abs(a * a + b * b - 1.0));
  }
  return worst;
}

std::string_view to_string(GsvMethod method) noexcept {
  return method == GsvMethod::randomized ? "randomized" : "direct";
}

GsvMethod parse_method(std::string_view text) {
  if (text == "randomized") return GsvMethod::randomized;
  if (text == "direct") return GsvMethod::direct;
  fail(ErrorKind::invalid_argument, "unknown method '" + std::string(text) + "'");
}

namespace {

template <typename Scalar>
struct Compressed {
  Matrix<Scalar> l1;
  Matrix<Scalar> l2;
  Matrix<Scalar> rtilde;
};

// Reduced QR of (C1; C2) split into its top and bottom row blocks.
template <typename Scalar>
Compressed<Scalar> stacked_qr(const Matrix<Scalar>& c1, const Matrix<Scalar>& c2) {
  const Index n = c1.cols();
  if (c1.rows() + c2.rows() < n) {
    fail(ErrorKind::rank_deficient,
         "compressed pair has " + std::to_string(c1.rows() + c2.rows()) +
             " rows for " + std::to_string(n) + " columns; loosen trimming or tighten tol");
  }
  Matrix<Scalar> stack(c1.rows() + c2.rows(), n);
  stack.topRows(c1.rows()) = c1;
  stack.bottomRows(c2.rows()) = c2;
  QrFactors<Scalar> qr = reduced_qr(stack);
  return {qr.q.topRows(c1.rows()), qr.q.bottomRows(c2.rows()), std::move(qr.r)};
}

// SVD of the primary block A. The columns of (A; B) are orthonormal, so for
// each right singular vector v_i the partner value is ||B v_i||. That is used
// when sigma_i is large, where the complement sqrt(1 - sigma_i^2) would lose
// half the digits; the complement is used otherwise.
template <typename Scalar>
struct BlockAnalysis {
  Index k = 0;
  std::vector<double> primary;    // clamped singular values, padded with 0
  std::vector<double> secondary;  // partner values, padded with 1
  Matrix<Scalar> v;               // right singular vectors, n x n when recovering
  Matrix<Scalar> u;               // left singular vectors of A, rows(A) x k
};

template <typename Scalar>
BlockAnalysis<Scalar> analyze_block(const Matrix<Scalar>& a, const Matrix<Scalar>& b,
                                    bool recover) {
  const Index n = a.cols();
  BlockAnalysis<Scalar> out;
  out.k = std::min(a.rows(), n);
  out.primary.assign(n, 0.0);
  out.secondary.assign(n, 1.0);

  RealVector sigma;
  if (out.k == 0) {
    out.v = Matrix<Scalar>::Identity(n, n);
    out.u.resize(a.rows(), 0);
  } else if (a.rows() > n) {
    Eigen::HouseholderQR<Matrix<Scalar>> qr(a);
    const Matrix<Scalar> ra = qr.matrixQR().topRows(n).template triangularView<Eigen::Upper>();
    const unsigned opts = recover ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : Eigen::ComputeThinV;
    Eigen::BDCSVD<Matrix<Scalar>> dec(ra, opts);
    if (dec.info() != Eigen::Success) fail(ErrorKind::convergence, "svd of L block did not converge");
    sigma = dec.singularValues();
    out.v = dec.matrixV();
    if (recover) {
      Matrix<Scalar> padded = Matrix<Scalar>::Zero(a.rows(), n);
      padded.topRows(n) = dec.matrixU();
      out.u = qr.householderQ() * padded;
    }
  } else {
    const unsigned opts =
        recover ? (Eigen::ComputeThinU | Eigen::ComputeFullV) : Eigen::ComputeThinV;
    Eigen::BDCSVD<Matrix<Scalar>> dec(a, opts);
    if (dec.info() != Eigen::Success) fail(ErrorKind::convergence, "svd of L block did not converge");
    sigma = dec.singularValues();
    out.v = dec.matrixV();
    if (recover) out.u = dec.matrixU();
  }

  constexpr double kSplit = std::numbers::sqrt2 / 2.0;
  std::vector<Index> large;
  for (Index i = 0; i < out.k; ++i) {
    const double s = std::clamp(sigma(i), 0.0, 1.0);
    out.primary[i] = s;
    if (sigma(i) > kSplit) {
      large.push_back(i);
    } else {
      out.secondary[i] = std::sqrt(1.0 - s * s);
    }
  }
  if (!large.empty()) {
    // sigma is sorted, so the large ones are a leading block
    const Index count = static_cast<Index>(large.size());
    const Matrix<Scalar> bv = b * out.v.leftCols(count);
    for (Index i = 0; i < count; ++i) out.secondary[i] = bv.col(i).norm();
  }
  return out;
}

struct Ordering {
  std::vector<double> angle;  // atan2(alpha, beta), in output order
  std::vector<Index> source;  // internal index feeding each output slot
};

// In the first branch the primary block is L1 and alpha = primary; in the
// second it is L2 and beta = primary.
Ordering order_pairs(const std::vector<double>& primary, const std::vector<double>& secondary,
                     bool first_branch) {
  const std::size_t n = primary.size();
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    psi[i] = first_branch ? std::atan2(primary[i], secondary[i])
                          : std::atan2(secondary[i], primary[i]);
  }
  Ordering o;
  o.source.resize(n);
  std::iota(o.source.begin(), o.source.end(), Index{0});
  std::stable_sort(o.source.begin(), o.source.end(),
                   [&](Index x, Index y) { return psi[x] > psi[y]; });
  o.angle.resize(n);
  for (std::size_t j = 0; j < n; ++j) o.angle[j] = psi[o.source[j]];
  return o;
}

GsvSpectrum spectrum_from_angles(const std::vector<double>& angle, double classify_tol) {
  const Index n = static_cast<Index>(angle.size());
  GsvSpectrum s;
  s.alphas.resize(n);
  s.betas.resize(n);
  for (Index j = 0; j < n; ++j) {
    s.alphas(j) = std::sin(angle[j]);
    s.betas(j) = std::cos(angle[j]);
  }
  const SpectrumCounts c = classify_spectrum(s.alphas, s.betas, classify_tol);
  s.r = c.r;
  s.s = c.s;
  return s;
}

template <typename Scalar>
bool choose_first_branch(Index l1, Index l2, GsvBranch branch) {
  switch (branch) {
    case GsvBranch::first: return true;
    case GsvBranch::second: return false;
    case GsvBranch::automatic: break;
  }
  return l1 <= l2;
}

void validate_options(const GsvOptions& opts) {
  if (!(opts.classify_tol > 0.0 && opts.classify_tol < 1e-2)) {
    fail(ErrorKind::invalid_argument, "classify_tol must lie in (0, 1e-2)");
  }
}

// Everything needed by both the spectrum-only and the recovery paths.
template <typename Scalar>
struct Pipeline {
  GsvRun<Scalar> run;
  Compressed<Scalar> comp;
  BlockAnalysis<Scalar> block;
  Ordering order;
};

template <typename Scalar>
Pipeline<Scalar> run_pipeline(const GmpPair<Scalar>& pair, const GsvOptions& opts, bool recover) {
  validate_options(opts);
  Pipeline<Scalar> pl;
  GsvRun<Scalar>& run = pl.run;

  if (opts.method == GsvMethod::randomized) {
    ExtractionConfig c1 = opts.extraction;
    ExtractionConfig c2 = opts.extraction;
    c2.seed = opts.extraction.seed + 1;
    run.basis1 = extract_basis(pair.g1(), c1);
    run.basis2 = extract_basis(pair.g2(), c2);
    pl.comp = stacked_qr(run.basis1->projected, run.basis2->projected);
  } else {
    pl.comp = stacked_qr(pair.g1(), pair.g2());
  }
  run.l1 = pl.comp.l1.rows();
  run.l2 = pl.comp.l2.rows();
  run.first_branch = choose_first_branch<Scalar>(run.l1, run.l2, opts.branch);

  pl.block = run.first_branch ? analyze_block(pl.comp.l1, pl.comp.l2, recover)
                              : analyze_block(pl.comp.l2, pl.comp.l1, recover);
  pl.order = order_pairs(pl.block.primary, pl.block.secondary, run.first_branch);
  run.spectrum = spectrum_from_angles(pl.order.angle, opts.classify_tol);
  return pl;
}

// Orthonormal columns orthogonal to span(known).
template <typename Scalar>
Matrix<Scalar> complete_basis(const Matrix<Scalar>& known, Index count, std::uint64_t seed) {
  const Index rows = known.rows();
  if (known.cols() + count > rows) {
    fail(ErrorKind::dimension, "cannot complete an orthonormal basis beyond the row count");
  }
  Matrix<Scalar> x = gaussian_matrix<Scalar>(rows, count, seed);
  if (known.cols() > 0) {
    x -= known * (known.adjoint() * x);
    x -= known * (known.adjoint() * x);
  }
  return reduced_qr(x).q;
}

}  // namespace

template <typename Scalar>
GsvRun<Scalar> compute_gsv_run(const GmpPair<Scalar>& pair, const GsvOptions& opts) {
  return run_pipeline(pair, opts, false).run;
}

template <typename Scalar>
GsvSpectrum compute_gsv(const GmpPair<Scalar>& pair, const GsvOptions& opts) {
  return compute_gsv_run(pair, opts).spectrum;
}

template <typename Scalar>
GsvdFactors<Scalar> recover_gsvd(const GmpPair<Scalar>& pair, const GsvOptions& opts) {
  const Index m = pair.m();
  const Index p = pair.p();
  const Index n = pair.n();
  if (m < n || p < n) {
    fail(ErrorKind::dimension, "recover_gsvd: reduced GSVD needs m >= n and p >= n");
  }

  Pipeline<Scalar> pl = run_pipeline(pair, opts, true);
  const GsvSpectrum& spec = pl.run.spectrum;
  const bool first = pl.run.first_branch;

  // primary side: left singular vectors of the analyzed block; secondary
  // side: B v_i divided by the partner value.
  const Matrix<Scalar>& b_block = first ? pl.comp.l2 : pl.comp.l1;
  const Matrix<Scalar>* primary_basis = nullptr;
  const Matrix<Scalar>* secondary_basis = nullptr;
  if (pl.run.basis1) {
    primary_basis = first ? &pl.run.basis1->q : &pl.run.basis2->q;
    secondary_basis = first ? &pl.run.basis2->q : &pl.run.basis1->q;
  }
  const Index primary_rows = first ? m : p;
  const Index secondary_rows = first ? p : m;

  Matrix<Scalar> vp(n, n);
  for (Index j = 0; j < n; ++j) vp.col(j) = pl.block.v.col(pl.order.source[j]);

  Matrix<Scalar> primary_left = Matrix<Scalar>::Zero(primary_rows, n);
  Matrix<Scalar> secondary_left = Matrix<Scalar>::Zero(secondary_rows, n);
  std::vector<Index> primary_missing;
  std::vector<Index> secondary_missing;

  for (Index j = 0; j < n; ++j) {
    const Index i = pl.order.source[j];
    if (i < pl.block.k) {
      const auto col = pl.block.u.col(i);
      primary_left.col(j) = primary_basis ? Matrix<Scalar>(*primary_basis * col) : Matrix<Scalar>(col);
    } else {
      primary_missing.push_back(j);
    }

    const double partner = first ? spec.betas(j) : spec.alphas(j);
    if (partner == 0.0) {
      secondary_missing.push_back(j);
      continue;
    }
    const Matrix<Scalar> w = b_block * vp.col(j);
    if (w.norm() < opts.classify_tol) {
      fail(ErrorKind::ill_conditioned,
           "recover_gsvd: generalized singular value " + std::to_string(j + 1) +
               " is too small to divide by but was not classified as zero");
    }
    const Matrix<Scalar> lifted = secondary_basis ? Matrix<Scalar>(*secondary_basis * w) : w;
    secondary_left.col(j) = lifted / partner;
  }

  auto fill = [&](Matrix<Scalar>& left, const std::vector<Index>& missing, std::uint64_t stream) {
    if (missing.empty()) return;
    std::vector<Index> present;
    for (Index j = 0; j < n; ++j) {
      if (std::find(missing.begin(), missing.end(), j) == missing.end()) present.push_back(j);
    }
    Matrix<Scalar> known(left.rows(), static_cast<Index>(present.size()));
    for (std::size_t c = 0; c < present.size(); ++c) known.col(c) = left.col(present[c]);
    const Matrix<Scalar> extra = complete_basis(
        known, static_cast<Index>(missing.size()), derive_seed(opts.extraction.seed, stream));
    for (std::size_t c = 0; c < missing.size(); ++c) left.col(missing[c]) = extra.col(c);
  };
  fill(primary_left, primary_missing, 0xA1);
  fill(secondary_left, secondary_missing, 0xB2);

  GsvdFactors<Scalar> f;
  f.r_factor = vp.adjoint() * pl.comp.rtilde;
  f.spectrum = spec;
  f.u = first ? std::move(primary_left) : std::move(secondary_left);
  f.v = first ? std::move(secondary_left) : std::move(primary_left);
  return f;
}

template class GmpPair<double>;
template class GmpPair<std::complex<double>>;

#define RGSV_INSTANTIATE(Scalar)                                                                \
  template GsvRun<Scalar> compute_gsv_run<Scalar>(const GmpPair<Scalar>&, const GsvOptions&);   \
  template GsvSpectrum compute_gsv<Scalar>(const GmpPair<Scalar>&, const GsvOptions&);          \
  template GsvdFactors<Scalar> recover_gsvd<Scalar>(const GmpPair<Scalar>&, const GsvOptions&);

RGSV_INSTANTIATE(double)
RGSV_INSTANTIATE(std::complex<double>)

#undef RGSV_INSTANTIATE

}  // namespace rgsv
