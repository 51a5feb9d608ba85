#include "rgsv/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rgsv/kahan.hpp"

namespace rgsv {

template <typename Scalar>
double projector_bound(const GmpPair<Scalar>& pair, const GsvSpectrum& spectrum, Index k,
                       Index oversample, BoundSide which) {
  const Index n = pair.n();
  const Index rows = which == BoundSide::first ? pair.m() : pair.p();
  if (spectrum.n() != n) {
    fail(ErrorKind::dimension, "projector_bound: spectrum length differs from n");
  }
  if (k < 2 || oversample < 2 || k + oversample > std::min(rows, n)) {
    fail(ErrorKind::invalid_argument,
         "projector_bound: need k >= 2, oversample >= 2 and k + oversample <= " +
             std::to_string(std::min(rows, n)));
  }
  const double eta = pair.sigma_max() * pair.sigma_max();
  const double factor = static_cast<double>(k) / static_cast<double>(oversample - 1) + 1.0;

  KahanSum tail;
  for (Index j = k; j < n; ++j) {
    // chi_{n-j+1} in 1-based indexing is betas(n - 1 - j) here
    const double x = which == BoundSide::first ? spectrum.alphas(j) : spectrum.betas(n - 1 - j);
    tail += x * x;
  }
  return eta * factor * tail.value();
}

template <typename Scalar>
double perturbation_bound(const GmpPair<Scalar>& pair, const GmpPair<Scalar>& pair_tilde) {
  if (pair.m() != pair_tilde.m() || pair.p() != pair_tilde.p() || pair.n() != pair_tilde.n()) {
    fail(ErrorKind::dimension, "perturbation_bound: pairs differ in shape");
  }
  const double delta2 = squared_frobenius_norm(Matrix<Scalar>(pair_tilde.g1() - pair.g1())) +
                        squared_frobenius_norm(Matrix<Scalar>(pair_tilde.g2() - pair.g2()));
  // GmpPair construction already guarantees full column rank
  const double pinv = std::min(1.0 / pair.sigma_min(), 1.0 / pair_tilde.sigma_min());
  return std::numbers::sqrt2 * std::sqrt(delta2) * pinv;
}

namespace {

struct SideBounds {
  std::vector<double> p;
  double d = 0.0;
};

SideBounds side_bounds(const RealVector& phi, double e_script) {
  const Index n = phi.size();
  SideBounds out;
  out.p.assign(n, 0.0);
  KahanSum total;
  for (Index i = 0; i < n; ++i) total += phi(i) * phi(i);
  const double sum2 = total.value();
  if (!(sum2 > 0.0)) return out;

  for (Index i = 0; i < n; ++i) out.p[i] = 2.0 * phi(i) * e_script / sum2;
  if (n < 2) return out;

  const double log_n = std::log(static_cast<double>(n));
  KahanSum entropy;
  for (Index i = 0; i < n; ++i) {
    const double pi = phi(i) * phi(i) / sum2;
    if (pi > 0.0) entropy += pi * std::log(pi);
  }
  const double d = std::clamp(-entropy.value() / log_n + 0.0, 0.0, 1.0);

  KahanSum acc;
  for (Index i = 0; i < n; ++i) {
    if (phi(i) == 0.0) continue;
    const double pi = phi(i) * phi(i) / sum2;
    acc += std::abs(phi(i) / sum2 * (std::log(pi) / log_n + d));
  }
  out.d = 2.0 * e_script * acc.value();
  return out;
}

}  // namespace

BoundCertificate quantity_error_bounds(const GsvSpectrum& spectrum, double e_script) {
  if (!(e_script >= 0.0)) {
    fail(ErrorKind::invalid_argument, "quantity_error_bounds: e_script must be >= 0");
  }
  BoundCertificate c;
  c.e_script = e_script;
  c.vacuous = 2.0 * e_script > 1.0;
  c.theta_bound = c.vacuous ? std::numbers::pi / 2.0 : std::asin(2.0 * e_script);

  SideBounds first = side_bounds(spectrum.alphas, e_script);
  SideBounds second = side_bounds(spectrum.betas, e_script);
  c.p1_bounds = std::move(first.p);
  c.p2_bounds = std::move(second.p);
  c.d1_bound = first.d;
  c.d2_bound = second.d;
  return c;
}

template <typename Scalar>
ProjectorCheck check_projector_bound(const GmpPair<Scalar>& pair, const GsvSpectrum& spectrum,
                                     Index k, Index oversample, BoundSide which, int trials,
                                     std::uint64_t seed) {
  if (trials < 1) fail(ErrorKind::invalid_argument, "check_projector_bound: trials must be >= 1");
  ProjectorCheck out;
  out.bound = projector_bound(pair, spectrum, k, oversample, which);
  out.trials = trials;

  const Matrix<Scalar>& g = which == BoundSide::first ? pair.g1() : pair.g2();
  ExtractionConfig cfg;
  cfg.tol = 1e-300;
  cfg.blocksize = k + oversample;
  cfg.max_cols = k + oversample;

  KahanSum acc;
  for (int t = 0; t < trials; ++t) {
    cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    const BasisResult<Scalar> basis = extract_basis(g, cfg);
    const double res = residual_norm(g, basis.q);
    acc += res * res;
  }
  out.mean_squared_residual = acc.value() / trials;
  out.ratio = out.bound > 0.0 ? out.mean_squared_residual / out.bound
                              : (out.mean_squared_residual > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return out;
}

template <typename Scalar>
RunCertificate<Scalar> certify_randomized(const GmpPair<Scalar>& pair, const GsvOptions& opts) {
  GsvOptions randomized = opts;
  randomized.method = GsvMethod::randomized;
  GsvOptions direct = opts;
  direct.method = GsvMethod::direct;

  RunCertificate<Scalar> out;
  out.run = compute_gsv_run(pair, randomized);
  out.reference = compute_gsv(pair, direct);

  const BasisResult<Scalar>& b1 = *out.run.basis1;
  const BasisResult<Scalar>& b2 = *out.run.basis2;
  Matrix<Scalar> g1t = b1.q * b1.projected;
  Matrix<Scalar> g2t = b2.q * b2.projected;
  if (b1.q.cols() == 0) g1t = Matrix<Scalar>::Zero(pair.m(), pair.n());
  if (b2.q.cols() == 0) g2t = Matrix<Scalar>::Zero(pair.p(), pair.n());

  const double delta2 = squared_frobenius_norm(Matrix<Scalar>(g1t - pair.g1())) +
                        squared_frobenius_norm(Matrix<Scalar>(g2t - pair.g2()));
  out.delta_norm = std::sqrt(delta2);

  double pinv = 1.0 / pair.sigma_min();
  try {
    const GmpPair<Scalar> tilde(std::move(g1t), std::move(g2t));
    pinv = std::min(pinv, 1.0 / tilde.sigma_min());
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::rank_deficient) throw;
  }

  out.certificate = quantity_error_bounds(out.reference, std::numbers::sqrt2 * out.delta_norm * pinv);
  out.certificate.eta = pair.sigma_max() * pair.sigma_max();
  return out;
}

#define RGSV_INSTANTIATE(Scalar)                                                                 \
  template double projector_bound<Scalar>(const GmpPair<Scalar>&, const GsvSpectrum&, Index,     \
                                          Index, BoundSide);                                     \
  template double perturbation_bound<Scalar>(const GmpPair<Scalar>&, const GmpPair<Scalar>&);    \
  template ProjectorCheck check_projector_bound<Scalar>(const GmpPair<Scalar>&,                  \
                                                        const GsvSpectrum&, Index, Index,        \
                                                        BoundSide, int, std::uint64_t);          \
  template RunCertificate<Scalar> certify_randomized<Scalar>(const GmpPair<Scalar>&,             \
                                                             const GsvOptions&);

RGSV_INSTANTIATE(double)
RGSV_INSTANTIATE(std::complex<double>)

#undef RGSV_INSTANTIATE

}  // namespace rgsv
