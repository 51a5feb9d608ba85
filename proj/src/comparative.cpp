#include "rgsv/comparative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rgsv/kahan.hpp"

namespace rgsv {

std::vector<double> relative_significance(const GsvSpectrum& spec) {
  std::vector<double> rho(spec.n());
  for (Index l = 0; l < spec.n(); ++l) {
    rho[l] = (l < spec.r || spec.betas(l) == 0.0) ? std::numeric_limits<double>::infinity()
                                                    : spec.alphas(l) / spec.betas(l);
  }
  return rho;
}

std::vector<double> angular_distances(const GsvSpectrum& spec) {
  std::vector<double> theta(spec.n());
  for (Index l = 0; l < spec.n(); ++l) {
    theta[l] = std::atan2(spec.alphas(l), spec.betas(l)) - std::numbers::pi / 4.0;
  }
  return theta;
}

namespace {

std::vector<double> normalized_squares(const RealVector& x, const char* which) {
  KahanSum total;
  for (Index i = 0; i < x.size(); ++i) total += x(i) * x(i);
  const double denom = total.value();
  if (!(denom > 0.0)) {
    fail(ErrorKind::degenerate, std::string("eigenexpression_fractions: all ") + which + " are zero");
  }
  std::vector<double> p(x.size());
  for (Index i = 0; i < x.size(); ++i) p[i] = x(i) * x(i) / denom;
  return p;
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> eigenexpression_fractions(
    const GsvSpectrum& spec) {
  return {normalized_squares(spec.alphas, "alphas"), normalized_squares(spec.betas, "betas")};
}

double shannon_entropy(const std::vector<double>& p) {
  const std::size_t n = p.size();
  if (n < 2) fail(ErrorKind::invalid_argument, "shannon_entropy: need at least two entries");
  KahanSum total;
  KahanSum acc;
  for (double x : p) {
    if (!(x >= 0.0)) fail(ErrorKind::invalid_argument, "shannon_entropy: negative probability");
    total += x;
    if (x > 0.0) acc += x * std::log(x);
  }
  if (std::abs(total.value() - 1.0) > 1e-10) {
    fail(ErrorKind::invalid_argument, "shannon_entropy: probabilities do not sum to 1");
  }
  // the sum is <= 0, so this is +0 rather than -0 for a point mass
  const double d = -acc.value() / std::log(static_cast<double>(n)) + 0.0;
  return std::clamp(d, 0.0, 1.0);
}

ComparativeReport make_report(const GsvSpectrum& spec, ReportMeta meta) {
  ComparativeReport rep;
  rep.spectrum = spec;
  rep.rho = relative_significance(spec);
  rep.theta = angular_distances(spec);
  std::tie(rep.p1, rep.p2) = eigenexpression_fractions(spec);
  if (spec.n() >= 2) {
    rep.d1 = shannon_entropy(rep.p1);
    rep.d2 = shannon_entropy(rep.p2);
  }
  rep.meta = std::move(meta);
  return rep;
}

template <typename Scalar>
ComparativeReport compare(const GmpPair<Scalar>& pair, const GsvOptions& opts) {
  const GsvSpectrum spec = compute_gsv(pair, opts);
  ReportMeta meta;
  meta.method = std::string(to_string(opts.method));
  meta.seed = opts.extraction.seed;
  meta.tol = opts.extraction.tol.value_or(opts.extraction.rel_tol);
  meta.classify_tol = opts.classify_tol;
  return make_report(spec, std::move(meta));
}

template ComparativeReport compare<double>(const GmpPair<double>&, const GsvOptions&);
template ComparativeReport compare<std::complex<double>>(const GmpPair<std::complex<double>>&,
                                                         const GsvOptions&);

}  // namespace rgsv
