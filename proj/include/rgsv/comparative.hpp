#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rgsv/gsv.hpp"

namespace rgsv {

/// Where a report came from.
struct ReportMeta {
  std::string method;
  std::uint64_t seed = 0;
  double tol = 0.0;  ///< relative extraction tolerance, or the absolute one when set
  double classify_tol = 0.0;
};

struct ComparativeReport {
  GsvSpectrum spectrum;
  std::vector<double> rho;    ///< alpha / beta, +inf for the first r entries
  std::vector<double> theta;  ///< antisymmetric angular distances
  std::vector<double> p1;
  std::vector<double> p2;
  double d1 = 0.0;
  double d2 = 0.0;
  ReportMeta meta;
};

std::vector<double> relative_significance(const GsvSpectrum& spec);

/// atan2(alpha, beta) - pi/4, in [-pi/4, pi/4].
std::vector<double> angular_distances(const GsvSpectrum& spec);

/// Generalized fractions of eigenexpression for both data sets. Throws
/// ErrorKind::degenerate if sum(alpha^2) or sum(beta^2) is zero.
std::pair<std::vector<double>, std::vector<double>> eigenexpression_fractions(
    const GsvSpectrum& spec);

/// Normalized Shannon entropy -sum p log p / log n with 0 log 0 = 0, clamped
/// to [0, 1]. Needs n >= 2 and a probability vector (sum within 1e-10).
double shannon_entropy(const std::vector<double>& p);

ComparativeReport make_report(const GsvSpectrum& spec, ReportMeta meta);

template <typename Scalar>
ComparativeReport compare(const GmpPair<Scalar>& pair, const GsvOptions& opts);

}  // namespace rgsv
