#pragma once

#include <cstdint>
#include <vector>

#include "rgsv/gsv.hpp"

namespace rgsv {

/// Error certificate for the comparative quantities.
///
/// The p/d bounds are first order in e_script: the remainder terms are
/// dropped, so they are only meaningful for small perturbations.
struct BoundCertificate {
  double eta = 0.0;  ///< sigma_max(G1^H G1 + G2^H G2); 0 when not computed
  double e_script = 0.0;
  double theta_bound = 0.0;  ///< arcsin(min(2 e_script, 1))
  std::vector<double> p1_bounds;
  std::vector<double> p2_bounds;
  double d1_bound = 0.0;
  double d2_bound = 0.0;
  bool vacuous = false;  ///< 2 e_script > 1, theta bound saturated at pi/2
};

enum class BoundSide { first, second };

/// Expected squared projection residual bound for a sketch with
/// k + oversample columns:
///   eta (k / (oversample - 1) + 1) sum_{j>k} phi_j^2           (first)
///   eta (k / (oversample - 1) + 1) sum_{j>k} chi_{n-j+1}^2     (second)
template <typename Scalar>
double projector_bound(const GmpPair<Scalar>& pair, const GsvSpectrum& spectrum, Index k,
                       Index oversample, BoundSide which);

/// sqrt(2) ||G~ - G||_F min(||G^+||, ||G~^+||) for the stacked matrices.
template <typename Scalar>
double perturbation_bound(const GmpPair<Scalar>& pair, const GmpPair<Scalar>& pair_tilde);

BoundCertificate quantity_error_bounds(const GsvSpectrum& spectrum, double e_script);

/// Monte Carlo comparison of the measured mean squared residual against
/// projector_bound, using fixed-width sketches of k + oversample columns.
struct ProjectorCheck {
  double bound = 0.0;
  double mean_squared_residual = 0.0;
  double ratio = 0.0;  ///< mean / bound
  int trials = 0;
};

template <typename Scalar>
ProjectorCheck check_projector_bound(const GmpPair<Scalar>& pair, const GsvSpectrum& spectrum,
                                     Index k, Index oversample, BoundSide which, int trials,
                                     std::uint64_t seed);

/// Certificate for a randomized run, measured against the uncompressed pair.
/// G~ is (Q1 Q1^H G1; Q2 Q2^H G2); bounds are evaluated at the direct
/// spectrum of G.
template <typename Scalar>
struct RunCertificate {
  GsvRun<Scalar> run;
  GsvSpectrum reference;
  double delta_norm = 0.0;  ///< ||G~ - G||_F
  BoundCertificate certificate;
};

template <typename Scalar>
RunCertificate<Scalar> certify_randomized(const GmpPair<Scalar>& pair, const GsvOptions& opts);

}  // namespace rgsv
