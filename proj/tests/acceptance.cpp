// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "rgsv/bench.hpp"
#include "rgsv/bounds.hpp"
#include "rgsv/comparative.hpp"
#include "rgsv/gsv.hpp"
#include "rgsv/synthetic.hpp"

namespace {

using namespace rgsv;
using Complex = std::complex<double>;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double max_abs(const RealVector& a, const RealVector& b) { return (a - b).cwiseAbs().maxCoeff(); }

double pythagorean_max(const GsvSpectrum& s) {
  return (s.alphas.array().square() + s.betas.array().square() - 1.0).abs().maxCoeff();
}

GsvOptions randomized(double rel_tol, std::uint64_t seed) {
  GsvOptions o;
  o.extraction.rel_tol = rel_tol;
  o.extraction.seed = seed;
  return o;
}

GsvOptions direct() {
  GsvOptions o;
  o.method = GsvMethod::direct;
  return o;
}

template <typename S>
GmpPair<S> gaussian_pair(Index m, Index p, Index n, std::uint64_t seed) {
  return GmpPair<S>(gaussian_matrix<S>(m, n, derive_seed(seed, 1)),
                    gaussian_matrix<S>(p, n, derive_seed(seed, 2)));
}

template <typename S>
GmpPair<S> perturbed(const GmpPair<S>& pair, double relative, std::uint64_t seed) {
  Matrix<S> e1 = gaussian_matrix<S>(pair.m(), pair.n(), derive_seed(seed, 11));
  Matrix<S> e2 = gaussian_matrix<S>(pair.p(), pair.n(), derive_seed(seed, 12));
  const double target = relative * std::sqrt(pair.g1().squaredNorm() + pair.g2().squaredNorm());
  const double scale = target / std::sqrt(e1.squaredNorm() + e2.squaredNorm());
  return GmpPair<S>(Matrix<S>(pair.g1() + S(scale) * e1), Matrix<S>(pair.g2() + S(scale) * e2));
}

// --- 1 ----------------------------------------------------------------------

Outcome spectrum_accuracy() {
  const SynthResult<double> syn = synth_gmp<double>(SynthSpec{801, 400, 400, 0.6, 2023, Field::real});
  const auto start = std::chrono::steady_clock::now();
  const GsvSpectrum s = compute_gsv(syn.pair, randomized(1e-12, 7));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double e1 = (s.alphas - syn.true_spectrum.alphas).norm();
  const double e2 = (s.betas - syn.true_spectrum.betas).norm();
  Outcome o;
  o.pass = e1 <= 1e-8 && e2 <= 1e-8 && seconds <= 10.0;
  o.detail = fmt("||S1*-S1||_F=%.3e ||S2*-S2||_F=%.3e time=%.2fs", e1, e2, seconds);
  return o;
}

// --- 2 ----------------------------------------------------------------------

template <typename S>
double oracle_gap(const GmpPair<S>& pair, std::uint64_t seed) {
  const GsvSpectrum a = compute_gsv(pair, randomized(1e-12, seed));
  const GsvSpectrum b = compute_gsv(pair, direct());
  return std::max(max_abs(a.alphas, b.alphas), max_abs(a.betas, b.betas));
}

Outcome oracle_equivalence() {
  struct Shape {
    Index m, p, n;
    bool complex;
    bool synthetic;
  };
  std::vector<Shape> shapes;
  // the three regimes m = n +- 100, p = n +- 5, with the m offset scaled by n / 400
  for (Index n : {100, 200, 400}) {
    const Index d = 100 * n / 400;
    shapes.push_back({n + d, n + 5, n, false, true});
    shapes.push_back({n - d, n + 5, n, false, true});
    shapes.push_back({n + d, n - 5, n, false, true});
  }
  for (Index n : {100, 200}) {
    const Index d = 100 * n / 400;
    shapes.push_back({n + d, n + 5, n, true, true});
    shapes.push_back({n - d, n + 5, n, true, false});
    shapes.push_back({n + d, n - 5, n, true, false});
  }
  shapes.push_back({150, 60, 120, false, false});
  shapes.push_back({60, 150, 120, false, false});
  shapes.push_back({300, 300, 100, false, true});
  shapes.push_back({90, 40, 100, true, false});
  shapes.push_back({500, 30, 80, false, false});

  double worst = 0.0;
  int count = 0;
  std::uint64_t seed = 100;
  for (const Shape& s : shapes) {
    ++seed;
    double gap = 0.0;
    if (s.synthetic) {
      const SynthSpec spec{s.m, s.p, s.n, 0.75, seed, s.complex ? Field::complex : Field::real};
      gap = s.complex ? oracle_gap(synth_gmp<Complex>(spec).pair, seed)
                      : oracle_gap(synth_gmp<double>(spec).pair, seed);
    } else {
      gap = s.complex ? oracle_gap(gaussian_pair<Complex>(s.m, s.p, s.n, seed), seed)
                      : oracle_gap(gaussian_pair<double>(s.m, s.p, s.n, seed), seed);
    }
    worst = std::max(worst, gap);
    ++count;
  }
  Outcome o;
  o.pass = count == 20 && worst <= 1e-8;
  o.detail = fmt("%d pairs, max elementwise gap %.3e", count, worst);
  return o;
}

// --- 3 ----------------------------------------------------------------------

Outcome pythagorean_identity() {
  std::mt19937_64 rng(3);
  auto draw = [&](Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); };
  double worst = 0.0;
  int cases = 0;
  for (int i = 0; i < 120; ++i) {
    const Index n = draw(2, 60);
    const Index m = draw(1, 2 * n);
    const Index p = std::max<Index>(draw(1, 2 * n), n - m + 1);
    const std::uint64_t seed = rng();
    GsvOptions opts = randomized(1e-12, seed);
    opts.method = i % 3 == 0 ? GsvMethod::direct : GsvMethod::randomized;
    opts.extraction.blocksize = draw(1, 30);
    GsvSpectrum s;
    const bool synthetic = i % 2 == 1;
    const bool complex = i % 4 >= 2;
    const SynthSpec spec{m, p, n, 1.0 - 0.4 * static_cast<double>(i % 5) / 5.0, seed,
                         complex ? Field::complex : Field::real};
    try {
      if (synthetic && complex) {
        s = compute_gsv(synth_gmp<Complex>(spec).pair, opts);
      } else if (synthetic) {
        s = compute_gsv(synth_gmp<double>(spec).pair, opts);
      } else if (complex) {
        s = compute_gsv(gaussian_pair<Complex>(m, p, n, seed), opts);
      } else {
        s = compute_gsv(gaussian_pair<double>(m, p, n, seed), opts);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::infeasible) throw;
      s = compute_gsv(gaussian_pair<double>(m, p, n, seed), opts);
    }
    worst = std::max(worst, pythagorean_max(s));
    ++cases;
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = fmt("%d spectra, max |a^2+b^2-1| = %.3e", cases, worst);
  return o;
}

// --- 4 ----------------------------------------------------------------------

Outcome saturation_exactness() {
  double worst = 0.0;
  int i = 0;
  for (Index n : {20, 60, 100, 150, 200, 250, 300, 350, 400, 500}) {
    ExtractionConfig cfg;
    cfg.tol = 1e-300;
    cfg.seed = static_cast<std::uint64_t>(n);
    double rel = 0.0;
    if (i++ % 2 == 0) {
      const RealMatrix g = gaussian_matrix<double>(n, n, 40 + cfg.seed);
      rel = residual_norm(g, extract_basis(g, cfg).q) / g.norm();
    } else {
      const ComplexMatrix g = gaussian_matrix<Complex>(n, n, 40 + cfg.seed);
      rel = residual_norm(g, extract_basis(g, cfg).q) / g.norm();
    }
    worst = std::max(worst, rel);
  }
  Outcome o;
  o.pass = worst <= 1e-10;
  o.detail = fmt("10 square matrices up to 500x500, max relative residual %.3e", worst);
  return o;
}

// --- 5 ----------------------------------------------------------------------

Outcome expectation_bound() {
  const Index n = 120;
  RealVector alphas(n);
  for (Index i = 0; i < n; ++i) alphas(i) = 0.95 * std::pow(0.8, static_cast<double>(i));
  const SynthResult<double> syn = synth_from_spectrum<double>(300, 300, alphas, 55);
  Outcome o;
  for (auto [k, over] : {std::pair<Index, Index>{10, 5}, {20, 10}}) {
    const ProjectorCheck c =
        check_projector_bound(syn.pair, syn.true_spectrum, k, over, BoundSide::first, 50, 9);
    o.pass = o.pass && c.mean_squared_residual <= c.bound;
    o.detail += fmt("(k=%ld,p=%ld) mean=%.3e bound=%.3e ratio=%.3e  ", static_cast<long>(k),
                    static_cast<long>(over), c.mean_squared_residual, c.bound, c.ratio);
  }
  return o;
}

// --- 6 and 7 ------------------------------------------------------------------

struct PerturbationStats {
  double rss_ratio = 0.0;    // max over pairs of rss / E
  double max_ratio = 0.0;    // max over pairs of max|dphi| / E
  double theta_ratio = 0.0;  // max of |dtheta| / arcsin(2E)
  double p_ratio = 0.0;      // max of |dP| / first-order bound
  double d_ratio = 0.0;      // max of |dD| / first-order bound
  int pairs = 0;
};

template <typename S>
void perturbation_case(const GmpPair<S>& pair, std::uint64_t seed, PerturbationStats& st) {
  const GmpPair<S> tilde = perturbed(pair, 1e-6, seed);
  const double e = perturbation_bound(pair, tilde);
  const GsvSpectrum a = compute_gsv(pair, direct());
  const GsvSpectrum b = compute_gsv(tilde, direct());
  const double rss =
      std::sqrt((a.alphas - b.alphas).squaredNorm() + (a.betas - b.betas).squaredNorm());
  const double mx = std::max(max_abs(a.alphas, b.alphas), max_abs(a.betas, b.betas));
  st.rss_ratio = std::max(st.rss_ratio, rss / e);
  st.max_ratio = std::max(st.max_ratio, mx / e);

  const ComparativeReport ra = make_report(a, ReportMeta{});
  const ComparativeReport rb = make_report(b, ReportMeta{});
  const BoundCertificate c = quantity_error_bounds(a, e);
  for (std::size_t i = 0; i < ra.theta.size(); ++i) {
    st.theta_ratio = std::max(st.theta_ratio, std::abs(ra.theta[i] - rb.theta[i]) / c.theta_bound);
    st.p_ratio = std::max(st.p_ratio, std::abs(ra.p1[i] - rb.p1[i]) / c.p1_bounds[i]);
    st.p_ratio = std::max(st.p_ratio, std::abs(ra.p2[i] - rb.p2[i]) / c.p2_bounds[i]);
  }
  st.d_ratio = std::max(st.d_ratio, std::abs(ra.d1 - rb.d1) / c.d1_bound);
  st.d_ratio = std::max(st.d_ratio, std::abs(ra.d2 - rb.d2) / c.d2_bound);
  ++st.pairs;
}

const PerturbationStats& perturbation_stats() {
  static const PerturbationStats stats = [] {
    PerturbationStats st;
    std::mt19937_64 rng(66);
    auto draw = [&](Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng); };
    for (int i = 0; i < 20; ++i) {
      const Index n = draw(5, 60);
      const Index m = n + draw(0, 60);
      const Index p = n + draw(0, 60);
      const std::uint64_t seed = rng();
      switch (i % 4) {
        case 0: perturbation_case(gaussian_pair<double>(m, p, n, seed), seed, st); break;
        case 1: perturbation_case(gaussian_pair<Complex>(m, p, n, seed), seed, st); break;
        case 2:
          perturbation_case(synth_gmp<double>(SynthSpec{m, p, n, 1.0, seed, Field::real}).pair,
                            seed, st);
          break;
        default:
          perturbation_case(
              synth_gmp<Complex>(SynthSpec{m, p, n, 1.0, seed, Field::complex}).pair, seed, st);
      }
    }
    return st;
  }();
  return stats;
}

Outcome perturbation_bounds() {
  const PerturbationStats& st = perturbation_stats();
  Outcome o;
  o.pass = st.pairs == 20 && st.rss_ratio <= 1.0 && st.max_ratio <= 1.0;
  o.detail = fmt("%d pairs, max rss/E=%.3e, max |dphi|/E=%.3e", st.pairs, st.rss_ratio,
                 st.max_ratio);
  return o;
}

Outcome quantity_bounds() {
  const PerturbationStats& st = perturbation_stats();
  Outcome o;
  o.pass = st.pairs == 20 && st.theta_ratio <= 1.0 && st.p_ratio <= 1.1 && st.d_ratio <= 1.1;
  o.detail = fmt("%d pairs, max |dtheta|/arcsin(2E)=%.3e, |dP|/bound=%.3e, |dD|/bound=%.3e",
                 st.pairs, st.theta_ratio, st.p_ratio, st.d_ratio);
  return o;
}

// --- 8 ----------------------------------------------------------------------

Outcome tolerance_sweep() {
  const Index m = 300;
  const Index p = 250;
  const Index n = 150;
  RealVector alphas(n);
  for (Index i = 0; i < n; ++i) {
    alphas(i) = 0.99 * std::pow(1e-15, static_cast<double>(i) / static_cast<double>(n - 1));
  }
  const RealVector betas = ((1.0 - alphas.array()) * (1.0 + alphas.array())).sqrt().matrix();
  // orthogonal right factor, so the truth is exactly (alphas, betas)
  const RealMatrix r = reduced_qr(gaussian_matrix<double>(n, n, 81)).q;
  const RealMatrix u = reduced_qr(gaussian_matrix<double>(m, n, 82)).q;
  const RealMatrix v = reduced_qr(gaussian_matrix<double>(p, n, 83)).q;
  const GmpPair<double> pair(u * alphas.asDiagonal() * r, v * betas.asDiagonal() * r);

  Outcome o;
  double previous = 0.0;
  bool first = true;
  for (double tol : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    GsvOptions opts = randomized(tol, 12);
    opts.extraction.blocksize = 10;
    const GsvRun<double> run = compute_gsv_run(pair, opts);
    const double ea = (run.spectrum.alphas - alphas).norm();
    const double eb = (run.spectrum.betas - betas).norm();
    const double err = std::sqrt(ea * ea + eb * eb);
    if (!first && err > 1.1 * previous) o.pass = false;
    o.detail += fmt("tol=%.0e res1=%.2e err=%.3e  ", tol,
                    run.basis1->residual_history.back() / pair.g1().norm(), err);
    previous = err;
    first = false;
  }
  return o;
}

// --- 9 ----------------------------------------------------------------------

GsvSpectrum spectrum_of(std::vector<double> a) {
  GsvSpectrum s;
  s.alphas = RealVector::Map(a.data(), static_cast<Index>(a.size()));
  s.betas = ((1.0 - s.alphas.array()) * (1.0 + s.alphas.array())).sqrt().matrix();
  const SpectrumCounts c = classify_spectrum(s.alphas, s.betas, 1e-10);
  s.r = c.r;
  s.s = c.s;
  return s;
}

Outcome closed_forms() {
  const double q = std::numbers::pi / 4;
  const double h = std::numbers::sqrt2 / 2;
  double worst = 0.0;
  auto check = [&](double got, double want) { worst = std::max(worst, std::abs(got - want)); };

  const std::vector<double> t = angular_distances(spectrum_of({1.0, h, 0.0}));
  check(t[0], q);
  check(t[1], 0.0);
  check(t[2], -q);
  check(shannon_entropy({1, 0, 0, 0}), 0.0);
  check(shannon_entropy({0.25, 0.25, 0.25, 0.25}), 1.0);
  check(shannon_entropy({0.5, 0.5, 0, 0}), 0.5);

  RealMatrix g1 = RealMatrix::Zero(2, 2);
  RealMatrix g2 = RealMatrix::Zero(2, 2);
  g1(0, 0) = 1.0;
  g2(1, 1) = 1.0;
  for (GsvMethod method : {GsvMethod::randomized, GsvMethod::direct}) {
    GsvOptions opts;
    opts.method = method;
    const ComparativeReport sep = compare(GmpPair<double>(g1, g2), opts);
    check(sep.theta[0], q);
    check(sep.theta[1], -q);
    check(sep.d1, 0.0);
    check(sep.d2, 0.0);
    const ComparativeReport eq =
        compare(GmpPair<double>(RealMatrix::Identity(4, 4), RealMatrix::Identity(4, 4)), opts);
    for (double x : eq.theta) check(x, 0.0);
    check(eq.d1, 1.0);
    check(eq.d2, 1.0);
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = fmt("max deviation from closed form %.3e", worst);
  return o;
}

// --- 10 ---------------------------------------------------------------------

Outcome runtime_ordering() {
  // rank(G1) = 40; the stacked pair needs rank n, which forces rank(G2) >= 360.
  // The 40 nonzero alphas are 1 so that rank(G2) is exactly 360.
  const Index n = 400;
  RealVector alphas = RealVector::Zero(n);
  alphas.head(40).setOnes();
  const SynthResult<double> syn = synth_from_spectrum<double>(4000, 4000, alphas, 404);
  const std::vector<BenchRecord> records =
      run_bench(syn.pair, GsvOptions{}, 5, {GsvMethod::randomized, GsvMethod::direct});
  const double tr = median_seconds(records, GsvMethod::randomized);
  const double td = median_seconds(records, GsvMethod::direct);
  double err = 0.0;
  for (const BenchRecord& r : records) err = std::max(err, r.spectrum_error.value_or(0.0));
  Outcome o;
  o.pass = tr < td;
  o.detail = fmt("median randomized %.3fs, direct %.3fs (l1=%ld, l2=%ld, max gap %.2e)", tr, td,
                 static_cast<long>(records.front().l1), static_cast<long>(records.front().l2), err);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "spectrum accuracy on (801, 400, 400)", spectrum_accuracy},
      {2, "randomized vs direct on 20 pairs", oracle_equivalence},
      {3, "pythagorean identity", pythagorean_identity},
      {4, "exactness at full sampling", saturation_exactness},
      {5, "expected projection residual bound", expectation_bound},
      {6, "GSV perturbation bounds", perturbation_bounds},
      {7, "theta, P and D perturbation bounds", quantity_bounds},
      {8, "GSV error nonincreasing in tol", tolerance_sweep},
      {9, "comparative closed forms", closed_forms},
      {10, "randomized faster than direct on a tall low-rank pair", runtime_ordering},
  };
  // optional arguments select criteria by number
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  int failures = 0;
  int ran = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) {
      continue;
    }
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += o.pass ? 0 : 1;
    std::printf("criterion %2d %s  %s: %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", ran - failures, ran);
  return failures == 0 ? 0 : 1;
}
