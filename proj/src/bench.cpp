#include "rgsv/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "rgsv/io.hpp"

namespace rgsv {

ReportFormat parse_report_format(std::string_view text) {
  if (text == "csv") return ReportFormat::csv;
  if (text == "json") return ReportFormat::json;
  fail(ErrorKind::invalid_argument, "unknown format '" + std::string(text) + "'");
}

void RunConfig::validate() const {
  if (inputs.has_value() == synth.has_value()) {
    fail(ErrorKind::invalid_argument, "give either input files or synthetic parameters, not both");
  }
  if (repetitions < 1) fail(ErrorKind::invalid_argument, "repetitions must be >= 1");
  if (methods.empty()) fail(ErrorKind::invalid_argument, "no methods selected");
}

namespace {

ComplexMatrix to_complex(const AnyMatrix& m) {
  if (const auto* c = std::get_if<ComplexMatrix>(&m)) return *c;
  return std::get<RealMatrix>(m).cast<std::complex<double>>();
}

double spectrum_error(const GsvSpectrum& a, const GsvSpectrum& b) {
  return std::max((a.alphas - b.alphas).cwiseAbs().maxCoeff(),
                  (a.betas - b.betas).cwiseAbs().maxCoeff());
}

}  // namespace

AnyPair load_pair(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.synth) {
    if (cfg.synth->field == Field::complex) {
      return synth_gmp<std::complex<double>>(*cfg.synth).pair;
    }
    return synth_gmp<double>(*cfg.synth).pair;
  }
  AnyMatrix g1 = read_matrix(cfg.inputs->first);
  AnyMatrix g2 = read_matrix(cfg.inputs->second);
  if (std::holds_alternative<RealMatrix>(g1) && std::holds_alternative<RealMatrix>(g2)) {
    return GmpPair<double>(std::get<RealMatrix>(std::move(g1)),
                           std::get<RealMatrix>(std::move(g2)));
  }
  return GmpPair<std::complex<double>>(to_complex(g1), to_complex(g2));
}

template <typename Scalar>
std::vector<BenchRecord> run_bench(const GmpPair<Scalar>& pair, const GsvOptions& opts,
                                   int repetitions, const std::vector<GsvMethod>& methods) {
  if (repetitions < 1) fail(ErrorKind::invalid_argument, "repetitions must be >= 1");
  GsvOptions direct = opts;
  direct.method = GsvMethod::direct;
  const GsvSpectrum reference = compute_gsv(pair, direct);

  std::vector<BenchRecord> out;
  for (int rep = 0; rep < repetitions; ++rep) {
    for (GsvMethod method : methods) {
      GsvOptions o = opts;
      o.method = method;
      o.extraction.seed = derive_seed(opts.extraction.seed, static_cast<std::uint64_t>(rep));

      const auto start = std::chrono::steady_clock::now();
      const GsvRun<Scalar> run = compute_gsv_run(pair, o);
      const auto stop = std::chrono::steady_clock::now();

      BenchRecord r;
      r.method = std::string(to_string(method));
      r.repetition = rep;
      r.seconds = std::chrono::duration<double>(stop - start).count();
      r.spectrum_error = spectrum_error(run.spectrum, reference);
      if (run.basis1) r.residual1 = run.basis1->residual_history.back();
      if (run.basis2) r.residual2 = run.basis2->residual_history.back();
      r.m = pair.m();
      r.p = pair.p();
      r.n = pair.n();
      r.l1 = run.l1;
      r.l2 = run.l2;
      out.push_back(std::move(r));
    }
  }
  return out;
}

template std::vector<BenchRecord> run_bench<double>(const GmpPair<double>&, const GsvOptions&,
                                                    int, const std::vector<GsvMethod>&);
template std::vector<BenchRecord> run_bench<std::complex<double>>(
    const GmpPair<std::complex<double>>&, const GsvOptions&, int, const std::vector<GsvMethod>&);

std::vector<BenchRecord> run_bench(const RunConfig& cfg) {
  const AnyPair pair = load_pair(cfg);
  return std::visit(
      [&](const auto& p) { return run_bench(p, cfg.options, cfg.repetitions, cfg.methods); },
      pair);
}

double median_seconds(const std::vector<BenchRecord>& records, GsvMethod method) {
  std::vector<double> t;
  for (const BenchRecord& r : records) {
    if (r.method == to_string(method)) t.push_back(r.seconds);
  }
  if (t.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(t.begin(), t.end());
  const std::size_t h = t.size() / 2;
  return t.size() % 2 == 1 ? t[h] : 0.5 * (t[h - 1] + t[h]);
}

}  // namespace rgsv
