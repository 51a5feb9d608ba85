// rgsv: command-line front end for the randomized GSV library.
//
// Exit codes: 0 success, 1 unexpected failure, 2 usage, and 10 + ErrorKind
// for library errors. The error category is printed to stderr as
// "rgsv: error[<category>]: <message>".

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rgsv/bench.hpp"
#include "rgsv/bounds.hpp"
#include "rgsv/comparative.hpp"
#include "rgsv/io.hpp"
#include "rgsv/synthetic.hpp"

namespace {

using namespace rgsv;

struct CommonOptions {
  std::string g1;
  std::string g2;
  Index synth_m = 0;
  Index synth_p = 0;
  Index synth_n = 0;
  double rank_frac = 0.6;
  std::string field = "real";

  std::optional<double> tol;
  double rel_tol = 1e-10;
  Index blocksize = 100;
  std::optional<Index> max_cols;
  double trim_tol = 1e-12;
  std::uint64_t seed = 0;
  std::string method = "randomized";
  double classify_tol = 1e-10;
  std::string format = "csv";
  std::string out = "-";
  int reps = 1;
};

void add_extraction_flags(CLI::App* app, CommonOptions& o) {
  app->add_option("--tol", o.tol, "absolute residual tolerance (overrides --rel-tol)")
      ->check(CLI::PositiveNumber);
  app->add_option("--rel-tol", o.rel_tol, "tolerance relative to ||G||_F")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--blocksize", o.blocksize, "columns sampled per iteration")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--max-cols", o.max_cols, "cap on basis columns")->check(CLI::PositiveNumber);
  app->add_option("--trim-tol", o.trim_tol, "relative drop threshold for sampled directions")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app->add_option("--seed", o.seed, "base seed for all randomness")
      ->envname("RGSV_SEED")
      ->capture_default_str();
}

void add_input_flags(CLI::App* app, CommonOptions& o) {
  auto* g1 = app->add_option("--g1", o.g1, "first matrix (Matrix Market or CSV)");
  auto* g2 = app->add_option("--g2", o.g2, "second matrix (Matrix Market or CSV)");
  g1->needs(g2);
  g2->needs(g1);
  auto* m = app->add_option("--m", o.synth_m, "synthetic rows of G1");
  auto* p = app->add_option("--p", o.synth_p, "synthetic rows of G2");
  auto* n = app->add_option("--n", o.synth_n, "synthetic columns");
  m->needs(p)->needs(n)->excludes(g1)->excludes(g2);
  app->add_option("--rank-frac", o.rank_frac, "synthetic rank fraction")->capture_default_str();
  app->add_option("--field", o.field, "synthetic field")
      ->check(CLI::IsMember({"real", "complex"}))
      ->capture_default_str();
}

void add_gsv_flags(CLI::App* app, CommonOptions& o) {
  app->add_option("--method", o.method, "randomized or direct")
      ->check(CLI::IsMember({"randomized", "direct"}))
      ->capture_default_str();
  app->add_option("--classify-tol", o.classify_tol, "threshold for exact 0/1 values")
      ->capture_default_str();
}

void add_output_flags(CLI::App* app, CommonOptions& o) {
  app->add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--out", o.out, "output path, '-' for stdout")->capture_default_str();
}

ExtractionConfig extraction(const CommonOptions& o) {
  ExtractionConfig c;
  c.tol = o.tol;
  c.rel_tol = o.rel_tol;
  c.blocksize = o.blocksize;
  c.max_cols = o.max_cols;
  c.trim_tol = o.trim_tol;
  c.seed = o.seed;
  return c;
}

RunConfig run_config(const CommonOptions& o) {
  RunConfig cfg;
  if (!o.g1.empty()) {
    cfg.inputs = std::make_pair(std::filesystem::path(o.g1), std::filesystem::path(o.g2));
  } else if (o.synth_n > 0) {
    cfg.synth = SynthSpec{o.synth_m, o.synth_p, o.synth_n, o.rank_frac, o.seed,
                          parse_field(o.field)};
  } else {
    fail(ErrorKind::invalid_argument, "need --g1/--g2 or --m/--p/--n");
  }
  cfg.options.extraction = extraction(o);
  cfg.options.method = parse_method(o.method);
  cfg.options.classify_tol = o.classify_tol;
  cfg.output = o.out;
  cfg.format = parse_report_format(o.format);
  cfg.repetitions = o.reps;
  return cfg;
}

ReportMeta meta_for(const CommonOptions& o) {
  return ReportMeta{o.method, o.seed, o.tol.value_or(o.rel_tol), o.classify_tol};
}

template <typename Fn>
void emit(const std::string& out, Fn&& write) {
  if (out == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream f(out);
  if (!f) fail(ErrorKind::io, "cannot write '" + out + "'");
  write(f);
  if (!f) fail(ErrorKind::io, "write failed for '" + out + "'");
}

void cmd_gsv(const CommonOptions& o) {
  const RunConfig cfg = run_config(o);
  const AnyPair pair = load_pair(cfg);
  const GsvSpectrum s =
      std::visit([&](const auto& p) { return compute_gsv(p, cfg.options); }, pair);
  emit(o.out, [&](std::ostream& out) { write_report(out, s, meta_for(o), cfg.format); });
}

void cmd_compare(const CommonOptions& o) {
  const RunConfig cfg = run_config(o);
  const AnyPair pair = load_pair(cfg);
  const ComparativeReport r =
      std::visit([&](const auto& p) { return compare(p, cfg.options); }, pair);
  emit(o.out, [&](std::ostream& out) { write_report(out, r, cfg.format); });
}

void cmd_extract(const CommonOptions& o, const std::string& input, const std::string& basis_out) {
  const AnyMatrix g = read_matrix(input);
  const ExtractionConfig cfg = extraction(o);
  std::visit(
      [&](const auto& m) {
        const auto basis = extract_basis(m, cfg);
        std::cerr << "rgsv: extract: " << basis.q.cols() << " columns, "
                  << (basis.converged ? "converged" : "stopped at the column cap") << '\n';
        if (!basis_out.empty()) write_matrix(basis_out, basis.q);
        emit(o.out, [&](std::ostream& out) { write_residual_history(out, basis.residual_history); });
      },
      g);
}

void cmd_synth(const CommonOptions& o, const std::string& dir) {
  if (o.synth_n <= 0) fail(ErrorKind::invalid_argument, "synth needs --m, --p and --n");
  const SynthSpec spec{o.synth_m, o.synth_p, o.synth_n, o.rank_frac, o.seed, parse_field(o.field)};
  const std::filesystem::path base(dir);
  std::filesystem::create_directories(base);
  const ReportMeta meta{"synthetic", o.seed, 0.0, 0.0};
  const ReportFormat format = parse_report_format(o.format);
  const std::string truth = format == ReportFormat::json ? "truth.json" : "truth.csv";
  auto save = [&](const auto& r) {
    write_matrix(base / "g1.mtx", r.pair.g1());
    write_matrix(base / "g2.mtx", r.pair.g2());
    write_report(base / truth, r.true_spectrum, meta, format);
    std::cerr << "rgsv: synth: wrote " << (base / "g1.mtx").string() << ", "
              << (base / "g2.mtx").string() << ", " << (base / truth).string()
              << " (cond(R) = " << format_double(r.condition_r) << ")\n";
  };
  if (spec.field == Field::complex) {
    save(synth_gmp<std::complex<double>>(spec));
  } else {
    save(synth_gmp<double>(spec));
  }
}

void cmd_bench(const CommonOptions& o) {
  const RunConfig cfg = run_config(o);
  const std::vector<BenchRecord> records = run_bench(cfg);
  emit(o.out, [&](std::ostream& out) { write_report(out, records, cfg.format); });
  for (GsvMethod m : cfg.methods) {
    std::cerr << "rgsv: bench: median " << to_string(m) << ' '
              << format_double(median_seconds(records, m)) << " s\n";
  }
}

void cmd_bounds(const CommonOptions& o) {
  const RunConfig cfg = run_config(o);
  const AnyPair pair = load_pair(cfg);
  const BoundCertificate c = std::visit(
      [&](const auto& p) { return certify_randomized(p, cfg.options).certificate; }, pair);
  emit(o.out, [&](std::ostream& out) { write_report(out, c, cfg.format); });
}

int exit_code(ErrorKind kind) { return 10 + static_cast<int>(kind); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized generalized singular values of a matrix pair"};
  app.require_subcommand(1);

  CommonOptions o;
  std::string extract_input;
  std::string basis_out;
  std::string synth_dir = ".";

  auto* gsv = app.add_subcommand("gsv", "generalized singular values");
  auto* cmp = app.add_subcommand("compare", "comparative-analysis report");
  auto* ext = app.add_subcommand("extract", "basis extraction with residual history");
  auto* syn = app.add_subcommand("synth", "generate a pair with a known spectrum");
  auto* bench = app.add_subcommand("bench", "timing table for both methods");
  auto* bounds = app.add_subcommand("bounds", "error certificate for a randomized run");

  for (CLI::App* sub : {gsv, cmp, bench, bounds}) {
    add_input_flags(sub, o);
    add_extraction_flags(sub, o);
    add_gsv_flags(sub, o);
    add_output_flags(sub, o);
  }
  bench->add_option("--reps", o.reps, "repetitions per method")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ext->add_option("--input", extract_input, "matrix to compress")->required();
  ext->add_option("--basis-out", basis_out, "write Q to this Matrix Market file");
  add_extraction_flags(ext, o);
  add_output_flags(ext, o);

  syn->add_option("--m", o.synth_m, "rows of G1")->required();
  syn->add_option("--p", o.synth_p, "rows of G2")->required();
  syn->add_option("--n", o.synth_n, "columns")->required();
  syn->add_option("--rank-frac", o.rank_frac, "rank fraction")->capture_default_str();
  syn->add_option("--field", o.field, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}))
      ->capture_default_str();
  syn->add_option("--seed", o.seed, "seed")->envname("RGSV_SEED")->capture_default_str();
  syn->add_option("--format", o.format, "truth file format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  syn->add_option("--out-dir", synth_dir, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*gsv) cmd_gsv(o);
    if (*cmp) cmd_compare(o);
    if (*ext) cmd_extract(o, extract_input, basis_out);
    if (*syn) cmd_synth(o, synth_dir);
    if (*bench) cmd_bench(o);
    if (*bounds) cmd_bounds(o);
  } catch (const Error& e) {
    std::cerr << "rgsv: error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "rgsv: error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
