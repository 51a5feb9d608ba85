#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rgsv/gsv.hpp"
#include "rgsv/synthetic.hpp"

namespace rgsv {

enum class ReportFormat { csv, json };
ReportFormat parse_report_format(std::string_view text);

/// One timed computation.
struct BenchRecord {
  std::string method;
  int repetition = 0;
  double seconds = 0.0;
  /// Largest elementwise |alpha - alpha_ref|, |beta - beta_ref| against the
  /// direct spectrum.
  std::optional<double> spectrum_error;
  double residual1 = 0.0;  ///< ||(I - Q1 Q1^H) G1||_F, 0 for the direct method
  double residual2 = 0.0;
  Index m = 0;
  Index p = 0;
  Index n = 0;
  Index l1 = 0;
  Index l2 = 0;
};

/// Inputs and settings of one CLI run: exactly one of `inputs` and `synth`.
struct RunConfig {
  std::optional<std::pair<std::filesystem::path, std::filesystem::path>> inputs;
  std::optional<SynthSpec> synth;
  GsvOptions options;
  std::filesystem::path output;
  ReportFormat format = ReportFormat::csv;
  int repetitions = 1;
  std::vector<GsvMethod> methods{GsvMethod::randomized, GsvMethod::direct};

  /// Throws ErrorKind::invalid_argument on a bad combination.
  void validate() const;
};

using AnyPair = std::variant<GmpPair<double>, GmpPair<std::complex<double>>>;

/// Loads the pair named by cfg, promoting to complex if either file is complex.
AnyPair load_pair(const RunConfig& cfg);

/// Times every requested method `repetitions` times on the same pair.
/// Repetition i uses seed derive_seed(base seed, i); methods alternate within
/// a repetition.
template <typename Scalar>
std::vector<BenchRecord> run_bench(const GmpPair<Scalar>& pair, const GsvOptions& opts,
                                   int repetitions, const std::vector<GsvMethod>& methods);

std::vector<BenchRecord> run_bench(const RunConfig& cfg);

/// Median wall time of the records for one method; NaN if there are none.
double median_seconds(const std::vector<BenchRecord>& records, GsvMethod method);

}  // namespace rgsv
