#include "rgsv/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace rgsv {

namespace {

using json = nlohmann::json;

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  fail(ErrorKind::parse, "line " + std::to_string(line) + ": " + what);
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_double(std::string_view tok, std::size_t line) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || tok.empty()) {
    parse_fail(line, "not a number: '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) parse_fail(line, "non-finite value '" + std::string(tok) + "'");
  return v;
}

Index parse_index(std::string_view tok, std::size_t line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    parse_fail(line, "not an integer: '" + std::string(tok) + "'");
  }
  return static_cast<Index>(v);
}

enum class MmSymmetry { general, symmetric, skew, hermitian };

struct MmHeader {
  bool coordinate = false;
  std::string field;
  MmSymmetry symmetry = MmSymmetry::general;
};

MmHeader parse_banner(const std::string& line) {
  const auto toks = split_ws(line);
  if (toks.size() != 5 || lower(toks[0]) != "%%matrixmarket" || lower(toks[1]) != "matrix") {
    parse_fail(1, "malformed Matrix Market banner");
  }
  MmHeader h;
  const std::string format = lower(toks[2]);
  if (format == "coordinate") {
    h.coordinate = true;
  } else if (format != "array") {
    parse_fail(1, "unknown format '" + format + "'");
  }
  h.field = lower(toks[3]);
  if (h.field != "real" && h.field != "integer" && h.field != "complex" && h.field != "pattern" &&
      h.field != "double") {
    parse_fail(1, "unsupported field '" + h.field + "'");
  }
  if (h.field == "double") h.field = "real";
  if (h.field == "pattern" && !h.coordinate) parse_fail(1, "pattern requires coordinate format");
  const std::string sym = lower(toks[4]);
  if (sym == "general") {
    h.symmetry = MmSymmetry::general;
  } else if (sym == "symmetric") {
    h.symmetry = MmSymmetry::symmetric;
  } else if (sym == "skew-symmetric") {
    h.symmetry = MmSymmetry::skew;
  } else if (sym == "hermitian") {
    h.symmetry = MmSymmetry::hermitian;
  } else {
    parse_fail(1, "unknown symmetry '" + sym + "'");
  }
  if (h.symmetry == MmSymmetry::hermitian && h.field != "complex") {
    parse_fail(1, "hermitian requires complex field");
  }
  return h;
}

std::complex<double> mirror(std::complex<double> v, MmSymmetry sym) {
  switch (sym) {
    case MmSymmetry::skew: return -v;
    case MmSymmetry::hermitian: return std::conj(v);
    default: return v;
  }
}

}  // namespace

AnyMatrix parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) parse_fail(1, "empty input");
  ++lineno;
  const MmHeader h = parse_banner(line);
  const bool is_complex = h.field == "complex";

  // size line, skipping comments and blanks
  std::vector<std::string_view> toks;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    toks = split_ws(t);
    break;
  }
  const std::size_t want = h.coordinate ? 3 : 2;
  if (toks.size() != want) parse_fail(lineno, "malformed size line");
  const Index rows = parse_index(toks[0], lineno);
  const Index cols = parse_index(toks[1], lineno);
  if (rows < 0 || cols < 0) parse_fail(lineno, "negative dimension");
  if (h.symmetry != MmSymmetry::general && rows != cols) {
    parse_fail(lineno, "symmetric storage requires a square matrix");
  }
  const Index entries = h.coordinate ? parse_index(toks[2], lineno)
                        : h.symmetry == MmSymmetry::general ? rows * cols
                        : h.symmetry == MmSymmetry::skew    ? rows * (rows - 1) / 2
                                                            : rows * (rows + 1) / 2;
  if (entries < 0) parse_fail(lineno, "negative entry count");

  ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
  const std::size_t values_per_entry = h.field == "pattern" ? 0 : (is_complex ? 2 : 1);
  const std::size_t index_tokens = h.coordinate ? 2 : 0;

  // array entries run down columns, lower triangle only for symmetric storage
  Index ai = h.symmetry == MmSymmetry::skew ? 1 : 0;
  Index aj = 0;
  Index read = 0;
  while (read < entries && std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    toks = split_ws(t);
    if (toks.size() != index_tokens + values_per_entry) {
      parse_fail(lineno, "expected " + std::to_string(index_tokens + values_per_entry) +
                             " fields, got " + std::to_string(toks.size()));
    }
    Index i = 0;
    Index j = 0;
    if (h.coordinate) {
      i = parse_index(toks[0], lineno) - 1;
      j = parse_index(toks[1], lineno) - 1;
      if (i < 0 || i >= rows || j < 0 || j >= cols) parse_fail(lineno, "index out of range");
      if (h.symmetry != MmSymmetry::general && i < j) {
        parse_fail(lineno, "entry above the diagonal in symmetric storage");
      }
      if (h.symmetry == MmSymmetry::skew && i == j) {
        parse_fail(lineno, "diagonal entry in skew-symmetric storage");
      }
    } else {
      i = ai;
      j = aj;
    }
    std::complex<double> v(1.0, 0.0);
    if (values_per_entry >= 1) v = parse_double(toks[index_tokens], lineno);
    if (values_per_entry == 2) v.imag(parse_double(toks[index_tokens + 1], lineno));
    if (h.field == "integer") {
      if (v.real() != std::floor(v.real())) parse_fail(lineno, "non-integer value in integer field");
    }
    m(i, j) += v;
    if (h.symmetry != MmSymmetry::general && i != j) m(j, i) += mirror(v, h.symmetry);
    if (h.symmetry == MmSymmetry::hermitian && i == j && v.imag() != 0.0) {
      parse_fail(lineno, "hermitian diagonal must be real");
    }

    if (!h.coordinate) {
      ++ai;
      if (ai >= rows) {
        ++aj;
        ai = h.symmetry == MmSymmetry::general ? 0 : (h.symmetry == MmSymmetry::skew ? aj + 1 : aj);
      }
    }
    ++read;
  }
  if (read < entries) {
    parse_fail(lineno, "expected " + std::to_string(entries) + " entries, found " +
                           std::to_string(read));
  }
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (!t.empty() && t.front() != '%') parse_fail(lineno, "trailing data after the last entry");
  }

  if (is_complex) return m;
  return RealMatrix(m.real());
}

RealMatrix parse_csv_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = t.find(',', start);
      row.push_back(parse_double(t.substr(start, comma - start), lineno));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      parse_fail(lineno, "row has " + std::to_string(row.size()) + " columns, expected " +
                             std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) parse_fail(lineno, "no data");
  RealMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

AnyMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::io, "cannot open '" + path.string() + "'");
  try {
    const int first = in.peek();
    if (first == '%') return parse_matrix_market(in);
    return parse_csv_matrix(in);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::parse) throw;
    fail(ErrorKind::parse, path.string() + ": " + e.what());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

template <typename Scalar>
void write_matrix(const std::filesystem::path& path, const Matrix<Scalar>& m) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path.string() + "'");
  if (lower(path.extension().string()) == ".csv") {
    if constexpr (is_complex_v<Scalar>) {
      fail(ErrorKind::invalid_argument, "CSV output supports real matrices only");
    } else {
      for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
          if (j > 0) out << ',';
          out << format_double(m(i, j));
        }
        out << '\n';
      }
    }
  } else {
    out << "%%MatrixMarket matrix array " << (is_complex_v<Scalar> ? "complex" : "real")
        << " general\n"
        << m.rows() << ' ' << m.cols() << '\n';
    for (Index j = 0; j < m.cols(); ++j) {
      for (Index i = 0; i < m.rows(); ++i) {
        if constexpr (is_complex_v<Scalar>) {
          out << format_double(m(i, j).real()) << ' ' << format_double(m(i, j).imag()) << '\n';
        } else {
          out << format_double(m(i, j)) << '\n';
        }
      }
    }
  }
  if (!out) fail(ErrorKind::io, "write failed for '" + path.string() + "'");
}

template void write_matrix<double>(const std::filesystem::path&, const RealMatrix&);
template void write_matrix<std::complex<double>>(const std::filesystem::path&,
                                                 const ComplexMatrix&);

namespace {

// JSON cannot hold infinities; they are written as strings.
json number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

json numbers(const std::vector<double>& xs) {
  json a = json::array();
  for (double x : xs) a.push_back(number(x));
  return a;
}

json numbers(const RealVector& xs) {
  json a = json::array();
  for (Index i = 0; i < xs.size(); ++i) a.push_back(number(xs(i)));
  return a;
}

double read_number(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    fail(ErrorKind::parse, "report: unexpected string '" + s + "'");
  }
  return j.get<double>();
}

std::vector<double> read_numbers(const json& j) {
  std::vector<double> out;
  for (const json& x : j) out.push_back(read_number(x));
  return out;
}

json meta_json(const ReportMeta& meta) {
  return json{{"method", meta.method},
              {"seed", meta.seed},
              {"tol", number(meta.tol)},
              {"classify_tol", number(meta.classify_tol)}};
}

void write_meta_csv(std::ostream& out, const ReportMeta& meta) {
  out << "method," << meta.method << '\n'
      << "seed," << meta.seed << '\n'
      << "tol," << format_double(meta.tol) << '\n'
      << "classify_tol," << format_double(meta.classify_tol) << '\n';
}

}  // namespace

void write_report(std::ostream& out, const ComparativeReport& report, ReportFormat format) {
  const GsvSpectrum& s = report.spectrum;
  if (format == ReportFormat::json) {
    json j{{"n", s.n()},
           {"alpha", numbers(s.alphas)},
           {"beta", numbers(s.betas)},
           {"rho", numbers(report.rho)},
           {"theta", numbers(report.theta)},
           {"p1", numbers(report.p1)},
           {"p2", numbers(report.p2)},
           {"d1", number(report.d1)},
           {"d2", number(report.d2)},
           {"r", s.r},
           {"s", s.s},
           {"meta", meta_json(report.meta)}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "l,alpha,beta,rho,theta,p1,p2\n";
  for (Index i = 0; i < s.n(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    out << i + 1 << ',' << format_double(s.alphas(i)) << ',' << format_double(s.betas(i)) << ','
        << format_double(report.rho[k]) << ',' << format_double(report.theta[k]) << ','
        << format_double(report.p1[k]) << ',' << format_double(report.p2[k]) << '\n';
  }
  out << "\nkey,value\n"
      << "d1," << format_double(report.d1) << '\n'
      << "d2," << format_double(report.d2) << '\n'
      << "r," << s.r << '\n'
      << "s," << s.s << '\n';
  write_meta_csv(out, report.meta);
}

void write_report(std::ostream& out, const GsvSpectrum& s, const ReportMeta& meta,
                  ReportFormat format) {
  if (format == ReportFormat::json) {
    json j{{"n", s.n()},         {"alpha", numbers(s.alphas)}, {"beta", numbers(s.betas)},
           {"r", s.r},           {"s", s.s},                   {"meta", meta_json(meta)}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "l,alpha,beta\n";
  for (Index i = 0; i < s.n(); ++i) {
    out << i + 1 << ',' << format_double(s.alphas(i)) << ',' << format_double(s.betas(i)) << '\n';
  }
  out << "\nkey,value\n"
      << "r," << s.r << '\n'
      << "s," << s.s << '\n';
  write_meta_csv(out, meta);
}

void write_report(std::ostream& out, const BoundCertificate& c, ReportFormat format) {
  if (format == ReportFormat::json) {
    json j{{"eta", number(c.eta)},
           {"e_script", number(c.e_script)},
           {"theta_bound", number(c.theta_bound)},
           {"p1_bounds", numbers(c.p1_bounds)},
           {"p2_bounds", numbers(c.p2_bounds)},
           {"d1_bound", number(c.d1_bound)},
           {"d2_bound", number(c.d2_bound)},
           {"vacuous", c.vacuous}};
    out << j.dump(2) << '\n';
    return;
  }
  out << "l,p1_bound,p2_bound\n";
  for (std::size_t i = 0; i < c.p1_bounds.size(); ++i) {
    out << i + 1 << ',' << format_double(c.p1_bounds[i]) << ','
        << format_double(i < c.p2_bounds.size() ? c.p2_bounds[i] : 0.0) << '\n';
  }
  out << "\nkey,value\n"
      << "eta," << format_double(c.eta) << '\n'
      << "e_script," << format_double(c.e_script) << '\n'
      << "theta_bound," << format_double(c.theta_bound) << '\n'
      << "d1_bound," << format_double(c.d1_bound) << '\n'
      << "d2_bound," << format_double(c.d2_bound) << '\n'
      << "vacuous," << (c.vacuous ? "true" : "false") << '\n';
}

void write_report(std::ostream& out, const std::vector<BenchRecord>& records,
                  ReportFormat format) {
  if (format == ReportFormat::json) {
    json a = json::array();
    for (const BenchRecord& r : records) {
      a.push_back(json{{"method", r.method},
                       {"repetition", r.repetition},
                       {"seconds", number(r.seconds)},
                       {"spectrum_error",
                        r.spectrum_error ? number(*r.spectrum_error) : json(nullptr)},
                       {"residual1", number(r.residual1)},
                       {"residual2", number(r.residual2)},
                       {"m", r.m},
                       {"p", r.p},
                       {"n", r.n},
                       {"l1", r.l1},
                       {"l2", r.l2}});
    }
    out << a.dump(2) << '\n';
    return;
  }
  out << "method,repetition,seconds,spectrum_error,residual1,residual2,m,p,n,l1,l2\n";
  for (const BenchRecord& r : records) {
    out << r.method << ',' << r.repetition << ',' << format_double(r.seconds) << ','
        << (r.spectrum_error ? format_double(*r.spectrum_error) : std::string()) << ','
        << format_double(r.residual1) << ',' << format_double(r.residual2) << ',' << r.m << ','
        << r.p << ',' << r.n << ',' << r.l1 << ',' << r.l2 << '\n';
  }
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::io, "cannot write '" + path.string() + "'");
  return out;
}

}  // namespace

template <typename Report>
void write_report(const std::filesystem::path& path, const Report& report, ReportFormat format) {
  std::ofstream out = open_output(path);
  write_report(out, report, format);
  if (!out) fail(ErrorKind::io, "write failed for '" + path.string() + "'");
}

template void write_report<ComparativeReport>(const std::filesystem::path&,
                                              const ComparativeReport&, ReportFormat);
template void write_report<BoundCertificate>(const std::filesystem::path&, const BoundCertificate&,
                                             ReportFormat);
template void write_report<std::vector<BenchRecord>>(const std::filesystem::path&,
                                                     const std::vector<BenchRecord>&,
                                                     ReportFormat);

void write_report(const std::filesystem::path& path, const GsvSpectrum& spectrum,
                  const ReportMeta& meta, ReportFormat format) {
  std::ofstream out = open_output(path);
  write_report(out, spectrum, meta, format);
  if (!out) fail(ErrorKind::io, "write failed for '" + path.string() + "'");
}

void write_residual_history(std::ostream& out, const std::vector<double>& history) {
  out << "iteration,residual\n";
  for (std::size_t i = 0; i < history.size(); ++i) {
    out << i << ',' << format_double(history[i]) << '\n';
  }
}

ComparativeReport parse_report_json(std::istream& in) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::parse, std::string("report: ") + e.what());
  }
  try {
    ComparativeReport r;
    const std::vector<double> a = read_numbers(j.at("alpha"));
    const std::vector<double> b = read_numbers(j.at("beta"));
    if (a.size() != b.size()) fail(ErrorKind::parse, "report: alpha and beta differ in length");
    r.spectrum.alphas = Eigen::Map<const RealVector>(a.data(), static_cast<Index>(a.size()));
    r.spectrum.betas = Eigen::Map<const RealVector>(b.data(), static_cast<Index>(b.size()));
    r.spectrum.r = j.at("r").get<Index>();
    r.spectrum.s = j.at("s").get<Index>();
    r.rho = read_numbers(j.at("rho"));
    r.theta = read_numbers(j.at("theta"));
    r.p1 = read_numbers(j.at("p1"));
    r.p2 = read_numbers(j.at("p2"));
    r.d1 = read_number(j.at("d1"));
    r.d2 = read_number(j.at("d2"));
    const json& m = j.at("meta");
    r.meta.method = m.at("method").get<std::string>();
    r.meta.seed = m.at("seed").get<std::uint64_t>();
    r.meta.tol = read_number(m.at("tol"));
    r.meta.classify_tol = read_number(m.at("classify_tol"));
    return r;
  } catch (const json::exception& e) {
    fail(ErrorKind::parse, std::string("report: ") + e.what());
  }
}

}  // namespace rgsv
