#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "rgsv/bench.hpp"
#include "rgsv/bounds.hpp"
#include "rgsv/comparative.hpp"
#include "rgsv/range_finder.hpp"

namespace rgsv {

using AnyMatrix = std::variant<RealMatrix, ComplexMatrix>;

/// Matrix Market (array or coordinate; real, integer, complex or pattern;
/// general, symmetric, skew-symmetric or hermitian) or headerless CSV.
/// Matrix Market is recognized by its banner, not the file name.
AnyMatrix read_matrix(const std::filesystem::path& path);
AnyMatrix parse_matrix_market(std::istream& in);
RealMatrix parse_csv_matrix(std::istream& in);

/// Matrix Market array format, or CSV when the path ends in ".csv" (real
/// only). Values carry 17 significant digits.
template <typename Scalar>
void write_matrix(const std::filesystem::path& path, const Matrix<Scalar>& m);

/// Shortest-roundtrip is not enough for golden files; this always prints 17
/// significant digits ("inf", "-inf", "nan" for non-finite values).
std::string format_double(double x);

void write_report(std::ostream& out, const ComparativeReport& report, ReportFormat format);
void write_report(std::ostream& out, const GsvSpectrum& spectrum, const ReportMeta& meta,
                  ReportFormat format);
void write_report(std::ostream& out, const BoundCertificate& cert, ReportFormat format);
void write_report(std::ostream& out, const std::vector<BenchRecord>& records, ReportFormat format);

template <typename Report>
void write_report(const std::filesystem::path& path, const Report& report, ReportFormat format);
void write_report(const std::filesystem::path& path, const GsvSpectrum& spectrum,
                  const ReportMeta& meta, ReportFormat format);

/// Residual history of an extraction as CSV (iteration, residual).
void write_residual_history(std::ostream& out, const std::vector<double>& history);

/// Inverse of the JSON form of write_report for a ComparativeReport.
ComparativeReport parse_report_json(std::istream& in);

}  // namespace rgsv
