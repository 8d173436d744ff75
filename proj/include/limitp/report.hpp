#pragma once

// Machine-readable report output: CSV with a fixed header or a JSON array
// with the same keys. Floats use 12 significant digits; NaN is an empty CSV
// field or JSON null; infinities are written as "inf" / "-inf".

#include <string>
#include <string_view>
#include <vector>

#include "limitp/empirical.hpp"

namespace limitp {

enum class OutputFormat { csv, json };

inline constexpr std::string_view kCsvHeader = "x,observed,predicted,ratio,tail_bound,notes";

/// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEmptyReport = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitInadmissible = 4;
inline constexpr int kExitIo = 5;

std::string format_number(double v);
std::string format_reports(const std::vector<EmpiricalReport>& reports, OutputFormat format);
std::vector<EmpiricalReport> parse_reports(std::string_view text, OutputFormat format);

/// Writes to path ("-" or empty: stdout). Returns kExitOk, kExitEmptyReport
/// for an empty list, or kExitIo when the path cannot be written.
int emit_report(const std::vector<EmpiricalReport>& reports, OutputFormat format, const std::string& path);

}  // namespace limitp
