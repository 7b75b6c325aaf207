#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include <json.hpp>

#include "jcrev/scan.hpp"

namespace jcrev::io {

inline constexpr std::string_view kCsvHeader =
    "tau,C_exact,C_xproj,C_series,C_analytic,abs_z,a,d,max_offx,trace_err,branch_w_minus";
inline constexpr std::string_view kScanSchema = "jcrev.scan/1";
inline constexpr std::string_view kReportSchema = "jcrev.report/1";

/// Shortest decimal form with 17 significant digits.
std::string format_double(double v);

/// Header plus one line per row; absent columns are empty fields.
void write_csv(std::ostream& os, const scan::ConcurrenceSeries& series);

/// Inverse of write_csv. Metadata is left default except meta.alpha = NaN;
/// callers fill it from the manifest. Throws FormatError.
scan::ConcurrenceSeries read_csv(std::istream& is);

nlohmann::json config_to_json(const scan::ScanConfig& config);
nlohmann::json metadata_to_json(const scan::ScanMetadata& meta);
nlohmann::json series_to_json(const scan::ConcurrenceSeries& series);
nlohmann::json report_to_json(const scan::PeakReport& report);

}  // namespace jcrev::io
