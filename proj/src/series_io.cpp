#include "jcrev/series_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "jcrev/error.hpp"

namespace jcrev::io {

namespace {

using scan::ScanRow;

// Column accessors in CSV order, tau excluded.
using Field = std::optional<double> ScanRow::*;
constexpr std::array<Field, 10> kFields{
    &ScanRow::c_exact, &ScanRow::c_xproj, &ScanRow::c_series,  &ScanRow::c_analytic,
    &ScanRow::abs_z,   &ScanRow::a,       &ScanRow::d,         &ScanRow::max_offx,
    &ScanRow::trace_err, &ScanRow::branch_w_minus};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

double parse_double(std::string_view text, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw FormatError("line " + std::to_string(line_no) + ": cannot parse '" + std::string(text) + "'");
  return v;
}

nlohmann::json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

void write_csv(std::ostream& os, const scan::ConcurrenceSeries& series) {
  os << kCsvHeader << '\n';
  std::string line;
  for (const auto& row : series.rows) {
    line = format_double(row.tau);
    for (Field f : kFields) {
      line += ',';
      if (const auto& v = row.*f) line += format_double(*v);
    }
    line += '\n';
    os << line;
  }
}

scan::ConcurrenceSeries read_csv(std::istream& is) {
  scan::ConcurrenceSeries series;
  series.meta.alpha = std::numeric_limits<double>::quiet_NaN();

  std::string line;
  std::size_t line_no = 0;
  const auto next_line = [&]() -> bool {
    if (!std::getline(is, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw FormatError("empty input: missing CSV header");
  if (line != kCsvHeader) throw FormatError("unexpected CSV header: '" + line + "'");

  while (next_line()) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != kFields.size() + 1)
      throw FormatError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(kFields.size() + 1) + " fields, got " +
                        std::to_string(cells.size()));
    ScanRow row;
    if (cells[0].empty()) throw FormatError("line " + std::to_string(line_no) + ": missing tau");
    row.tau = parse_double(cells[0], line_no);
    for (std::size_t i = 0; i < kFields.size(); ++i)
      if (!cells[i + 1].empty()) row.*kFields[i] = parse_double(cells[i + 1], line_no);
    if (!series.rows.empty() && !(row.tau > series.rows.back().tau))
      throw FormatError("line " + std::to_string(line_no) + ": tau values must increase strictly");
    series.rows.push_back(row);
  }
  return series;
}

nlohmann::json config_to_json(const scan::ScanConfig& c) {
  return {{"alpha", c.alpha},     {"tau_start", c.tau_start},
          {"tau_end", c.tau_end}, {"steps", c.steps},
          {"methods", c.methods.to_string()},
          {"tail_tolerance", c.tail_tolerance},
          {"k_window", c.k_window},
          {"workers", c.workers}};
}

nlohmann::json metadata_to_json(const scan::ScanMetadata& m) {
  return {{"alpha", m.alpha},
          {"n_max", m.n_max},
          {"tail_mass", m.tail_mass},
          {"analytic_in_domain", m.analytic_in_domain},
          {"config", config_to_json(m.config)}};
}

nlohmann::json series_to_json(const scan::ConcurrenceSeries& series) {
  nlohmann::json columns = nlohmann::json::array();
  for (const auto name : split(kCsvHeader)) columns.push_back(std::string(name));
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : series.rows) {
    nlohmann::json r = nlohmann::json::array({row.tau});
    for (Field f : kFields) r.push_back(optional_json(row.*f));
    rows.push_back(std::move(r));
  }
  return {{"schema", kScanSchema},
          {"metadata", metadata_to_json(series.meta)},
          {"columns", std::move(columns)},
          {"rows", std::move(rows)}};
}

nlohmann::json report_to_json(const scan::PeakReport& report) {
  nlohmann::json peaks = nlohmann::json::array();
  for (const auto& p : report.peaks) {
    nlohmann::json crossings = nlohmann::json::object();
    for (const auto& [m, count] : p.zero_crossings) crossings[std::string(scan::method_name(m))] = count;
    peaks.push_back({{"k", p.k},
                     {"center", p.center},
                     {"height", p.height},
                     {"predicted_center", optional_json(p.predicted_center)},
                     {"predicted_height", optional_json(p.predicted_height)},
                     {"center_error", optional_json(p.center_error)},
                     {"relative_height_error", optional_json(p.relative_height_error)},
                     {"zero_crossings", std::move(crossings)}});
  }
  nlohmann::json windows = nlohmann::json::array();
  for (const auto& w : report.collapse_windows)
    windows.push_back({{"k_left", w.k_left}, {"start", w.start}, {"end", w.end}, {"max", w.max_value}});

  nlohmann::json notes = nlohmann::json::array();
  if (report.alpha == 0.0 && report.mean_peak_spacing)
    notes.push_back("alpha = 0: vacuum fields have no revival centers; peaks repeat with mean spacing " +
                    format_double(*report.mean_peak_spacing) + " (Rabi period pi)");
  if (report.peaks.empty()) notes.push_back("no peaks above threshold");

  return {{"schema", kReportSchema},
          {"alpha", std::isfinite(report.alpha) ? nlohmann::json(report.alpha) : nlohmann::json(nullptr)},
          {"column", std::string(scan::method_name(report.column))},
          {"threshold", report.threshold},
          {"peaks", std::move(peaks)},
          {"collapse_windows", std::move(windows)},
          {"mean_peak_spacing", optional_json(report.mean_peak_spacing)},
          {"notes", std::move(notes)}};
}

}  // namespace jcrev::io
