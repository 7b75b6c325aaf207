#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jcrev/error.hpp"
#include "jcrev/fock.hpp"

namespace jcrev::scan {

enum class Method : std::uint8_t { exact, xproj, series, analytic };

inline constexpr std::array<Method, 4> kAllMethods{Method::exact, Method::xproj, Method::series,
                                                   Method::analytic};

std::string_view method_name(Method m);
/// Throws std::invalid_argument on an unknown name.
Method parse_method(std::string_view name);

class MethodSet {
 public:
  constexpr MethodSet() = default;
  static constexpr MethodSet all() { return MethodSet(0b1111); }

  /// Comma-separated list such as "exact,analytic". Throws
  /// std::invalid_argument on unknown or empty entries.
  static MethodSet parse(std::string_view csv);

  constexpr bool contains(Method m) const { return (bits_ >> static_cast<unsigned>(m)) & 1u; }
  constexpr MethodSet& insert(Method m) {
    bits_ |= static_cast<std::uint8_t>(1u << static_cast<unsigned>(m));
    return *this;
  }
  constexpr bool empty() const { return bits_ == 0; }
  /// Partial-trace quantities are needed.
  constexpr bool needs_density() const { return contains(Method::exact) || contains(Method::xproj); }
  std::string to_string() const;

  friend constexpr bool operator==(MethodSet, MethodSet) = default;

 private:
  constexpr explicit MethodSet(std::uint8_t bits) : bits_(bits) {}
  std::uint8_t bits_ = 0;
};

struct ScanConfig {
  double alpha = 10.0;
  double tau_start = 0.0;
  double tau_end = 200.0;
  int steps = 4001;
  MethodSet methods = MethodSet::all();
  double tail_tolerance = fock::kDefaultTailTolerance;
  int k_window = 2;
  int workers = 1;

  /// Throws std::invalid_argument when the configuration is unusable.
  void validate() const;
  double tau_at(int i) const;
};

/// One grid point. Columns that were not requested stay empty.
struct ScanRow {
  double tau = 0.0;
  std::optional<double> c_exact;
  std::optional<double> c_xproj;
  std::optional<double> c_series;
  std::optional<double> c_analytic;
  std::optional<double> abs_z;
  std::optional<double> a;
  std::optional<double> d;
  std::optional<double> max_offx;
  std::optional<double> trace_err;
  std::optional<double> branch_w_minus;

  std::optional<double> concurrence(Method m) const;
};

struct ScanMetadata {
  double alpha = 0.0;
  int n_max = 0;
  double tail_mass = 0.0;
  bool analytic_in_domain = false;
  ScanConfig config;
};

struct ConcurrenceSeries {
  ScanMetadata meta;
  std::vector<ScanRow> rows;
};

/// A failure at one grid point, with the offending tau.
class ScanFailure : public NumericalError {
 public:
  ScanFailure(double tau, const std::string& what);
  double tau() const { return tau_; }

 private:
  double tau_;
};

/// Sweeps the tau grid, fanning grid points across config.workers threads.
/// Output is identical for any worker count.
ConcurrenceSeries run_scan(const ScanConfig& config);

// ---------------------------------------------------------------------------
// Revival detection

struct PeakOptions {
  Method column = Method::exact;
  double threshold = 0.05;
  /// Samples below this count as zero concurrence.
  double zero_level = 1e-6;
  /// Half-width of the window around each revival center in which
  /// zero-level crossings are counted.
  double crossing_half_width = 2.0;
};

struct DetectedPeak {
  /// Revival index round(center / (2 pi alpha)); 0 for the initial lobe or
  /// when alpha = 0.
  int k = 0;
  double center = 0.0;
  double height = 0.0;
  std::optional<double> predicted_center;
  std::optional<double> predicted_height;
  std::optional<double> center_error;
  std::optional<double> relative_height_error;
  /// Zero-level crossings per available method inside the crossing window.
  std::map<Method, int> zero_crossings;
};

struct CollapseWindow {
  int k_left = 0;  // window lies between revival k_left and k_left + 1
  double start = 0.0;
  double end = 0.0;
  double max_value = 0.0;
};

struct PeakReport {
  double alpha = 0.0;
  Method column = Method::exact;
  double threshold = 0.05;
  std::vector<DetectedPeak> peaks;
  std::vector<CollapseWindow> collapse_windows;
  std::optional<double> mean_peak_spacing;

  const DetectedPeak* find_revival(int k) const;
};

PeakReport detect_peaks(const ConcurrenceSeries& series, const PeakOptions& options = {});

/// Number of transitions across the zero level between consecutive samples
/// of `column` with |tau - center| <= half_width. Empty cells are skipped.
int count_zero_crossings(const ConcurrenceSeries& series, Method column, double center,
                         double half_width, double zero_level = 1e-6);

}  // namespace jcrev::scan
