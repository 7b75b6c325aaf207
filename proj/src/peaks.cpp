#include <algorithm>
#include <cmath>
#include <numbers>

#include "jcrev/analytic.hpp"
#include "jcrev/scan.hpp"

namespace jcrev::scan {

namespace {

struct Sample {
  double tau;
  double value;
};

std::vector<Sample> column_samples(const ConcurrenceSeries& series, Method column) {
  std::vector<Sample> out;
  out.reserve(series.rows.size());
  for (const auto& row : series.rows)
    if (const auto v = row.concurrence(column); v && std::isfinite(*v)) out.push_back({row.tau, *v});
  return out;
}

bool column_present(const ConcurrenceSeries& series, Method column) {
  return std::any_of(series.rows.begin(), series.rows.end(),
                     [&](const ScanRow& r) { return r.concurrence(column).has_value(); });
}

}  // namespace

const DetectedPeak* PeakReport::find_revival(int k) const {
  for (const auto& p : peaks)
    if (p.k == k) return &p;
  return nullptr;
}

int count_zero_crossings(const ConcurrenceSeries& series, Method column, double center,
                         double half_width, double zero_level) {
  int crossings = 0;
  std::optional<bool> prev_dead;
  for (const auto& row : series.rows) {
    if (std::abs(row.tau - center) > half_width) continue;
    const auto v = row.concurrence(column);
    if (!v || !std::isfinite(*v)) continue;
    const bool dead = *v < zero_level;
    if (prev_dead && *prev_dead != dead) ++crossings;
    prev_dead = dead;
  }
  return crossings;
}

PeakReport detect_peaks(const ConcurrenceSeries& series, const PeakOptions& options) {
  using std::numbers::pi;
  PeakReport report;
  report.alpha = series.meta.alpha;
  report.column = options.column;
  report.threshold = options.threshold;

  const auto samples = column_samples(series, options.column);
  if (samples.empty()) return report;
  const double alpha = series.meta.alpha;

  // Local maxima above threshold; the right edge of a plateau counts once.
  std::vector<Sample> candidates;
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = samples[i].value;
    if (!(v > options.threshold)) continue;
    const bool left_ok = i == 0 || v >= samples[i - 1].value;
    const bool right_ok = i + 1 == n || v > samples[i + 1].value;
    if (left_ok && right_ok) candidates.push_back(samples[i]);
  }

  // Merge peaks of one revival cluster: keep the tallest within the window.
  const double merge_window = pi * alpha / 2.0;
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Sample& x, const Sample& y) { return x.value > y.value; });
  std::vector<Sample> accepted;
  for (const auto& c : candidates) {
    const bool near = std::any_of(accepted.begin(), accepted.end(), [&](const Sample& a) {
      return std::abs(a.tau - c.tau) <= merge_window;
    });
    if (!near) accepted.push_back(c);
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const Sample& x, const Sample& y) { return x.tau < y.tau; });

  std::vector<Method> present;
  for (Method m : kAllMethods)
    if (column_present(series, m)) present.push_back(m);

  for (const auto& s : accepted) {
    DetectedPeak peak;
    peak.center = s.tau;
    peak.height = s.value;
    double crossing_center = s.tau;
    if (alpha > 0.0) {
      peak.k = static_cast<int>(std::lround(s.tau / (2.0 * pi * alpha)));
      if (peak.k >= 1) {
        const double predicted = analytic::revival_center(peak.k, alpha);
        const auto h = analytic::peak_height(peak.k, alpha);
        peak.predicted_center = predicted;
        peak.predicted_height = h.value;
        peak.center_error = s.tau - predicted;
        if (h.value > 0.0) peak.relative_height_error = std::abs(s.value - h.value) / h.value;
        crossing_center = predicted;
      }
    }
    for (Method m : present)
      peak.zero_crossings[m] = count_zero_crossings(series, m, crossing_center,
                                                    options.crossing_half_width, options.zero_level);
    report.peaks.push_back(std::move(peak));
  }

  if (report.peaks.size() >= 2)
    report.mean_peak_spacing = (report.peaks.back().center - report.peaks.front().center) /
                               static_cast<double>(report.peaks.size() - 1);

  // Middle half of each interval between consecutive revival centers,
  // counting tau = 0 as the zeroth center.
  if (alpha > 0.0) {
    const double period = 2.0 * pi * alpha;
    const double first = samples.front().tau;
    const double last = samples.back().tau;
    for (int k = 0;; ++k) {
      const double start = k * period + period / 4.0;
      const double end = (k + 1) * period - period / 4.0;
      if (end > last) break;
      if (start < first) continue;
      CollapseWindow w{k, start, end, 0.0};
      bool any = false;
      for (const auto& smp : samples) {
        if (smp.tau < start || smp.tau > end) continue;
        w.max_value = any ? std::max(w.max_value, smp.value) : smp.value;
        any = true;
      }
      if (any) report.collapse_windows.push_back(w);
    }
  }
  return report;
}

}  // namespace jcrev::scan
