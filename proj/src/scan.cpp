#include "jcrev/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "jcrev/analytic.hpp"
#include "jcrev/density.hpp"
#include "jcrev/dynamics.hpp"
#include "jcrev/entanglement.hpp"

namespace jcrev::scan {

std::string_view method_name(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::xproj: return "xproj";
    case Method::series: return "series";
    case Method::analytic: return "analytic";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods)
    if (method_name(m) == name) return m;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

MethodSet MethodSet::parse(std::string_view csv) {
  MethodSet out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const std::size_t comma = std::min(csv.find(',', pos), csv.size());
    const std::string_view item = csv.substr(pos, comma - pos);
    if (item.empty()) throw std::invalid_argument("empty entry in method list");
    out.insert(parse_method(item));
    pos = comma + 1;
  }
  return out;
}

std::string MethodSet::to_string() const {
  std::string out;
  for (Method m : kAllMethods) {
    if (!contains(m)) continue;
    if (!out.empty()) out += ',';
    out += method_name(m);
  }
  return out;
}

void ScanConfig::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) throw std::invalid_argument("alpha must be finite and >= 0");
  if (!std::isfinite(tau_start) || !std::isfinite(tau_end) || tau_start < 0.0 || !(tau_end > tau_start))
    throw std::invalid_argument("tau range must satisfy 0 <= tau_start < tau_end");
  if (steps < 2) throw std::invalid_argument("steps must be >= 2");
  if (methods.empty()) throw std::invalid_argument("at least one method is required");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
    throw std::invalid_argument("tail tolerance must lie in (0, 1)");
  if (k_window < 0) throw std::invalid_argument("k window must be >= 0");
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (methods.contains(Method::analytic) && !(alpha > 0.0))
    throw std::invalid_argument("the analytic method needs alpha > 0");
}

double ScanConfig::tau_at(int i) const {
  if (i == steps - 1) return tau_end;
  return tau_start + (tau_end - tau_start) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

std::optional<double> ScanRow::concurrence(Method m) const {
  switch (m) {
    case Method::exact: return c_exact;
    case Method::xproj: return c_xproj;
    case Method::series: return c_series;
    case Method::analytic: return c_analytic;
  }
  return std::nullopt;
}

ScanFailure::ScanFailure(double tau, const std::string& what)
    : NumericalError("at tau = " + std::to_string(tau) + ": " + what), tau_(tau) {}

namespace {

struct PointContext {
  const ScanConfig& config;
  const fock::CoherentCoefficients& field;
  analytic::AnalyticParams analytic;
};

ScanRow evaluate_point(const PointContext& ctx, double tau) {
  const MethodSet methods = ctx.config.methods;
  ScanRow row;
  row.tau = tau;

  if (methods.needs_density()) {
    const auto state = dynamics::evolve_joint(ctx.field, ctx.field, tau);
    const auto rho = density::partial_trace(state);
    const auto x = density::x_project(rho);
    const auto cx = entanglement::concurrence_x(x);

    if (methods.contains(Method::exact)) row.c_exact = entanglement::concurrence_wootters(rho.rho).value;
    if (methods.contains(Method::xproj)) row.c_xproj = cx.value;
    row.abs_z = std::abs(x.z);
    row.a = x.a;
    row.d = x.d;
    row.max_offx = x.max_off_x;
    row.trace_err = std::abs(rho.rho.trace() - 1.0);
    row.branch_w_minus = cx.branches->w_branch;
  }

  if (methods.contains(Method::series)) {
    const auto s = density::x_elements_series(ctx.field, tau);
    const double z_branch = std::abs(s.z) - std::sqrt(std::max(s.a, 0.0) * std::max(s.d, 0.0));
    row.c_series = 2.0 * std::max(0.0, z_branch);
    if (!methods.needs_density()) {
      row.abs_z = std::abs(s.z);
      row.a = s.a;
      row.d = s.d;
    }
  }

  if (methods.contains(Method::analytic)) row.c_analytic = analytic::analytic_concurrence(tau, ctx.analytic);
  return row;
}

}  // namespace

ConcurrenceSeries run_scan(const ScanConfig& config) {
  config.validate();

  ConcurrenceSeries series;
  const auto field = fock::truncated_coherent_state(config.alpha, config.tail_tolerance);
  series.meta.alpha = config.alpha;
  series.meta.n_max = field.n_max;
  series.meta.tail_mass = field.tail_mass;
  series.meta.analytic_in_domain = analytic::AnalyticParams{config.alpha, config.k_window}.in_validity_domain();
  series.meta.config = config;

  const PointContext ctx{config, field, {config.alpha, config.k_window}};
  const std::size_t steps = static_cast<std::size_t>(config.steps);
  series.rows.resize(steps);
  std::vector<std::exception_ptr> failures(steps);

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < steps; i = next.fetch_add(1)) {
      const double tau = config.tau_at(static_cast<int>(i));
      try {
        series.rows[i] = evaluate_point(ctx, tau);
      } catch (const std::exception& e) {
        failures[i] = std::make_exception_ptr(ScanFailure(tau, e.what()));
      }
    }
  };

  const int threads = std::min<int>(config.workers, config.steps);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Report the first failing grid point regardless of scheduling.
  for (const auto& f : failures)
    if (f) std::rethrow_exception(f);
  return series;
}

}  // namespace jcrev::scan
