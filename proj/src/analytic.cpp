#include "jcrev/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jcrev::analytic {

namespace {

using std::numbers::pi;

void require_positive_alpha(double alpha, const char* who) {
  if (!(alpha > 0.0)) throw std::invalid_argument(std::string(who) + ": alpha must be positive");
}

}  // namespace

std::complex<double> saddle_integral(double tau, double alpha) {
  require_positive_alpha(alpha, "saddle_integral");
  const double a4 = std::pow(alpha, 4);
  return std::exp(-tau * tau / (32.0 * a4)) * std::polar(1.0, tau / (2.0 * alpha));
}

double q_of_t(double tau, const AnalyticParams& params) {
  require_positive_alpha(params.alpha, "q_of_t");
  if (tau < 0.0) throw std::invalid_argument("q_of_t: tau must be >= 0");
  if (params.k_window < 0) throw std::invalid_argument("q_of_t: k_window must be >= 0");
  const double alpha = params.alpha;
  const double a4 = std::pow(alpha, 4);

  double q = 0.25 * (std::exp(-tau * tau / (16.0 * a4)) - 1.0 +
                     std::exp(-0.5 * tau * tau) * std::cos(4.0 * alpha * tau));

  // Each revival term is localized around its own center, so only a window
  // of k around the nearest center contributes.
  const long k0 = std::lround(tau / (2.0 * pi * alpha));
  const long k_lo = std::max(1L, k0 - params.k_window);
  const long k_hi = std::max(k_lo, k0 + params.k_window);
  for (long k = k_lo; k <= k_hi; ++k) {
    const double kd = static_cast<double>(k);
    const double offset = tau - 2.0 * pi * kd * alpha;
    q += std::exp(-2.0 * offset * offset / (1.0 + pi * pi * kd * kd)) *
         std::cos(4.0 * alpha * offset) / (2.0 * pi * kd);
  }
  return q;
}

double analytic_concurrence(double tau, const AnalyticParams& params) {
  return 2.0 * std::max(0.0, q_of_t(tau, params));
}

double revival_center(int k, double alpha) {
  if (k < 1) throw std::invalid_argument("revival_center: k must be >= 1");
  return 2.0 * pi * k * alpha;
}

PeakHeight peak_height(int k, double alpha) {
  require_positive_alpha(alpha, "peak_height");
  const double tau = revival_center(k, alpha);
  const double raw = 0.5 * (2.0 / (pi * k) - 1.0 + std::exp(-tau * tau / (16.0 * std::pow(alpha, 4))));
  return {std::max(raw, 0.0), raw, raw < 0.0};
}

}  // namespace jcrev::analytic
