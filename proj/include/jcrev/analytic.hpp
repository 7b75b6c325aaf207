#pragma once

#include <complex>

namespace jcrev::analytic {

/// Coherent amplitude and the half-width of the revival-index window
/// summed around k0 = round(tau / (2 pi alpha)).
struct AnalyticParams {
  double alpha = 10.0;
  int k_window = 2;

  /// The closed forms are asymptotic in alpha; below 10 they are still
  /// evaluated but callers should flag the result.
  bool in_validity_domain() const { return alpha >= 10.0; }
};

/// exp(-tau^2 / (32 alpha^4)) exp(i tau / (2 alpha)).
std::complex<double> saddle_integral(double tau, double alpha);

/// Closed-form Q(tau) = |z| - sqrt(ad) for the X-projected state.
double q_of_t(double tau, const AnalyticParams& params);

/// 2 max{0, Q(tau)}.
double analytic_concurrence(double tau, const AnalyticParams& params);

/// 2 pi k alpha.
double revival_center(int k, double alpha);

struct PeakHeight {
  double value;       // clamped at 0
  double raw;         // 1/2 [2/(pi k) - 1 + exp(-tau_k^2 / (16 alpha^4))]
  bool extinguished;  // raw < 0
};

/// Revival envelope evaluated at tau_k = revival_center(k, alpha).
PeakHeight peak_height(int k, double alpha);

}  // namespace jcrev::analytic
