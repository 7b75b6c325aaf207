#pragma once

#include <vector>

namespace jcrev::fock {

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr int kMinTruncation = 4;

/// Physical parameters of each atom-cavity site. Dynamics only ever sees the
/// dimensionless time tau = g * t, and only the resonant case is modelled.
struct ModelParams {
  double g = 1.0;
  double omega0 = 1.0;
  double omega = 1.0;

  /// Throws std::invalid_argument unless g > 0 and omega == omega0.
  void validate() const;
  double dimensionless_time(double t) const { return g * t; }
};

/// Truncated photon-number amplitudes A_n = exp(-alpha^2/2) alpha^n / sqrt(n!)
/// of a real coherent state, n = 0..n_max.
struct CoherentCoefficients {
  double alpha = 0.0;
  int n_max = 0;
  std::vector<double> coeffs;
  /// Probability discarded by the truncation, taken from the
  /// pre-normalization deficit 1 - sum A_n^2.
  double tail_mass = 0.0;
  bool renormalized = false;

  /// A_k, with A_k = 0 outside [0, n_max].
  double amplitude(int k) const {
    return (k < 0 || k > n_max) ? 0.0 : coeffs[static_cast<std::size_t>(k)];
  }
  double norm_squared() const;
};

/// Smallest n_max whose Poisson(alpha^2) tail beyond n_max is below
/// tail_tolerance, never less than kMinTruncation.
int choose_truncation(double alpha, double tail_tolerance = kDefaultTailTolerance);

/// Log-space evaluation of the coherent amplitudes. With renormalize the
/// returned coefficients have unit 2-norm.
CoherentCoefficients coherent_coefficients(double alpha, int n_max, bool renormalize = true);

/// choose_truncation followed by a renormalized coherent_coefficients.
CoherentCoefficients truncated_coherent_state(double alpha,
                                              double tail_tolerance = kDefaultTailTolerance);

}  // namespace jcrev::fock
