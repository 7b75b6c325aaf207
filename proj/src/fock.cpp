#include "jcrev/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jcrev::fock {

void ModelParams::validate() const {
  if (!(g > 0.0)) throw std::invalid_argument("ModelParams: coupling g must be positive");
  if (omega != omega0)
    throw std::invalid_argument("ModelParams: only exact resonance (omega == omega0) is supported");
}

double CoherentCoefficients::norm_squared() const {
  double s = 0.0;
  for (double c : coeffs) s += c * c;
  return s;
}

int choose_truncation(double alpha, double tail_tolerance) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("choose_truncation: alpha must be finite and non-negative");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0))
    throw std::invalid_argument("choose_truncation: tail_tolerance must lie in (0, 1)");
  if (alpha == 0.0) return kMinTruncation;

  const double mean = alpha * alpha;
  const double log_mean = std::log(mean);

  // Poisson pmf in log space until it is far below the tolerance and past
  // the mode, where successive ratios mean / (k + 1) < 1 bound the remainder.
  std::vector<double> pmf;
  double log_p = -mean;
  for (int k = 0;; ++k) {
    if (k > 0) log_p += log_mean - std::log(static_cast<double>(k));
    pmf.push_back(std::exp(log_p));
    if (k > mean && pmf.back() < tail_tolerance * 1e-6) break;
  }

  // suffix = sum_{j > n} pmf_j, accumulated from the top.
  int n_max = static_cast<int>(pmf.size()) - 1;
  double suffix = 0.0;
  for (int n = static_cast<int>(pmf.size()) - 1; n >= 0; --n) {
    if (suffix >= tail_tolerance) break;
    n_max = n;
    suffix += pmf[static_cast<std::size_t>(n)];
  }
  return std::max(n_max, kMinTruncation);
}

CoherentCoefficients coherent_coefficients(double alpha, int n_max, bool renormalize) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("coherent_coefficients: alpha must be real and non-negative");
  if (n_max < 0) throw std::invalid_argument("coherent_coefficients: n_max must be >= 0");

  CoherentCoefficients out;
  out.alpha = alpha;
  out.n_max = n_max;
  out.coeffs.assign(static_cast<std::size_t>(n_max) + 1, 0.0);

  if (alpha == 0.0) {
    out.coeffs[0] = 1.0;
    out.renormalized = renormalize;
    return out;
  }

  // log A_n = -alpha^2/2 + n ln(alpha) - ln(n!)/2, with ln(n!) accumulated.
  const double log_alpha = std::log(alpha);
  double log_a = -0.5 * alpha * alpha;
  out.coeffs[0] = std::exp(log_a);
  for (int n = 1; n <= n_max; ++n) {
    log_a += log_alpha - 0.5 * std::log(static_cast<double>(n));
    out.coeffs[static_cast<std::size_t>(n)] = std::exp(log_a);
  }

  const double sum = out.norm_squared();
  out.tail_mass = std::max(0.0, 1.0 - sum);
  if (renormalize) {
    const double scale = 1.0 / std::sqrt(sum);
    for (double& c : out.coeffs) c *= scale;
    out.renormalized = true;
  }
  return out;
}

CoherentCoefficients truncated_coherent_state(double alpha, double tail_tolerance) {
  return coherent_coefficients(alpha, choose_truncation(alpha, tail_tolerance), true);
}

}  // namespace jcrev::fock
