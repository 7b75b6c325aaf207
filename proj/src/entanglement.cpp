#include "jcrev/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "jcrev/error.hpp"

namespace jcrev::entanglement {

namespace {

constexpr double kPopulationFloor = -1e-8;
constexpr double kClampNegative = -1e-10;
constexpr double kProductResidual = 1e-8;

}  // namespace

ConcurrenceValue concurrence_x(const density::XState& x) {
  if (x.a < kPopulationFloor || x.b < kPopulationFloor || x.c < kPopulationFloor ||
      x.d < kPopulationFloor)
    throw InvalidState("concurrence_x: negative population");
  const auto nonneg = [](double v) { return std::max(v, 0.0); };
  const double z_branch = std::abs(x.z) - std::sqrt(nonneg(x.a) * nonneg(x.d));
  const double w_branch = std::abs(x.w) - std::sqrt(nonneg(x.b) * nonneg(x.c));
  ConcurrenceValue out;
  out.value = 2.0 * std::max({0.0, z_branch, w_branch});
  out.branches = XBranches{z_branch, w_branch};
  return out;
}

Matrix4 spin_flip() {
  Matrix4 y;
  y(0, 3) = -1.0;
  y(1, 2) = 1.0;
  y(2, 1) = 1.0;
  y(3, 0) = -1.0;
  return y;
}

Matrix4 spin_flip_product(const Matrix4& rho) {
  const Matrix4 y = spin_flip();
  return rho * y * rho.conjugate() * y;
}

std::array<cplx, 4> eigenvalues_4x4(const Matrix4& m) { return linalg::general_eigenvalues(m); }

ConcurrenceValue concurrence_wootters(const Matrix4& rho) {
  const Matrix4 herm = (rho + rho.adjoint()) * 0.5;

  // sqrt(rho) from the Hermitian eigendecomposition.
  const auto eig = linalg::hermitian_eigen(herm);
  if (eig.values[0] < kPopulationFloor)
    throw NumericalError("concurrence_wootters: density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(eig.values[0]) + ")");
  Matrix4 root;
  for (std::size_t k = 0; k < 4; ++k) {
    const double s = std::sqrt(std::max(eig.values[k], 0.0));
    for (std::size_t i = 0; i < 4; ++i) root(i, k) = eig.vectors(i, k) * s;
  }
  // root root^H = rho, so the spin-flip product shares its nonzero spectrum
  // with W^H W, W = root^T Y root.
  const Matrix4 w = root.transpose() * spin_flip() * root;

  // Singular values of W as the non-negative eigenvalues of [[0, W], [W^H, 0]].
  linalg::SquareMatrix<8> aug;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) {
      aug(r, c + 4) = w(r, c);
      aug(c + 4, r) = std::conj(w(r, c));
    }
  const auto aug_eig = linalg::hermitian_eigen(aug);
  std::array<double, 4> lambda;
  for (std::size_t k = 0; k < 4; ++k) lambda[k] = std::max(aug_eig.values[7 - k], 0.0);

  // Eigenvalues of the product itself: real and non-negative up to noise.
  auto mu = eigenvalues_4x4(spin_flip_product(herm));
  std::array<double, 4> mu_re;
  for (std::size_t k = 0; k < 4; ++k) {
    if (std::abs(mu[k].imag()) > kProductResidual || mu[k].real() < -kProductResidual)
      throw NumericalError("concurrence_wootters: spin-flip eigenvalue off the non-negative axis");
    mu_re[k] = mu[k].real() > kClampNegative ? std::max(mu[k].real(), 0.0) : mu[k].real();
  }
  std::sort(mu_re.begin(), mu_re.end(), std::greater<>());

  ConcurrenceValue out;
  for (std::size_t k = 0; k < 4; ++k)
    out.product_residual = std::max(out.product_residual, std::abs(mu_re[k] - lambda[k] * lambda[k]));
  out.value = std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
  out.lambdas = lambda;
  return out;
}

}  // namespace jcrev::entanglement
