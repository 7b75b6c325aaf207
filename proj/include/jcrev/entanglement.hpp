#pragma once

#include <array>
#include <optional>

#include "jcrev/density.hpp"
#include "jcrev/linalg.hpp"

namespace jcrev::entanglement {

using linalg::Matrix4;
using cplx = std::complex<double>;

/// The two X-state branch quantities |z| - sqrt(ad) and |w| - sqrt(bc).
struct XBranches {
  double z_branch;
  double w_branch;
};

struct ConcurrenceValue {
  double value = 0.0;
  std::optional<XBranches> branches;
  /// Decreasing square roots of the spin-flip product eigenvalues.
  std::optional<std::array<double, 4>> lambdas;
  /// max_i |mu_i - lambda_i^2| between the product eigenvalues mu and the
  /// squared singular values used for lambda.
  double product_residual = 0.0;
};

/// 2 max{0, |z| - sqrt(ad), |w| - sqrt(bc)}.
/// Throws InvalidState if a population is below -1e-8.
ConcurrenceValue concurrence_x(const density::XState& x);

/// Wootters concurrence max{0, l1 - l2 - l3 - l4}.
///
/// The lambdas are obtained as singular values of sqrt(rho)^T Y sqrt(rho),
/// Y = sigma_y (x) sigma_y, whose squares are the eigenvalues of
/// rho Y conj(rho) Y. Going through singular values keeps lambdas near zero
/// accurate to machine precision instead of sqrt(eps). The product itself is
/// still diagonalised with eigenvalues_4x4 and its eigenvalues are checked:
/// an imaginary part or negativity beyond 1e-8 raises NumericalError.
ConcurrenceValue concurrence_wootters(const Matrix4& rho);

/// sigma_y (x) sigma_y in the (ee, eg, ge, gg) basis.
Matrix4 spin_flip();

/// rho Y conj(rho) Y.
Matrix4 spin_flip_product(const Matrix4& rho);

/// All four eigenvalues of a general complex 4x4 matrix via shifted QR on
/// its Hessenberg form. NumericalError on non-convergence.
std::array<cplx, 4> eigenvalues_4x4(const Matrix4& m);

}  // namespace jcrev::entanglement
