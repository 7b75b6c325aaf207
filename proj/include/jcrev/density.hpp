#pragma once

#include <complex>

#include "jcrev/dynamics.hpp"
#include "jcrev/fock.hpp"
#include "jcrev/linalg.hpp"

namespace jcrev::density {

using cplx = std::complex<double>;
using linalg::Matrix4;

/// Basis order (ee, eg, ge, gg).
inline constexpr std::size_t kEE = 0;
inline constexpr std::size_t kEG = 1;
inline constexpr std::size_t kGE = 2;
inline constexpr std::size_t kGG = 3;

struct TwoQubitDensity {
  Matrix4 rho;
  double tau = 0.0;
};

/// The X-shaped part of a two-qubit density matrix: populations a, b, c, d
/// and the coherences z = <eg|rho|ge>, w = <ee|rho|gg>.
struct XState {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
  cplx z = 0.0;
  cplx w = 0.0;
  /// Largest discarded entry magnitude when produced by x_project.
  double max_off_x = 0.0;
};

/// Traces both photon modes out of |psi><psi|.
TwoQubitDensity partial_trace(const dynamics::JointState& state);

/// Keeps the diagonal and anti-diagonal, recording the largest discarded
/// element in max_off_x.
XState x_project(const TwoQubitDensity& rho);

/// Rebuilds the 4x4 matrix of an X state (off-X entries zero).
Matrix4 embed(const XState& x);

/// Positions that x_project keeps.
constexpr bool is_x_position(std::size_t r, std::size_t c) { return r == c || r + c == 3; }

struct DensityChecks {
  double hermiticity = 0.0;     // max |rho - rho^H|
  double trace_error = 0.0;     // |tr rho - 1|
  double min_eigenvalue = 0.0;  // of the Hermitian part
};

DensityChecks check_density(const Matrix4& rho);

/// z, a, d of the reduced matrix evaluated directly from the photon-number
/// double sums, with A_k = 0 for k < 0 or k > n_max. z is real for the
/// symmetric Bell initial state with real alpha.
struct SeriesElements {
  double z = 0.0;
  double a = 0.0;
  double d = 0.0;
};

SeriesElements x_elements_series(const fock::CoherentCoefficients& field, double tau);
SeriesElements x_elements_series(double alpha, double tau, int n_max);

}  // namespace jcrev::density
