#include "jcrev/density.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace jcrev::density {

TwoQubitDensity partial_trace(const dynamics::JointState& state) {
  TwoQubitDensity out;
  out.tau = state.tau();
  for (std::size_t i = 0; i < 4; ++i) {
    const auto bi = state.block(i);
    for (std::size_t j = i; j < 4; ++j) {
      const auto bj = state.block(j);
      cplx acc = 0.0;
      for (std::size_t k = 0; k < bi.size(); ++k) acc += bi[k] * std::conj(bj[k]);
      if (i == j) {
        out.rho(i, i) = acc.real();
      } else {
        out.rho(i, j) = acc;
        out.rho(j, i) = std::conj(acc);
      }
    }
  }
  return out;
}

XState x_project(const TwoQubitDensity& rho) {
  const Matrix4& m = rho.rho;
  XState x;
  x.a = m(kEE, kEE).real();
  x.b = m(kEG, kEG).real();
  x.c = m(kGE, kGE).real();
  x.d = m(kGG, kGG).real();
  x.z = m(kEG, kGE);
  x.w = m(kEE, kGG);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (!is_x_position(r, c)) x.max_off_x = std::max(x.max_off_x, std::abs(m(r, c)));
  return x;
}

Matrix4 embed(const XState& x) {
  Matrix4 m;
  m(kEE, kEE) = x.a;
  m(kEG, kEG) = x.b;
  m(kGE, kGE) = x.c;
  m(kGG, kGG) = x.d;
  m(kEG, kGE) = x.z;
  m(kGE, kEG) = std::conj(x.z);
  m(kEE, kGG) = x.w;
  m(kGG, kEE) = std::conj(x.w);
  return m;
}

DensityChecks check_density(const Matrix4& rho) {
  DensityChecks out;
  out.hermiticity = linalg::max_abs(rho - rho.adjoint());
  out.trace_error = std::abs(rho.trace() - 1.0);
  const Matrix4 herm = (rho + rho.adjoint()) * 0.5;
  out.min_eigenvalue = linalg::hermitian_eigen(herm).values[0];
  return out;
}

SeriesElements x_elements_series(const fock::CoherentCoefficients& field, double tau) {
  const int n_max = field.n_max;
  // Indices n, m run over every value for which some A-product is nonzero;
  // the shifted terms reach n_max + 2 and the trig factors n_max + 3.
  const int top = n_max + 2;
  const int trig_top = n_max + 4;

  std::vector<double> cs(static_cast<std::size_t>(trig_top) + 1);
  std::vector<double> sn(static_cast<std::size_t>(trig_top) + 1);
  for (int k = 0; k <= trig_top; ++k) {
    const double phase = tau * std::sqrt(static_cast<double>(k));
    cs[static_cast<std::size_t>(k)] = std::cos(phase);
    sn[static_cast<std::size_t>(k)] = std::sin(phase);
  }
  const auto A = [&](int k) { return field.amplitude(k); };
  const auto C = [&](int k) { return k < 0 ? 1.0 : cs[static_cast<std::size_t>(k)]; };
  const auto S = [&](int k) { return k < 0 ? 0.0 : sn[static_cast<std::size_t>(k)]; };

  double z = 0.0;
  double a = 0.0;
  double d = 0.0;
  for (int n = 0; n <= top; ++n) {
    for (int m = 0; m <= top; ++m) {
      const double an2am2 = A(n) * A(n) * A(m) * A(m);
      const double p_nm1_mp1 = A(n) * A(n - 1) * A(m) * A(m + 1);
      const double p_np1_mm1 = A(n) * A(n + 1) * A(m) * A(m - 1);
      const double p_nm2_mp2 = A(n) * A(n - 2) * A(m) * A(m + 2);

      z += an2am2 * C(n) * C(n + 1) * C(m) * C(m + 1)
         - p_nm1_mp1 * S(n) * C(n + 1) * C(m) * S(m + 1)
         + p_nm2_mp2 * S(n) * S(n - 1) * S(m + 1) * S(m + 2)
         - p_nm1_mp1 * S(n) * C(n - 1) * S(m + 1) * C(m + 2);

      const double cross = p_np1_mm1 * S(n + 1) * C(n + 1) * S(m) * C(m)
                         + p_nm1_mp1 * S(n) * C(n) * S(m + 1) * C(m + 1);

      a += an2am2 * C(n + 1) * C(n + 1) * S(m) * S(m)
         + an2am2 * S(n) * S(n) * C(m + 1) * C(m + 1) + cross;

      d += an2am2 * S(n + 1) * S(n + 1) * C(m) * C(m)
         + an2am2 * C(n) * C(n) * S(m + 1) * S(m + 1) + cross;
    }
  }
  return {0.5 * z, 0.5 * a, 0.5 * d};
}

SeriesElements x_elements_series(double alpha, double tau, int n_max) {
  return x_elements_series(fock::coherent_coefficients(alpha, n_max, true), tau);
}

}  // namespace jcrev::density
