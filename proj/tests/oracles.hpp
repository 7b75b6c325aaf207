#pragma once

// Independent reference computations used only by the tests. Nothing here
// calls into the library code paths it is used to check.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "jcrev/linalg.hpp"

namespace oracle {

using cplx = std::complex<double>;

/// sum_{j > n} Poisson(mean) pmf_j, each term evaluated with lgamma.
inline double poisson_tail(double mean, int n) {
  double tail = 0.0;
  const int top = static_cast<int>(mean + 60.0 * std::sqrt(mean + 1.0) + 200.0);
  for (int j = top; j > n; --j) tail += std::exp(-mean + j * std::log(mean) - std::lgamma(j + 1.0));
  return tail;
}

/// sum_{n >= 1} e^{-alpha^2} alpha^{2n} / n! * exp(i tau / (2 sqrt n)).
inline cplx direct_phase_sum(double tau, double alpha) {
  const double mean = alpha * alpha;
  const int top = static_cast<int>(mean + 60.0 * alpha + 200.0);
  cplx acc = 0.0;
  for (int n = 1; n <= top; ++n) {
    const double w = std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
    acc += w * std::polar(1.0, tau / (2.0 * std::sqrt(static_cast<double>(n))));
  }
  return acc;
}

/// Single-site interaction Hamiltonian a^dag sigma_- + sigma_+ a on
/// {e, g} x {0..photons-1}, index = level * photons + n, level 0 = e.
inline Eigen::MatrixXcd site_hamiltonian(int photons) {
  const int dim = 2 * photons;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n + 1 < photons; ++n) {
    // <g; n+1| a^dag sigma_- |e; n> = sqrt(n+1)
    const int e_n = n;
    const int g_n1 = photons + n + 1;
    h(g_n1, e_n) = std::sqrt(n + 1.0);
    h(e_n, g_n1) = std::sqrt(n + 1.0);
  }
  return h;
}

/// exp(-i H tau) for the single-site Hamiltonian, by Eigen's matrix exponential.
inline Eigen::MatrixXcd site_propagator(int photons, double tau) {
  const Eigen::MatrixXcd m = cplx(0.0, -tau) * site_hamiltonian(photons);
  return m.exp();
}

/// Evolves (|eg> + |ge>)/sqrt(2) (x) field_a (x) field_b with exp(-i H tau),
/// returning psi indexed [sA][sB][n][m] flattened exactly as JointState.
inline std::vector<cplx> kron_evolve_bell(const std::vector<double>& field_a,
                                          const std::vector<double>& field_b, int photons_a,
                                          int photons_b, double tau) {
  const Eigen::MatrixXcd ua = site_propagator(photons_a, tau);
  const Eigen::MatrixXcd ub = site_propagator(photons_b, tau);
  const int da = 2 * photons_a;
  const int db = 2 * photons_b;
  // Psi0 as a (da x db) matrix: row = site A index, col = site B index.
  Eigen::MatrixXcd psi0 = Eigen::MatrixXcd::Zero(da, db);
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t n = 0; n < field_a.size(); ++n)
    for (std::size_t m = 0; m < field_b.size(); ++m) {
      // |e, g>
      psi0(static_cast<int>(n), photons_b + static_cast<int>(m)) += h * field_a[n] * field_b[m];
      // |g, e>
      psi0(photons_a + static_cast<int>(n), static_cast<int>(m)) += h * field_a[n] * field_b[m];
    }
  const Eigen::MatrixXcd psi = ua * psi0 * ub.transpose();

  std::vector<cplx> out(static_cast<std::size_t>(4 * photons_a * photons_b));
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (int n = 0; n < photons_a; ++n)
        for (int m = 0; m < photons_b; ++m)
          out[static_cast<std::size_t>(((2 * sa + sb) * photons_a + n) * photons_b + m)] =
              psi(sa * photons_a + n, sb * photons_b + m);
  return out;
}

/// Full two-site Hamiltonian H_A (x) 1 + 1 (x) H_B exponentiated directly,
/// for small truncations. Basis index = (2 sA + sB) * pa * pb + n * pb + m.
inline std::vector<cplx> full_space_evolve_bell(const std::vector<double>& field_a,
                                                const std::vector<double>& field_b, int pa, int pb,
                                                double tau) {
  const int dim = 4 * pa * pb;
  const auto index = [&](int sa, int sb, int n, int m) { return ((2 * sa + sb) * pa + n) * pb + m; };
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int sa = 0; sa < 2; ++sa)
    for (int sb = 0; sb < 2; ++sb)
      for (int n = 0; n < pa; ++n)
        for (int m = 0; m < pb; ++m) {
          const int from = index(sa, sb, n, m);
          // site A: |e,n> <-> |g,n+1>
          if (sa == 0 && n + 1 < pa) {
            const int to = index(1, sb, n + 1, m);
            h(to, from) += std::sqrt(n + 1.0);
            h(from, to) += std::sqrt(n + 1.0);
          }
          if (sb == 0 && m + 1 < pb) {
            const int to = index(sa, 1, n, m + 1);
            h(to, from) += std::sqrt(m + 1.0);
            h(from, to) += std::sqrt(m + 1.0);
          }
        }
  Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(dim);
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t n = 0; n < field_a.size(); ++n)
    for (std::size_t m = 0; m < field_b.size(); ++m) {
      psi0(index(0, 1, static_cast<int>(n), static_cast<int>(m))) += s * field_a[n] * field_b[m];
      psi0(index(1, 0, static_cast<int>(n), static_cast<int>(m))) += s * field_a[n] * field_b[m];
    }
  const Eigen::MatrixXcd u = (cplx(0.0, -tau) * h).exp();
  const Eigen::VectorXcd psi = u * psi0;
  return {psi.data(), psi.data() + dim};
}

/// Solves (A) x = b by Gaussian elimination with partial pivoting.
template <std::size_t N>
std::array<cplx, N> solve(jcrev::linalg::SquareMatrix<N> a, std::array<cplx, N> b) {
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < N; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    for (std::size_t j = 0; j < N; ++j) std::swap(a(k, j), a(piv, j));
    std::swap(b[k], b[piv]);
    if (a(k, k) == cplx{}) a(k, k) = 1e-300;
    for (std::size_t i = k + 1; i < N; ++i) {
      const cplx f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < N; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::array<cplx, N> x{};
  for (std::size_t k = N; k-- > 0;) {
    cplx s = b[k];
    for (std::size_t j = k + 1; j < N; ++j) s -= a(k, j) * x[j];
    x[k] = s / a(k, k);
  }
  return x;
}

/// Determinant by Gaussian elimination with partial pivoting.
template <std::size_t N>
cplx determinant(jcrev::linalg::SquareMatrix<N> a) {
  cplx det = 1.0;
  for (std::size_t k = 0; k < N; ++k) {
    std::size_t piv = k;
    for (std::size_t i = k + 1; i < N; ++i)
      if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
    if (a(piv, k) == cplx{}) return 0.0;
    if (piv != k) {
      for (std::size_t j = 0; j < N; ++j) std::swap(a(k, j), a(piv, j));
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < N; ++i) {
      const cplx f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < N; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

/// Eigenvalues of a Hermitian matrix by Rayleigh-quotient iteration,
/// deflating found eigenvectors by projecting them out of each new start.
template <std::size_t N>
std::array<double, N> rayleigh_eigenvalues(const jcrev::linalg::SquareMatrix<N>& h, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::array<cplx, N>> found;
  std::array<double, N> values{};

  const auto dot = [](const std::array<cplx, N>& x, const std::array<cplx, N>& y) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < N; ++i) s += std::conj(x[i]) * y[i];
    return s;
  };
  const auto project_normalize = [&](std::array<cplx, N>& v) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& u : found) {
        const cplx c = dot(u, v);
        for (std::size_t i = 0; i < N; ++i) v[i] -= c * u[i];
      }
    double nrm = std::sqrt(std::real(dot(v, v)));
    for (auto& x : v) x /= nrm;
  };
  const auto apply = [&](const std::array<cplx, N>& v) {
    std::array<cplx, N> out{};
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out[r] += h(r, c) * v[c];
    return out;
  };

  for (std::size_t k = 0; k < N; ++k) {
    std::array<cplx, N> v;
    for (auto& x : v) x = cplx(gauss(rng), gauss(rng));
    project_normalize(v);
    double mu = std::real(dot(v, apply(v)));
    for (int it = 0; it < 100; ++it) {
      const auto hv = apply(v);
      double res = 0.0;
      for (std::size_t i = 0; i < N; ++i) res += std::norm(hv[i] - mu * v[i]);
      if (std::sqrt(res) < 1e-15 * (1.0 + std::abs(mu))) break;
      auto shifted = h;
      for (std::size_t i = 0; i < N; ++i) shifted(i, i) -= mu;
      auto next_v = solve(shifted, v);
      project_normalize(next_v);
      if (!std::isfinite(next_v[0].real())) break;
      v = next_v;
      const double next = std::real(dot(v, apply(v)));
      const bool done = std::abs(next - mu) < 1e-15 * (1.0 + std::abs(mu));
      mu = next;
      if (done) break;
    }
    // Residual polish of the eigenvalue.
    values[k] = std::real(dot(v, apply(v)));
    found.push_back(v);
  }
  std::sort(values.begin(), values.end());
  return values;
}

template <std::size_t N>
jcrev::linalg::SquareMatrix<N> random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  jcrev::linalg::SquareMatrix<N> m;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) m(r, c) = cplx(u(rng), u(rng));
  return m;
}

template <std::size_t N>
jcrev::linalg::SquareMatrix<N> random_hermitian(std::mt19937_64& rng) {
  const auto m = random_matrix<N>(rng, 0.5);
  return (m + m.adjoint()) * 0.5;
}

/// Random density matrix G G^H / tr(G G^H).
inline jcrev::linalg::Matrix4 random_density(std::mt19937_64& rng) {
  const auto g = random_matrix<4>(rng);
  auto rho = g * g.adjoint();
  return rho * (1.0 / rho.trace().real());
}

/// Haar-ish random 2x2 unitary from Euler angles and a global phase.
inline std::array<cplx, 4> random_unitary2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  const double theta = u(rng) / 2.0;
  const double phi = u(rng), lambda = u(rng), gamma = u(rng);
  const cplx g = std::polar(1.0, gamma);
  return {g * std::cos(theta), -g * std::polar(1.0, lambda) * std::sin(theta),
          g * std::polar(1.0, phi) * std::sin(theta), g * std::polar(1.0, phi + lambda) * std::cos(theta)};
}

/// U_A (x) U_B as a 4x4 matrix in (ee, eg, ge, gg) ordering.
inline jcrev::linalg::Matrix4 kron2(const std::array<cplx, 4>& a, const std::array<cplx, 4>& b) {
  jcrev::linalg::Matrix4 k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q)
          k(static_cast<std::size_t>(2 * i + p), static_cast<std::size_t>(2 * j + q)) = a[2 * i + j] * b[2 * p + q];
  return k;
}

}  // namespace oracle
