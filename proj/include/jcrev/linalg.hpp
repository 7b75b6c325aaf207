#pragma once

// Fixed-size dense complex matrices and the two eigensolvers the concurrence
// code needs: cyclic Jacobi for Hermitian input and shifted QR on the
// Hessenberg form for general input. Sizes here never exceed 8.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <string>

#include "jcrev/error.hpp"

namespace jcrev::linalg {

using cplx = std::complex<double>;

template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t size = N;

  constexpr SquareMatrix() : data_{} {}

  static SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  SquareMatrix adjoint() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }
  SquareMatrix transpose() const {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) out(c, r) = (*this)(r, c);
    return out;
  }
  SquareMatrix conjugate() const {
    SquareMatrix out;
    for (std::size_t i = 0; i < N * N; ++i) out.data_[i] = std::conj(data_[i]);
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  SquareMatrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend SquareMatrix operator*(SquareMatrix a, cplx s) { return a *= s; }
  friend SquareMatrix operator*(cplx s, SquareMatrix a) { return a *= s; }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix out;
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t k = 0; k < N; ++k) {
        const cplx ark = a(r, k);
        if (ark == cplx{}) continue;
        for (std::size_t c = 0; c < N; ++c) out(r, c) += ark * b(k, c);
      }
    return out;
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<cplx, N * N> data_;
};

using Matrix4 = SquareMatrix<4>;

/// Largest |m(r,c)| over all entries.
template <std::size_t N>
double max_abs(const SquareMatrix<N>& m) {
  double out = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out = std::max(out, std::abs(m(r, c)));
  return out;
}

template <std::size_t N>
struct HermitianEigen {
  std::array<double, N> values;  // ascending
  SquareMatrix<N> vectors;       // columns
};

/// Cyclic complex Jacobi. Input is assumed Hermitian; only the upper triangle
/// and the real part of the diagonal influence the result.
template <std::size_t N>
HermitianEigen<N> hermitian_eigen(const SquareMatrix<N>& input) {
  SquareMatrix<N> h;
  for (std::size_t r = 0; r < N; ++r) {
    h(r, r) = input(r, r).real();
    for (std::size_t c = r + 1; c < N; ++c) {
      h(r, c) = input(r, c);
      h(c, r) = std::conj(input(r, c));
    }
  }
  SquareMatrix<N> v = SquareMatrix<N>::identity();

  constexpr int kMaxSweeps = 64;
  double total = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) total += std::norm(h(r, c));

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < N; ++p)
      for (std::size_t q = p + 1; q < N; ++q) off += std::norm(h(p, q));
    if (off == 0.0 || off <= 1e-34 * total) break;
    if (sweep == kMaxSweeps - 1) throw NumericalError("hermitian_eigen: Jacobi sweeps exhausted");

    for (std::size_t p = 0; p < N; ++p) {
      for (std::size_t q = p + 1; q < N; ++q) {
        const double b = std::abs(h(p, q));
        if (b == 0.0) continue;
        const double app = h(p, p).real();
        const double aqq = h(q, q).real();
        // Negligible against both diagonal entries: drop it.
        if (sweep > 3 && b < 1e-18 * (std::abs(app) + std::abs(aqq))) {
          h(p, q) = 0.0;
          h(q, p) = 0.0;
          continue;
        }
        const cplx phase = h(p, q) / b;
        const double theta = (aqq - app) / (2.0 * b);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = diag(1, conj(phase)) * [[c, s], [-s, c]] restricted to (p, q).
        const cplx gpp = c;
        const cplx gpq = s;
        const cplx gqp = -s * std::conj(phase);
        const cplx gqq = c * std::conj(phase);

        for (std::size_t i = 0; i < N; ++i) {
          const cplx x = h(i, p);
          const cplx y = h(i, q);
          h(i, p) = x * gpp + y * gqp;
          h(i, q) = x * gpq + y * gqq;
        }
        for (std::size_t j = 0; j < N; ++j) {
          const cplx x = h(p, j);
          const cplx y = h(q, j);
          h(p, j) = std::conj(gpp) * x + std::conj(gqp) * y;
          h(q, j) = std::conj(gpq) * x + std::conj(gqq) * y;
        }
        for (std::size_t i = 0; i < N; ++i) {
          const cplx x = v(i, p);
          const cplx y = v(i, q);
          v(i, p) = x * gpp + y * gqp;
          v(i, q) = x * gpq + y * gqq;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
      }
    }
  }

  std::array<std::size_t, N> order;
  for (std::size_t i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return h(a, a).real() < h(b, b).real(); });

  HermitianEigen<N> out;
  for (std::size_t k = 0; k < N; ++k) {
    out.values[k] = h(order[k], order[k]).real();
    for (std::size_t i = 0; i < N; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

namespace detail {

// Householder reduction to upper Hessenberg form, in place.
template <std::size_t N>
void reduce_to_hessenberg(SquareMatrix<N>& h) {
  for (std::size_t k = 0; k + 2 < N; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < N; ++i) tail += std::norm(h(i, k));
    if (tail == 0.0) continue;

    const cplx x0 = h(k + 1, k);
    const double xnorm = std::sqrt(std::norm(x0) + tail);
    const cplx phase = (x0 == cplx{}) ? cplx{1.0} : x0 / std::abs(x0);
    const cplx alpha = -phase * xnorm;

    std::array<cplx, N> u{};
    u[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < N; ++i) u[i] = h(i, k);
    double unorm2 = 0.0;
    for (std::size_t i = k + 1; i < N; ++i) unorm2 += std::norm(u[i]);
    if (unorm2 == 0.0) continue;
    const double scale = 2.0 / unorm2;

    // h <- (I - scale u u^H) h
    for (std::size_t c = 0; c < N; ++c) {
      cplx dot = 0.0;
      for (std::size_t i = k + 1; i < N; ++i) dot += std::conj(u[i]) * h(i, c);
      dot *= scale;
      for (std::size_t i = k + 1; i < N; ++i) h(i, c) -= u[i] * dot;
    }
    // h <- h (I - scale u u^H)
    for (std::size_t r = 0; r < N; ++r) {
      cplx dot = 0.0;
      for (std::size_t i = k + 1; i < N; ++i) dot += h(r, i) * u[i];
      dot *= scale;
      for (std::size_t i = k + 1; i < N; ++i) h(r, i) -= dot * std::conj(u[i]);
    }
    for (std::size_t i = k + 2; i < N; ++i) h(i, k) = 0.0;
  }
}

// Eigenvalue of the 2x2 block [[a, b], [c, d]] closest to d.
inline cplx wilkinson_shift(cplx a, cplx b, cplx c, cplx d) {
  const cplx half_tr = 0.5 * (a + d);
  const cplx disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
  const cplx l1 = half_tr + disc;
  const cplx l2 = half_tr - disc;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace detail

/// All eigenvalues of a general complex matrix, in deflation order.
/// Throws NumericalError if the QR iteration budget is exhausted.
template <std::size_t N>
std::array<cplx, N> general_eigenvalues(const SquareMatrix<N>& input) {
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c)
      if (!std::isfinite(input(r, c).real()) || !std::isfinite(input(r, c).imag()))
        throw NumericalError("general_eigenvalues: non-finite matrix entry");

  SquareMatrix<N> h = input;
  detail::reduce_to_hessenberg(h);

  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr int kIterationsPerEigenvalue = 60;

  std::array<cplx, N> eig{};
  std::size_t found = 0;
  std::ptrdiff_t hi = static_cast<std::ptrdiff_t>(N) - 1;
  int iterations = 0;

  while (hi >= 0) {
    // Locate the start of the unreduced block ending at hi.
    std::ptrdiff_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sub <= eps * diag || sub < std::numeric_limits<double>::min()) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      eig[found++] = h(hi, hi);
      --hi;
      iterations = 0;
      continue;
    }
    if (++iterations > kIterationsPerEigenvalue)
      throw NumericalError("general_eigenvalues: QR iteration did not converge");

    cplx mu;
    if (iterations % 11 == 0) {
      // Exceptional shift to break cycles.
      mu = h(hi, hi) + std::abs(h(hi, hi - 1)) * 0.75;
    } else {
      mu = detail::wilkinson_shift(h(hi - 1, hi - 1), h(hi - 1, hi), h(hi, hi - 1), h(hi, hi));
    }

    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) -= mu;

    std::array<double, N> gc{};
    std::array<cplx, N> gs{};
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const cplx a = h(k, k);
      const cplx b = h(k + 1, k);
      const double r = std::hypot(std::abs(a), std::abs(b));
      double c;
      cplx s;
      if (r == 0.0) {
        c = 1.0;
        s = 0.0;
      } else if (a == cplx{}) {
        c = 0.0;
        s = 1.0;
      } else {
        c = std::abs(a) / r;
        s = (a / std::abs(a)) * std::conj(b) / r;
      }
      gc[k] = c;
      gs[k] = s;
      for (std::ptrdiff_t j = k; j <= hi; ++j) {
        const cplx x = h(k, j);
        const cplx y = h(k + 1, j);
        h(k, j) = c * x + s * y;
        h(k + 1, j) = -std::conj(s) * x + c * y;
      }
    }
    for (std::ptrdiff_t k = lo; k < hi; ++k) {
      const double c = gc[k];
      const cplx s = gs[k];
      const std::ptrdiff_t last = std::min(k + 2, hi);
      for (std::ptrdiff_t i = lo; i <= last; ++i) {
        const cplx x = h(i, k);
        const cplx y = h(i, k + 1);
        h(i, k) = x * c + y * std::conj(s);
        h(i, k + 1) = -x * s + y * c;
      }
    }
    for (std::ptrdiff_t k = lo; k <= hi; ++k) h(k, k) += mu;
  }
  return eig;
}

}  // namespace jcrev::linalg
