#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "jcrev/fock.hpp"

namespace jcrev::dynamics {

using cplx = std::complex<double>;

enum class Level : std::uint8_t { excited = 0, ground = 1 };

inline constexpr std::array<Level, 2> kLevels{Level::excited, Level::ground};

/// c = cos(tau sqrt(n)), s = sin(tau sqrt(n)).
struct JcCoefficients {
  double c;
  double s;
};

JcCoefficients jc_coefficients(int n, double tau);

/// One term |level; photons> with its amplitude.
struct SiteComponent {
  Level level;
  int photons;
  cplx amplitude;
};

/// Resonant single-site evolution of a bare state:
///   |e;n> -> cos(tau sqrt(n+1)) |e;n>  - i sin(tau sqrt(n+1)) |g;n+1>
///   |g;n> -> cos(tau sqrt(n))   |g;n>  - i sin(tau sqrt(n))   |e;n-1>
/// The |e;n-1> branch is omitted for n = 0.
std::vector<SiteComponent> single_site_propagate(Level level, int n, double tau);

/// Two-qubit pure state in the ordered basis (ee, eg, ge, gg).
using TwoQubitPure = std::array<cplx, 4>;

/// (|eg> + |ge>) / sqrt(2).
TwoQubitPure bell_state();

constexpr std::size_t atom_index(Level a, Level b) {
  return 2 * static_cast<std::size_t>(a) + static_cast<std::size_t>(b);
}

/// Amplitude tensor psi[s_A, s_B, n, m]. Photon axes have one slot more than
/// the field truncation so the n_max -> n_max + 1 emission channel is kept.
class JointState {
 public:
  JointState(int photon_dim_a, int photon_dim_b, double tau);

  int photon_dim_a() const { return dim_a_; }
  int photon_dim_b() const { return dim_b_; }
  double tau() const { return tau_; }

  cplx& operator()(Level a, Level b, int n, int m) { return amps_[offset(a, b, n, m)]; }
  cplx operator()(Level a, Level b, int n, int m) const { return amps_[offset(a, b, n, m)]; }

  /// Row-major (n, m) block for one atomic configuration.
  std::span<const cplx> block(std::size_t atoms) const {
    return {amps_.data() + atoms * block_size(), block_size()};
  }
  std::span<cplx> block(std::size_t atoms) {
    return {amps_.data() + atoms * block_size(), block_size()};
  }
  std::span<const cplx> data() const { return amps_; }

  double norm_squared() const;

 private:
  std::size_t block_size() const {
    return static_cast<std::size_t>(dim_a_) * static_cast<std::size_t>(dim_b_);
  }
  std::size_t offset(Level a, Level b, int n, int m) const {
    return atom_index(a, b) * block_size() + static_cast<std::size_t>(n) * dim_b_ +
           static_cast<std::size_t>(m);
  }

  int dim_a_;
  int dim_b_;
  double tau_;
  std::vector<cplx> amps_;
};

/// Evolves atoms (x) field_a (x) field_b to dimensionless time tau by
/// applying the single-site propagator independently at each site.
JointState evolve_joint(const TwoQubitPure& atoms, const fock::CoherentCoefficients& field_a,
                        const fock::CoherentCoefficients& field_b, double tau);

inline JointState evolve_joint(const fock::CoherentCoefficients& field_a,
                               const fock::CoherentCoefficients& field_b, double tau) {
  return evolve_joint(bell_state(), field_a, field_b, tau);
}

/// One product term of the Bell-state evolution for a fixed photon pair
/// (n, m), with the common factor A_n A_m / sqrt(2) removed.
struct KernelTerm {
  Level a;
  Level b;
  int photons_a;
  int photons_b;
  cplx amplitude;
};

/// The eight terms generated from |e,g;n,m> and |g,e;n,m>, in the order
/// (stay,stay) (stay,jump) (jump,stay) (jump,jump) for |e,g> then |g,e>.
/// Terms whose photon index would drop below zero are still listed; their
/// amplitude carries a sin(0) factor.
std::vector<KernelTerm> composed_kernel_terms(int n, int m, double tau);

}  // namespace jcrev::dynamics
