#include "jcrev/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace jcrev::dynamics {

namespace {

constexpr cplx kMinusI{0.0, -1.0};

// Per-photon amplitudes of the two branches leaving one bare state, with the
// coherent weight already folded in.
struct SiteBranch {
  Level level;
  int shift;  // photon-number change
  std::vector<cplx> amplitude;
};

// Branches of one site whose atom starts in `start`, for field amplitudes A.
std::array<SiteBranch, 2> site_branches(Level start, const fock::CoherentCoefficients& field,
                                        double tau) {
  const auto size = static_cast<std::size_t>(field.n_max) + 1;
  std::array<SiteBranch, 2> out;
  if (start == Level::excited) {
    out[0] = {Level::excited, 0, std::vector<cplx>(size)};
    out[1] = {Level::ground, +1, std::vector<cplx>(size)};
    for (std::size_t n = 0; n < size; ++n) {
      const auto [c, s] = jc_coefficients(static_cast<int>(n) + 1, tau);
      out[0].amplitude[n] = field.coeffs[n] * c;
      out[1].amplitude[n] = field.coeffs[n] * s * kMinusI;
    }
  } else {
    out[0] = {Level::ground, 0, std::vector<cplx>(size)};
    out[1] = {Level::excited, -1, std::vector<cplx>(size)};
    for (std::size_t n = 0; n < size; ++n) {
      const auto [c, s] = jc_coefficients(static_cast<int>(n), tau);
      out[0].amplitude[n] = field.coeffs[n] * c;
      // n = 0 has no |e;-1> partner; s = 0 there in any case.
      out[1].amplitude[n] = n == 0 ? cplx{} : field.coeffs[n] * s * kMinusI;
    }
  }
  return out;
}

}  // namespace

JcCoefficients jc_coefficients(int n, double tau) {
  if (n < 0) throw std::invalid_argument("jc_coefficients: n must be >= 0");
  const double phase = tau * std::sqrt(static_cast<double>(n));
  return {std::cos(phase), std::sin(phase)};
}

std::vector<SiteComponent> single_site_propagate(Level level, int n, double tau) {
  if (n < 0) throw std::invalid_argument("single_site_propagate: n must be >= 0");
  if (level == Level::excited) {
    const auto [c, s] = jc_coefficients(n + 1, tau);
    return {{Level::excited, n, c}, {Level::ground, n + 1, s * kMinusI}};
  }
  const auto [c, s] = jc_coefficients(n, tau);
  if (n == 0) return {{Level::ground, 0, c}};
  return {{Level::ground, n, c}, {Level::excited, n - 1, s * kMinusI}};
}

TwoQubitPure bell_state() {
  const double h = 1.0 / std::sqrt(2.0);
  return {cplx{}, cplx{h}, cplx{h}, cplx{}};
}

JointState::JointState(int photon_dim_a, int photon_dim_b, double tau)
    : dim_a_(photon_dim_a), dim_b_(photon_dim_b), tau_(tau) {
  if (dim_a_ < 1 || dim_b_ < 1) throw std::invalid_argument("JointState: photon dimensions must be >= 1");
  amps_.assign(4 * block_size(), cplx{});
}

double JointState::norm_squared() const {
  double s = 0.0;
  for (const cplx& v : amps_) s += std::norm(v);
  return s;
}

JointState evolve_joint(const TwoQubitPure& atoms, const fock::CoherentCoefficients& field_a,
                        const fock::CoherentCoefficients& field_b, double tau) {
  JointState state(field_a.n_max + 2, field_b.n_max + 2, tau);
  const int dim_b = state.photon_dim_b();

  for (Level start_a : kLevels) {
    for (Level start_b : kLevels) {
      const cplx beta = atoms[atom_index(start_a, start_b)];
      if (beta == cplx{}) continue;
      const auto branches_a = site_branches(start_a, field_a, tau);
      const auto branches_b = site_branches(start_b, field_b, tau);

      for (const SiteBranch& ba : branches_a) {
        for (const SiteBranch& bb : branches_b) {
          auto target = state.block(atom_index(ba.level, bb.level));
          for (int n = 0; n <= field_a.n_max; ++n) {
            const int row = n + ba.shift;
            if (row < 0) continue;
            const cplx wa = beta * ba.amplitude[static_cast<std::size_t>(n)];
            if (wa == cplx{}) continue;
            cplx* dst = target.data() + static_cast<std::size_t>(row) * dim_b;
            for (int m = 0; m <= field_b.n_max; ++m) {
              const int col = m + bb.shift;
              if (col < 0) continue;
              dst[col] += wa * bb.amplitude[static_cast<std::size_t>(m)];
            }
          }
        }
      }
    }
  }
  return state;
}

std::vector<KernelTerm> composed_kernel_terms(int n, int m, double tau) {
  if (n < 0 || m < 0) throw std::invalid_argument("composed_kernel_terms: photon numbers must be >= 0");
  std::vector<KernelTerm> terms;
  terms.reserve(8);

  const auto add_pair = [&](Level start_a, Level start_b) {
    // Always expand both branches so the term list has a fixed shape.
    const auto branches = [&](Level start, int k) {
      std::array<SiteComponent, 2> out;
      if (start == Level::excited) {
        const auto [c, s] = jc_coefficients(k + 1, tau);
        out = {SiteComponent{Level::excited, k, c}, SiteComponent{Level::ground, k + 1, s * kMinusI}};
      } else {
        const auto [c, s] = jc_coefficients(k, tau);
        out = {SiteComponent{Level::ground, k, c}, SiteComponent{Level::excited, k - 1, s * kMinusI}};
      }
      return out;
    };
    const auto site_a = branches(start_a, n);
    const auto site_b = branches(start_b, m);
    for (const auto& xa : site_a)
      for (const auto& xb : site_b)
        terms.push_back({xa.level, xb.level, xa.photons, xb.photons, xa.amplitude * xb.amplitude});
  };

  add_pair(Level::excited, Level::ground);
  add_pair(Level::ground, Level::excited);
  return terms;
}

}  // namespace jcrev::dynamics
