#pragma once

#include "seawalk/hilbert.hpp"
#include "seawalk/types.hpp"

namespace seawalk {

/// Perturbed-singlet preparation: sites of the two walkers and the weight
/// epsilon of the pure singlet component.  epsilon = 1 is the pure limit.
struct InitialStateSpec {
  int site_i = 5;
  int site_j = 6;
  double epsilon = 0.95;
};

/// |psi(i,j)> = (|i>_A |j>_B - |j>_A |i>_B) / sqrt(2).
inline Vector singlet_state(int i, int j, int n) {
  if (i == j) throw std::invalid_argument("singlet_state: sites must differ (i = j gives the zero vector)");
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("singlet_state: site out of range");
  Vector v = Vector::Zero(n * n);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  v(i * n + j) = inv_sqrt2;
  v(j * n + i) = -inv_sqrt2;
  return v;
}

/// P_a / M: uniform over the antisymmetric sector, entropy ln M.
inline Matrix maximally_mixed_antisym(int n) {
  if (n < 2) throw std::invalid_argument("maximally_mixed_antisym: need n >= 2");
  const double m = n * (n - 1) / 2.0;
  return antisym_projector(n) / m;
}

/// rho0 = eps |psi><psi| + (1 - eps) P_a / M.  The white-noise term is the
/// normalized maximally mixed antisymmetric state, so the result has unit
/// trace for every eps in [0, 1].
inline Matrix perturbed_initial_state(const InitialStateSpec& spec, int n) {
  if (spec.epsilon < 0.0 || spec.epsilon > 1.0)
    throw std::invalid_argument("perturbed_initial_state: epsilon must lie in [0, 1]");
  const Vector psi = singlet_state(spec.site_i, spec.site_j, n);
  return spec.epsilon * (psi * psi.adjoint()) +
         (1.0 - spec.epsilon) * maximally_mixed_antisym(n);
}

}  // namespace seawalk
