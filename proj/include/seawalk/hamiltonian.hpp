#pragma once

#include <string>

#include "seawalk/graph.hpp"
#include "seawalk/hilbert.hpp"
#include "seawalk/types.hpp"

namespace seawalk {

/// Weights of the four interaction channels plus the single-walker
/// parameters of each walker.  alpha1 scales the on-site product term,
/// alpha2/alpha3 the conditional single-walker hops, alpha4 the correlated
/// double hop.
struct InteractionParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double alpha4 = 0.0;
  double t = 1.0;  // hopping strength, walker A
  double s = 1.0;  // hopping strength, walker B
  RealVector onsite_a;  // epsilon_i
  RealVector onsite_b;  // omega_k

  static InteractionParams defaults(int n) {
    InteractionParams p;
    p.onsite_a = RealVector::Constant(n, 2.0);
    p.onsite_b = RealVector::Constant(n, 2.0);
    return p;
  }
};

enum class RegimeKind { FI, HI, CHI, FIFH, NONE };

/// Named interaction preset: FI all alphas equal, HI only alpha1, CHI
/// alpha1 and alpha4, FIFH alpha2 = alpha3 held fixed while alpha1 = alpha4
/// sweep.
struct Regime {
  RegimeKind kind = RegimeKind::NONE;
  double strength = 0.0;
  double fixed_hopping = 0.1;  // used by FIFH only
};

inline std::string to_string(RegimeKind k) {
  switch (k) {
    case RegimeKind::FI: return "FI";
    case RegimeKind::HI: return "HI";
    case RegimeKind::CHI: return "CHI";
    case RegimeKind::FIFH: return "FIFH";
    case RegimeKind::NONE: return "NONE";
  }
  throw std::invalid_argument("to_string: unknown regime kind");
}

inline RegimeKind regime_from_string(const std::string& s) {
  if (s == "FI") return RegimeKind::FI;
  if (s == "HI") return RegimeKind::HI;
  if (s == "CHI") return RegimeKind::CHI;
  if (s == "FIFH") return RegimeKind::FIFH;
  if (s == "NONE") return RegimeKind::NONE;
  throw ConfigError("unknown regime '" + s + "' (expected FI, HI, CHI, FIFH or NONE)");
}

inline InteractionParams regime_alphas(const Regime& r, int n) {
  if (r.strength < 0) throw std::invalid_argument("regime strength must be >= 0");
  InteractionParams p = InteractionParams::defaults(n);
  const double g = r.strength;
  switch (r.kind) {
    case RegimeKind::FI:
      p.alpha1 = p.alpha2 = p.alpha3 = p.alpha4 = g;
      break;
    case RegimeKind::HI:
      p.alpha1 = g;
      break;
    case RegimeKind::CHI:
      p.alpha1 = p.alpha4 = g;
      break;
    case RegimeKind::FIFH:
      p.alpha1 = p.alpha4 = g;
      p.alpha2 = p.alpha3 = r.fixed_hopping;
      break;
    case RegimeKind::NONE:
      break;
  }
  return p;
}

/// Recover the regime family of an alpha vector.  All-equal takes precedence
/// over FIFH, so the ambiguous point strength == fixed_hopping reads as FI.
inline RegimeKind classify_regime(const InteractionParams& p) {
  const bool z2 = p.alpha2 == 0.0, z3 = p.alpha3 == 0.0;
  if (p.alpha1 == 0.0 && z2 && z3 && p.alpha4 == 0.0) return RegimeKind::NONE;
  if (p.alpha1 != 0.0 && p.alpha1 == p.alpha2 && p.alpha2 == p.alpha3 &&
      p.alpha3 == p.alpha4)
    return RegimeKind::FI;
  if (p.alpha1 != 0.0 && z2 && z3)
    return p.alpha4 == 0.0 ? RegimeKind::HI : RegimeKind::CHI;
  if (p.alpha1 != 0.0 && p.alpha1 == p.alpha4 && p.alpha2 == p.alpha3 && !z2)
    return RegimeKind::FIFH;
  throw std::invalid_argument("classify_regime: alphas outside the preset grid");
}

namespace detail {
inline RealMatrix walker_hamiltonian(const RingGraph& g, const RealVector& onsite,
                                     double hop) {
  HoppingProfile p;
  p.mu = hop;
  p.onsite = onsite;
  return single_walker_hamiltonian(g, p);
}
}  // namespace detail

/// H_free = H_A ox I + I ox H_B.
inline Matrix free_hamiltonian(const InteractionParams& p, const RingGraph& g) {
  const int n = g.n_vertices;
  const Matrix ha = detail::walker_hamiltonian(g, p.onsite_a, p.t).cast<Complex>();
  const Matrix hb = detail::walker_hamiltonian(g, p.onsite_b, p.s).cast<Complex>();
  const Matrix id = Matrix::Identity(n, n);
  return kron(ha, id) + kron(id, hb);
}

/// H_int = H_A ox H_B, the generic product interaction.
inline Matrix interaction_hamiltonian(const InteractionParams& p, const RingGraph& g) {
  const Matrix ha = detail::walker_hamiltonian(g, p.onsite_a, p.t).cast<Complex>();
  const Matrix hb = detail::walker_hamiltonian(g, p.onsite_b, p.s).cast<Complex>();
  return kron(ha, hb);
}

/// Full alpha-weighted two-walker Hamiltonian, built directly term by term:
///
///   sum_ik (eps_i + omg_k + a1 eps_i omg_k) |ik><ik|
///   - t sum_<ij>,k (1 + a2 omg_k) (|ik><jk| + h.c.)
///   - s sum_i,<kl> (1 + a3 eps_i) (|ik><il| + h.c.)
///   + a4 t s sum_<ij>,<kl> (|ik><jl| + |il><jk| + h.c.)
///
/// Building the single sum (instead of free + alpha * pieces) avoids double
/// counting the bare hopping already present in H_free.  With all alphas
/// equal to g the result equals H_free + g * H_int.
inline Matrix total_hamiltonian(const InteractionParams& p, const RingGraph& g) {
  const int n = g.n_vertices;
  if (p.onsite_a.size() != n || p.onsite_b.size() != n)
    throw std::invalid_argument("total_hamiltonian: onsite length mismatch");
  Matrix h = Matrix::Zero(n * n, n * n);
  const auto& eps = p.onsite_a;
  const auto& omg = p.onsite_b;

  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (g.adjacency(i, j) != 0) edges.emplace_back(i, j);

  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      h(i * n + k, i * n + k) = eps(i) + omg(k) + p.alpha1 * eps(i) * omg(k);

  for (auto [i, j] : edges)
    for (int k = 0; k < n; ++k) {
      const double w = p.t * (1.0 + p.alpha2 * omg(k));
      h(i * n + k, j * n + k) -= w;
      h(j * n + k, i * n + k) -= w;
    }

  for (int i = 0; i < n; ++i)
    for (auto [k, l] : edges) {
      const double w = p.s * (1.0 + p.alpha3 * eps(i));
      h(i * n + k, i * n + l) -= w;
      h(i * n + l, i * n + k) -= w;
    }

  const double w4 = p.alpha4 * p.t * p.s;
  if (w4 != 0.0)
    for (auto [i, j] : edges)
      for (auto [k, l] : edges) {
        h(i * n + k, j * n + l) += w4;
        h(j * n + l, i * n + k) += w4;
        h(i * n + l, j * n + k) += w4;
        h(j * n + k, i * n + l) += w4;
      }
  return h;
}

/// H_a = P_a H P_a; the generator restricted to the fermionic sector.
inline Matrix project_antisym(const Matrix& h, const Matrix& pa) {
  if (h.rows() != pa.rows() || h.cols() != pa.cols())
    throw std::invalid_argument("project_antisym: dimension mismatch");
  return pa * h * pa;
}

}  // namespace seawalk
