#pragma once

#include <cmath>
#include <optional>

#include "seawalk/hilbert.hpp"
#include "seawalk/observables.hpp"
#include "seawalk/types.hpp"

namespace seawalk {

// Dissipation strength convention: {D_J, rho_J} = (kPrefactor / tau_J) {Phi_J, rho_J}
// with Phi_J the projection residual of (B ln rho)^J against the perceived
// constraint operators.  The value 2 is the uniform Fisher-Rao metric form
// (k_B = 1); the sign is fixed by non-negative entropy production.
constexpr double kDissipationPrefactor = 2.0;

/// Relaxation times and numerical cutoffs of the SEA dissipator.
struct SeaParams {
  double tau_a = 1.0;
  double tau_b = 1.0;
  double cutoff_eig = 1e-12;   // eigenvalues <= this count as kernel of rho
  double cutoff_gram = 1e-12;  // relative determinant floor for the 2x2 solve
};

/// Counters accumulated across right-hand-side evaluations.
struct SeaDiagnostics {
  long gram_degenerate = 0;    // 2x2 multiplier solves skipped
  long repair_degenerate = 0;  // boundary repairs that fell back to 2 conditions
};

/// Matrix log restricted to the support: eigenvalues <= cutoff contribute 0.
inline Matrix b_ln(const Matrix& rho, double cutoff = 1e-12) {
  const double herm = (rho - rho.adjoint()).norm();
  if (herm > 1e-8 * std::max(1.0, rho.norm()))
    throw std::invalid_argument("b_ln: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  RealVector lw = RealVector::Zero(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < lw.size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w > cutoff) lw(i) = std::log(w);
  }
  return es.eigenvectors() * lw.asDiagonal().toDenseMatrix().cast<Complex>() *
         es.eigenvectors().adjoint();
}

/// (X)^J = Tr_Jbar[(I_J ox rho_Jbar) X], the no-signaling local view of a
/// composite operator weighted by the complementary reduced state.
inline Matrix local_perception(const Matrix& x, const Matrix& rho, Subsystem j) {
  const auto dim = x.rows();
  if (rho.rows() != dim || x.cols() != dim)
    throw std::invalid_argument("local_perception: dimension mismatch");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dim))));
  if (n * n != dim) throw std::invalid_argument("local_perception: not a composite operator");
  const Matrix weight = partial_trace(rho, other(j));
  Matrix out(n, n);
  if (j == Subsystem::A) {
    // out(i,i') = sum_{j,l} weight(j,l) x[(i l),(i' j)] = Tr(block(i,i') * weight)
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        out(i, k) = (x.block(i * n, k * n, n, n) * weight).trace();
  } else {
    // out(j,j') = sum_{i,k} weight(i,k) x[(k j),(i j')]
    out.setZero();
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        out += weight(i, k) * x.block(k * n, i * n, n, n);
  }
  return out;
}

/// (S(rho))^J with S(rho) = -B ln rho (k_B = 1).
inline Matrix perceived_entropy_operator(const Matrix& rho, Subsystem j,
                                         double cutoff = 1e-12) {
  return local_perception(-b_ln(rho, cutoff), rho, j);
}

/// Conserved functionals of the composite dynamics, as full-space operators.
/// The fermionic evolution uses (P_a, H_a): the identity of the antisymmetric
/// sector and the projected Hamiltonian.  A bare pair (I, H) recovers the
/// unconstrained composite equation.
struct ConservedPair {
  Matrix c1;
  Matrix c2;
};

inline ConservedPair fermionic_constraints(const Matrix& pa, const Matrix& ha) {
  return ConservedPair{pa, ha};
}

struct PerceivedOperators {
  Matrix s_perceived;   // -(B ln rho)^J
  Matrix c1_perceived;  // (C_1)^J
  Matrix c2_perceived;  // (C_2)^J
  Matrix rho_reduced;   // rho_J
};

inline PerceivedOperators perceive_constraints(const Matrix& rho,
                                               const ConservedPair& c,
                                               Subsystem j,
                                               double cutoff = 1e-12) {
  PerceivedOperators out;
  out.s_perceived = perceived_entropy_operator(rho, j, cutoff);
  out.c1_perceived = local_perception(c.c1, rho, j);
  out.c2_perceived = local_perception(c.c2, rho, j);
  out.rho_reduced = partial_trace(rho, j);
  return out;
}

namespace detail {
/// Tr(rho/2 {X, Y}), the state-weighted symmetric pairing.
inline double weighted_anticomm(const Matrix& rho, const Matrix& x, const Matrix& y) {
  return 0.5 * ((rho * (x * y + y * x)).trace()).real();
}
}  // namespace detail

/// Omega^J: the 2x2 Gram matrix of the perceived constraint operators.
inline Eigen::Matrix2d gram_matrix(const PerceivedOperators& ops) {
  Eigen::Matrix2d g;
  g(0, 0) = detail::weighted_anticomm(ops.rho_reduced, ops.c1_perceived, ops.c1_perceived);
  g(0, 1) = detail::weighted_anticomm(ops.rho_reduced, ops.c1_perceived, ops.c2_perceived);
  g(1, 0) = g(0, 1);
  g(1, 1) = detail::weighted_anticomm(ops.rho_reduced, ops.c2_perceived, ops.c2_perceived);
  return g;
}

/// Local Lagrange multipliers by Cramer's rule.  beta1/beta2 follow the
/// paper's alternating-sign convention, under which beta2 equals the inverse
/// temperature on a Gibbs state (and beta1 = -ln Z).
struct MultiplierSolution {
  double beta1 = 0.0;
  double beta2 = 0.0;
  Eigen::Matrix2d gram = Eigen::Matrix2d::Zero();
  double det_gram = 0.0;
  bool degenerate = false;
};

inline MultiplierSolution lagrange_multipliers(const PerceivedOperators& ops,
                                               double cutoff_gram = 1e-12) {
  MultiplierSolution sol;
  sol.gram = gram_matrix(ops);
  sol.det_gram = sol.gram(0, 0) * sol.gram(1, 1) - sol.gram(0, 1) * sol.gram(1, 0);
  const double scale = std::abs(sol.gram(0, 0) * sol.gram(1, 1));
  if (!(sol.det_gram > cutoff_gram * scale)) {
    sol.degenerate = true;
    return sol;
  }
  const Matrix bln_p = -ops.s_perceived;  // (B ln rho)^J
  const double r1 = detail::weighted_anticomm(ops.rho_reduced, ops.c1_perceived, bln_p);
  const double r2 = detail::weighted_anticomm(ops.rho_reduced, ops.c2_perceived, bln_p);
  // Solve Omega * b = r; the paper's beta2 carries the opposite sign.
  sol.beta1 = (r1 * sol.gram(1, 1) - r2 * sol.gram(0, 1)) / sol.det_gram;
  sol.beta2 = -(sol.gram(0, 0) * r2 - sol.gram(0, 1) * r1) / sol.det_gram;
  return sol;
}

/// {D_J, rho_J}: the per-subsystem dissipative contribution (N x N).
/// Returns zero with the degenerate flag set when the Gram determinant
/// underflows (no independent energy constraint direction).
struct DissipatorTerm {
  Matrix anticomm;
  MultiplierSolution multipliers;
};

inline DissipatorTerm dissipator_term(const Matrix& rho, Subsystem j,
                                      const SeaParams& params,
                                      const ConservedPair& constraints) {
  DissipatorTerm out;
  const PerceivedOperators ops =
      perceive_constraints(rho, constraints, j, params.cutoff_eig);
  out.multipliers = lagrange_multipliers(ops, params.cutoff_gram);
  const auto n = ops.rho_reduced.rows();
  if (out.multipliers.degenerate) {
    out.anticomm = Matrix::Zero(n, n);
    return out;
  }
  const Matrix bln_p = -ops.s_perceived;
  // Phi = (B ln rho)^J - b1 (C_1)^J - b2 (C_2)^J with (b1, b2) solving the
  // conservation system; note the stored beta2 is sign-flipped.
  const Matrix phi = bln_p - out.multipliers.beta1 * ops.c1_perceived +
                     out.multipliers.beta2 * ops.c2_perceived;
  const double tau = (j == Subsystem::A) ? params.tau_a : params.tau_b;
  out.anticomm = (kDissipationPrefactor / tau) *
                 (phi * ops.rho_reduced + ops.rho_reduced * phi);
  return out;
}

namespace detail {

/// Spectral data of rho shared by one right-hand-side evaluation.
struct Spectral {
  Matrix bln;       // B ln rho
  Matrix live;      // projector onto the support (eigenvalues > cutoff)
  bool rank_deficient = false;

  Spectral(const Matrix& rho, double cutoff) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    const auto d = es.eigenvalues().size();
    RealVector lw = RealVector::Zero(d);
    Eigen::Index nlive = 0;
    for (Eigen::Index i = 0; i < d; ++i)
      if (es.eigenvalues()(i) > cutoff) ++nlive;
    Matrix vlive(d, nlive);
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const double w = es.eigenvalues()(i);
      if (w > cutoff) {
        lw(i) = std::log(w);
        vlive.col(col++) = es.eigenvectors().col(i);
      }
    }
    bln = es.eigenvectors() * lw.asDiagonal().toDenseMatrix().cast<Complex>() *
          es.eigenvectors().adjoint();
    live = vlive * vlive.adjoint();
    rank_deficient = nlive < d;
  }
};

/// Composite dissipative term sum_J {D_J, rho_J} ox rho_Jbar, given the
/// shared spectral data (avoids re-diagonalizing rho per subsystem).
inline Matrix composite_dissipator(const Matrix& rho, const Spectral& spec,
                                   const ConservedPair& constraints,
                                   const SeaParams& params, SeaDiagnostics* diag) {
  const auto n2 = rho.rows();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(n2))));
  const Matrix rho_a = partial_trace(rho, Subsystem::A);
  const Matrix rho_b = partial_trace(rho, Subsystem::B);
  Matrix total = Matrix::Zero(n2, n2);
  for (Subsystem j : {Subsystem::A, Subsystem::B}) {
    const Matrix& rj = (j == Subsystem::A) ? rho_a : rho_b;
    PerceivedOperators ops;
    ops.s_perceived = -local_perception(spec.bln, rho, j);
    ops.c1_perceived = local_perception(constraints.c1, rho, j);
    ops.c2_perceived = local_perception(constraints.c2, rho, j);
    ops.rho_reduced = rj;
    const MultiplierSolution sol = lagrange_multipliers(ops, params.cutoff_gram);
    if (sol.degenerate) {
      if (diag) ++diag->gram_degenerate;
      continue;
    }
    const Matrix bln_p = -ops.s_perceived;
    const Matrix phi =
        bln_p - sol.beta1 * ops.c1_perceived + sol.beta2 * ops.c2_perceived;
    const double tau = (j == Subsystem::A) ? params.tau_a : params.tau_b;
    const Matrix anti =
        (kDissipationPrefactor / tau) * (phi * rj + rj * phi);
    if (j == Subsystem::A)
      total += kron(anti, rho_b);
    else
      total += kron(rho_a, anti);
  }
  return total;
}

/// Restrict a dissipative term to the tangent space of the state's support
/// and restore the conserved pairings exactly.
///
/// The raw composite term is generally not tangent to the boundary of the
/// positive cone: once rho develops near-zero eigenvalues inside the sector
/// (which happens under strong interaction, where the constrained
/// equilibrium is effectively rank deficient), the term pushes dead modes
/// negative at first order.  Zeroing the dead rows and columns in rho's
/// eigenbasis removes exactly that component; the removed trace and energy
/// are put back along the state-weighted constraint directions
/// {rho, {H,rho}/2, {Bln,rho}/2}, which are themselves tangent.  The third
/// direction keeps the entropy pairing Tr(term * B ln rho) unchanged, so the
/// entropy production rate of the flow is identical to the unrepaired
/// formula.
inline Matrix boundary_tangent_repair(const Matrix& term, const Matrix& rho,
                                      const Spectral& spec, const Matrix& ham,
                                      SeaDiagnostics* diag) {
  const Matrix confined = spec.live * term * spec.live;
  const double t0 = term.trace().real() - confined.trace().real();
  const double e0 =
      (term * ham).trace().real() - (confined * ham).trace().real();
  if (std::abs(t0) < 1e-300 && std::abs(e0) < 1e-300) return confined;

  const Matrix b1 = rho;
  const Matrix b2 = 0.5 * (ham * rho + rho * ham);
  const Matrix b3 = 0.5 * (spec.bln * rho + rho * spec.bln);
  // Conditions: restore trace and energy, keep the B ln pairing fixed.
  Eigen::Matrix3d g;
  Eigen::Vector3d rhs;
  const Matrix* basis[3] = {&b1, &b2, &b3};
  const Matrix* weights[3] = {nullptr, &ham, &spec.bln};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      g(r, c) = (r == 0) ? basis[c]->trace().real()
                         : ((*basis[c]) * (*weights[r])).trace().real();
    }
  }
  rhs << t0, e0, 0.0;
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix3d> cod(g);
  Eigen::Vector3d coef = cod.solve(rhs);
  if (!coef.allFinite() || (g * coef - rhs).norm() > 1e-9 * (1.0 + rhs.norm())) {
    // Bln degenerate against {I, H}: fall back to trace/energy repair only.
    if (diag) ++diag->repair_degenerate;
    Eigen::Matrix2d g2;
    g2 << g(0, 0), g(0, 1), g(1, 0), g(1, 1);
    Eigen::Vector2d coef2 = g2.fullPivLu().solve(Eigen::Vector2d(t0, e0));
    return confined + coef2(0) * b1 + coef2(1) * b2;
  }
  return confined + coef(0) * b1 + coef(1) * b2 + coef(2) * b3;
}

}  // namespace detail

/// von Neumann part only: -i [H, rho].
inline Matrix unitary_rhs(const Matrix& rho, const Matrix& ham) {
  const Complex im(0.0, 1.0);
  return -im * (ham * rho - rho * ham);
}

/// The assembled dissipative term of the fermionic SEA equation,
///
///   P_a ( sum_J {D_J, rho_J} ox rho_Jbar ) P_a
///
/// confined to the support tangent space (see boundary_tangent_repair).
/// The projection keeps the flow on the antisymmetric sector; the perceived
/// constraints (P_a, H_a) make the projected term exactly traceless and
/// energy conserving.  The full equation subtracts this from the commutator.
inline Matrix sea_dissipative_term(const Matrix& rho, const Matrix& ham_a,
                                   const Matrix& pa, const SeaParams& params,
                                   SeaDiagnostics* diag = nullptr) {
  const detail::Spectral spec(rho, params.cutoff_eig);
  const ConservedPair constraints = fermionic_constraints(pa, ham_a);
  Matrix term = detail::composite_dissipator(rho, spec, constraints, params, diag);
  term = pa * term * pa;
  return detail::boundary_tangent_repair(term, rho, spec, ham_a, diag);
}

/// Full fermionic SEA right-hand side:
/// d rho / dt = -i [H_a, rho] - (dissipative term).
inline Matrix sea_rhs(const Matrix& rho, const Matrix& ham_a, const Matrix& pa,
                      const SeaParams& params, SeaDiagnostics* diag = nullptr) {
  return unitary_rhs(rho, ham_a) - sea_dissipative_term(rho, ham_a, pa, params, diag);
}

/// Single-walker BSEA equation with C_1 = I, C_2 = H on a d-dimensional
/// space; the M = 1 limit of the composite machinery.
inline Matrix single_component_rhs(const Matrix& rho, const Matrix& ham,
                                   double tau, double cutoff = 1e-12) {
  const auto d = rho.rows();
  const Matrix id = Matrix::Identity(d, d);
  const Matrix bln = b_ln(rho, cutoff);
  Eigen::Matrix2d g;
  g(0, 0) = detail::weighted_anticomm(rho, id, id);
  g(0, 1) = detail::weighted_anticomm(rho, id, ham);
  g(1, 0) = g(0, 1);
  g(1, 1) = detail::weighted_anticomm(rho, ham, ham);
  const double det = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0);
  if (!(det > 1e-12 * std::abs(g(0, 0) * g(1, 1)))) return unitary_rhs(rho, ham);
  const double r1 = detail::weighted_anticomm(rho, id, bln);
  const double r2 = detail::weighted_anticomm(rho, ham, bln);
  const double b1 = (r1 * g(1, 1) - r2 * g(0, 1)) / det;
  const double b2 = (g(0, 0) * r2 - g(0, 1) * r1) / det;
  const Matrix phi = bln - b1 * id - b2 * ham;
  return unitary_rhs(rho, ham) -
         (kDissipationPrefactor / tau) * (phi * rho + rho * phi);
}

/// ds/dt = -sum_J Tr[{D_J, rho_J} (S)^J]; non-negative along the SEA flow
/// and equal to the finite-difference rate of -Tr(rho ln rho).
inline double entropy_production_rate(const Matrix& rho, const Matrix& ham_a,
                                      const Matrix& pa, const SeaParams& params) {
  const ConservedPair constraints = fermionic_constraints(pa, ham_a);
  double rate = 0.0;
  for (Subsystem j : {Subsystem::A, Subsystem::B}) {
    const DissipatorTerm dj = dissipator_term(rho, j, params, constraints);
    const Matrix s_j = perceived_entropy_operator(rho, j, params.cutoff_eig);
    rate -= (dj.anticomm * s_j).trace().real();
  }
  return rate;
}

}  // namespace seawalk
