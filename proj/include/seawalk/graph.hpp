#pragma once

#include <vector>

#include "seawalk/types.hpp"

namespace seawalk {

/// Undirected ring (cycle) graph.  Only rings are constructible through
/// ring_graph(); the Laplacian and tight-binding builders below accept any
/// simple undirected adjacency so small test graphs can be fed in directly.
struct RingGraph {
  int n_vertices = 0;
  Eigen::MatrixXi adjacency;   // symmetric 0/1, zero diagonal
  std::vector<int> degrees;    // all 2 for a ring
};

/// Hopping rate and on-site potentials of a single walker.  With the paper's
/// defaults (mu = 1, onsite = degree = 2) the tight-binding Hamiltonian
/// equals the graph Laplacian.
struct HoppingProfile {
  double mu = 1.0;
  RealVector onsite;  // epsilon_i, length n

  static HoppingProfile defaults(int n) {
    HoppingProfile p;
    p.onsite = RealVector::Constant(n, 2.0);
    return p;
  }
};

inline RingGraph ring_graph(int n) {
  if (n < 3) {
    throw std::invalid_argument(
        "ring_graph: need at least 3 vertices (a 2-ring would require "
        "multiple edges)");
  }
  RingGraph g;
  g.n_vertices = n;
  g.adjacency = Eigen::MatrixXi::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    int j = (i + 1) % n;
    g.adjacency(i, j) = 1;
    g.adjacency(j, i) = 1;
  }
  g.degrees.assign(n, 2);
  return g;
}

/// L = D - A for any simple undirected adjacency matrix.
inline RealMatrix laplacian(const Eigen::MatrixXi& adjacency) {
  const int n = static_cast<int>(adjacency.rows());
  RealMatrix L = -adjacency.cast<double>();
  for (int i = 0; i < n; ++i) L(i, i) = adjacency.row(i).sum();
  return L;
}

inline RealMatrix laplacian(const RingGraph& g) { return laplacian(g.adjacency); }

/// Tight-binding Hamiltonian H = sum_i eps_i |i><i| - t sum_<ij> (|i><j| + h.c.)
/// with t = mu.  For eps_i = degree and mu = 1 this is exactly mu * L.
inline RealMatrix single_walker_hamiltonian(const Eigen::MatrixXi& adjacency,
                                            const HoppingProfile& p) {
  const int n = static_cast<int>(adjacency.rows());
  if (p.onsite.size() != n) {
    throw std::invalid_argument(
        "single_walker_hamiltonian: onsite length must equal vertex count");
  }
  RealMatrix H = RealMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    H(i, i) = p.onsite(i);
    for (int j = i + 1; j < n; ++j) {
      if (adjacency(i, j) != 0) {
        H(i, j) -= p.mu;
        H(j, i) -= p.mu;
      }
    }
  }
  return H;
}

inline RealMatrix single_walker_hamiltonian(const RingGraph& g,
                                            const HoppingProfile& p) {
  return single_walker_hamiltonian(g.adjacency, p);
}

}  // namespace seawalk
