#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "seawalk/types.hpp"

namespace seawalk {

// Composite basis ordering is fixed throughout: |i>_A |j>_B maps to flat
// index i*N + j (row-major).  CSV output depends on this ordering.

inline Matrix kron(const Matrix& a, const Matrix& b) {
  const auto ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Matrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

/// Partial trace of an N^2 x N^2 composite operator, keeping one subsystem.
inline Matrix partial_trace(const Matrix& x, Subsystem keep) {
  const auto dim = x.rows();
  if (x.cols() != dim) throw std::invalid_argument("partial_trace: non-square input");
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dim))));
  if (n * n != dim) throw std::invalid_argument("partial_trace: dimension is not a perfect square");
  Matrix out = Matrix::Zero(n, n);
  if (keep == Subsystem::A) {
    // out(i,k) = sum_j x[(i j),(k j)]
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        out(i, k) = x.block(i * n, k * n, n, n).trace();
  } else {
    // out(j,l) = sum_i x[(i j),(i l)]
    for (Eigen::Index i = 0; i < n; ++i)
      out += x.block(i * n, i * n, n, n);
  }
  return out;
}

/// S |i>|j> = |j>|i>.  Hermitian, unitary, S^2 = I, Tr S = n.
inline Matrix swap_operator(int n) {
  Matrix s = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(j * n + i, i * n + j) = 1.0;
  return s;
}

/// P_a = (I - S)/2, the projector onto the fermionic (antisymmetric) sector.
inline Matrix antisym_projector(int n) {
  return 0.5 * (Matrix::Identity(n * n, n * n) - swap_operator(n));
}

/// Index bookkeeping for the antisymmetric two-walker sector: ordered pairs
/// (i, j) with i < j, lexicographic, dimension M = n(n-1)/2.  Column k of
/// the embedding isometry is |psi_{ij}> = (|ij> - |ji>)/sqrt(2).
struct AntisymBasis {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;

  int dim() const { return static_cast<int>(pairs.size()); }

  int index_of(int i, int j) const {
    if (i > j) std::swap(i, j);
    if (i == j || i < 0 || j >= n) throw std::out_of_range("AntisymBasis::index_of");
    // pairs are lexicographic: offset of row i is sum_{r<i} (n-1-r)
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  /// N^2 x M isometry whose columns are the |psi_ij>.
  Matrix isometry() const {
    Matrix w = Matrix::Zero(n * n, dim());
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = 0; k < dim(); ++k) {
      auto [i, j] = pairs[k];
      w(i * n + j, k) = inv_sqrt2;
      w(j * n + i, k) = -inv_sqrt2;
    }
    return w;
  }
};

inline AntisymBasis antisym_basis(int n) {
  if (n < 2) throw std::invalid_argument("antisym_basis: need n >= 2");
  AntisymBasis b;
  b.n = n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.pairs.emplace_back(i, j);
  return b;
}

/// Lift an M x M operator on the antisymmetric sector to the full N^2 space.
inline Matrix embed_antisym(const Matrix& small, const AntisymBasis& basis) {
  if (small.rows() != basis.dim() || small.cols() != basis.dim())
    throw std::invalid_argument("embed_antisym: dimension mismatch");
  const Matrix w = basis.isometry();
  return w * small * w.adjoint();
}

/// Compress a full-space operator to its M x M antisymmetric block.
inline Matrix restrict_antisym(const Matrix& big, const AntisymBasis& basis) {
  const auto n2 = static_cast<Eigen::Index>(basis.n) * basis.n;
  if (big.rows() != n2 || big.cols() != n2)
    throw std::invalid_argument("restrict_antisym: dimension mismatch");
  const Matrix w = basis.isometry();
  return w.adjoint() * big * w;
}

}  // namespace seawalk
