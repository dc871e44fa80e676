#pragma once

#include <algorithm>
#include <vector>

#include "seawalk/hilbert.hpp"
#include "seawalk/types.hpp"

namespace seawalk {

constexpr double kEntropyCutoff = 1e-12;

/// Joint detection probability P(m, n) = <mn| rho |mn>, reshaped N x N.
struct JpdSnapshot {
  double time = 0.0;
  RealMatrix matrix;
};

inline JpdSnapshot joint_probability(const Matrix& rho, double time = 0.0) {
  const auto dim = rho.rows();
  const auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(double(dim))));
  if (n * n != dim) throw std::invalid_argument("joint_probability: not a composite operator");
  JpdSnapshot snap;
  snap.time = time;
  snap.matrix.resize(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k)
      snap.matrix(m, k) = rho(m * n + k, m * n + k).real();
  return snap;
}

/// Site distribution of one walker: diagonal of the reduced density matrix.
inline RealVector marginal(const Matrix& rho, Subsystem j) {
  return partial_trace(rho, j).diagonal().real();
}

/// Mean squared displacement with the plain (m - n)^2 distance (not the
/// periodic ring distance) and a 1/N prefactor.
inline double msd(const JpdSnapshot& jpd) {
  const auto n = jpd.matrix.rows();
  double acc = 0.0;
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double d = static_cast<double>(m - k);
      acc += d * d * jpd.matrix(m, k);
    }
  return acc / static_cast<double>(n);
}

/// L_E = Tr(rho0 rho_t).
inline double loschmidt_echo(const Matrix& rho0, const Matrix& rho_t) {
  if (rho0.rows() != rho_t.rows()) throw std::invalid_argument("loschmidt_echo: dimension mismatch");
  return (rho0 * rho_t).trace().real();
}

/// -sum_{lambda > cutoff} lambda ln lambda.
inline double von_neumann_entropy(const Matrix& rho, double cutoff = kEntropyCutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double w = es.eigenvalues()(i);
    if (w > cutoff) s -= w * std::log(w);
  }
  return s;
}

/// M(rho) = S(rho_A) + S(rho_B) - S(rho), written in the paper as
/// Tr(rho ln rho) - sum_J Tr(rho_J ln rho_J).
inline double mutual_information(const Matrix& rho, double cutoff = kEntropyCutoff) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A), cutoff) +
         von_neumann_entropy(partial_trace(rho, Subsystem::B), cutoff) -
         von_neumann_entropy(rho, cutoff);
}

/// Centered running mean over [i - (w-1), i + (w-1)], truncated at the
/// series boundaries.  window = 1 is the identity; window >= length yields
/// the global mean everywhere.
inline std::vector<double> moving_average(const std::vector<double>& series, int window) {
  if (window < 1) throw std::invalid_argument("moving_average: window must be >= 1");
  const auto n = static_cast<long>(series.size());
  std::vector<double> out(series.size());
  for (long i = 0; i < n; ++i) {
    const long lo = std::max<long>(0, i - (window - 1));
    const long hi = std::min<long>(n - 1, i + (window - 1));
    double acc = 0.0;
    for (long k = lo; k <= hi; ++k) acc += series[k];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

}  // namespace seawalk
