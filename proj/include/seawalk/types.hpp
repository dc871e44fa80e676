#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace seawalk {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Which walker a reduced/perceived quantity refers to.
enum class Subsystem { A, B };

inline Subsystem other(Subsystem j) {
  return j == Subsystem::A ? Subsystem::B : Subsystem::A;
}

/// Thrown when the integrator detects a non-recoverable numerical problem
/// (positivity violation, non-finite entries).  The CLI maps it to exit
/// code 3.
class NumericalAbort : public std::runtime_error {
 public:
  explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on invalid configuration input.  The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace seawalk
