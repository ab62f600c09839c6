#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>

namespace pcsft {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

using Index = Eigen::Index;

// Default tolerance for structural predicates (hermiticity, PSD, trace-1,
// idempotence) on unit-scale operators.
inline constexpr double kStructuralTol = 1e-10;

// Traces below this are treated as a vanishing field: no state is defined.
inline constexpr double kZeroTraceTol = 1e-12;

// Branch weights below this leave the conditional state undefined.
inline constexpr double kDegenerateBranchTol = 1e-12;

// Structural tolerance scaled to the magnitude of the operator.
inline double scaled_tol(const ComplexMatrix& m, double tol = kStructuralTol) {
  const double scale = m.size() == 0 ? 1.0 : m.cwiseAbs().maxCoeff();
  return tol * std::max(1.0, scale);
}

}  // namespace pcsft
