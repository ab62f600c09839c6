#include "pcsft/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace pcsft {

ComplexMatrix adjoint(const ComplexMatrix& m) { return m.adjoint(); }

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    return false;
  }
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, scaled_tol(m, std::max(tol, kStructuralTol)))) {
    throw NotHermitian("is_psd: input is not Hermitian within tolerance");
  }
  const HermitianEig eig = eig_hermitian(m);
  return eig.eigenvalues.size() == 0 ||
         eig.eigenvalues.minCoeff() >= -tol;
}

HermitianEig eig_hermitian(const ComplexMatrix& m) {
  require_square(m, "eig_hermitian");
  if (!is_hermitian(m, scaled_tol(m))) {
    throw NotHermitian("eig_hermitian: input is not Hermitian within " +
                       std::to_string(scaled_tol(m)));
  }
  const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("eig_hermitian: decomposition did not converge");
  }
  // Eigen sorts ascending; flip to descending.
  HermitianEig eig;
  eig.eigenvalues = solver.eigenvalues().reverse();
  eig.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return eig;
}

ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& hamiltonian,
                                       double t, double hbar) {
  if (!(hbar > 0.0)) {
    throw Error("unitary_from_hamiltonian: hbar must be positive");
  }
  const HermitianEig eig = eig_hermitian(hamiltonian);
  const Index dim = hamiltonian.rows();
  if (t == 0.0) {
    return identity_matrix(dim);
  }
  ComplexVector phases(dim);
  for (Index k = 0; k < dim; ++k) {
    phases[k] = std::exp(Complex(0.0, -t * eig.eigenvalues[k] / hbar));
  }
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

double frobenius_norm(const ComplexMatrix& m) { return m.norm(); }

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  return (a - b).norm();
}

ComplexMatrix identity_matrix(Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

}  // namespace pcsft
