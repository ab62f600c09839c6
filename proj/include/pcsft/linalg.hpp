#pragma once

#include "pcsft/errors.hpp"
#include "pcsft/types.hpp"

namespace pcsft {

// Hermitian eigendecomposition. Eigenvalues are real and sorted in
// descending order; the columns of `eigenvectors` are the matching
// orthonormal eigenvectors, so M = Q diag(lambda) Q*.
struct HermitianEig {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const {
    return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

// Conjugate transpose. Involution: adjoint(adjoint(M)) == M exactly.
ComplexMatrix adjoint(const ComplexMatrix& m);

// True iff the max entrywise distance between M and M* is <= tol.
bool is_hermitian(const ComplexMatrix& m, double tol = kStructuralTol);

// True iff the smallest eigenvalue is >= -tol. Requires a Hermitian input.
bool is_psd(const ComplexMatrix& m, double tol = kStructuralTol);

HermitianEig eig_hermitian(const ComplexMatrix& m);

// exp(-i t H / hbar) via the eigendecomposition of H. Unitary by
// construction up to roundoff.
ComplexMatrix unitary_from_hamiltonian(const ComplexMatrix& hamiltonian,
                                       double t, double hbar = 1.0);

double frobenius_norm(const ComplexMatrix& m);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix identity_matrix(Index dim);

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix is " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()) + ", expected square");
  }
}

inline void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                               const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": shapes " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()) + " differ");
  }
}

}  // namespace pcsft
