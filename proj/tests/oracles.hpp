#pragma once

// Test-only reference routes, kept independent of the library's
// implementation paths: the matrix exponential here is a scaled Taylor
// series (the library uses an eigendecomposition), and vector evolution
// applies the series directly to the vector.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace oracles {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// exp(A) by scaling-and-squaring over a plain Taylor series.
inline Matrix matrix_exp_series(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  while (norm / std::pow(2.0, squarings) > 0.5) {
    ++squarings;
  }
  const Matrix scaled = a / std::pow(2.0, squarings);
  Matrix term = Matrix::Identity(a.rows(), a.cols());
  Matrix sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) {
      break;
    }
  }
  for (int s = 0; s < squarings; ++s) {
    sum = sum * sum;
  }
  return sum;
}

// psi(t) = exp(-i t H / hbar) psi by repeated series application to the
// vector; never forms the exponential matrix.
inline Vector evolve_vector_series(const Matrix& hamiltonian, double t,
                                   double hbar, const Vector& psi) {
  const Matrix generator = Complex(0.0, -t / hbar) * hamiltonian;
  const double norm = generator.cwiseAbs().rowwise().sum().maxCoeff();
  int splits = 0;
  while (norm / std::pow(2.0, splits) > 0.5) {
    ++splits;
  }
  const Matrix step = generator / std::pow(2.0, splits);
  Vector state = psi;
  const std::int64_t repetitions = std::int64_t(1) << splits;
  for (std::int64_t rep = 0; rep < repetitions; ++rep) {
    Vector term = state;
    Vector acc = state;
    for (int k = 1; k <= 40; ++k) {
      term = (step * term) / static_cast<double>(k);
      acc += term;
      if (term.cwiseAbs().maxCoeff() < 1e-18) {
        break;
      }
    }
    state = acc;
  }
  return state;
}

// ---- random test instances ----------------------------------------------

inline Matrix random_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = Complex(nd(rng), nd(rng));
    }
  }
  return m;
}

inline Vector random_vector(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> nd;
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    v[i] = Complex(nd(rng), nd(rng));
  }
  return v;
}

inline Vector random_unit_vector(std::mt19937_64& rng, Eigen::Index dim) {
  Vector v = random_vector(rng, dim);
  return v / v.norm();
}

inline Matrix random_hermitian(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix m = random_matrix(rng, dim);
  return (m + m.adjoint()) / 2.0;
}

inline Matrix random_psd(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix m = random_matrix(rng, dim);
  return m * m.adjoint() / static_cast<double>(dim);
}

inline Matrix random_density_matrix(std::mt19937_64& rng, Eigen::Index dim) {
  const Matrix p = random_psd(rng, dim);
  return p / p.trace().real();
}

inline Matrix random_unitary(std::mt19937_64& rng, Eigen::Index dim) {
  const Eigen::HouseholderQR<Matrix> qr(random_matrix(rng, dim));
  Matrix q = qr.householderQ();
  // Fix the phase ambiguity so columns are well spread.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) {
      q.col(j) *= d / std::abs(d);
    }
  }
  return q;
}

// Rank-k orthogonal projector onto a random subspace.
inline Matrix random_projector(std::mt19937_64& rng, Eigen::Index dim,
                               Eigen::Index rank) {
  const Matrix q = random_unitary(rng, dim);
  const Matrix basis = q.leftCols(rank);
  return basis * basis.adjoint();
}

// A complete set of orthogonal projectors from a random unitary's columns,
// with the given block sizes (must sum to dim).
inline std::vector<Matrix> random_projector_resolution(
    std::mt19937_64& rng, Eigen::Index dim,
    const std::vector<Eigen::Index>& ranks) {
  const Matrix q = random_unitary(rng, dim);
  std::vector<Matrix> projectors;
  Eigen::Index offset = 0;
  for (const Eigen::Index r : ranks) {
    const Matrix basis = q.middleCols(offset, r);
    projectors.push_back(basis * basis.adjoint());
    offset += r;
  }
  return projectors;
}

// A random trace-preserving Kraus set: V_i = G_i S^{-1/2} with
// S = sum G_i* G_i, so sum V_i* V_i = I by construction.
inline std::vector<Matrix> random_kraus_set(std::mt19937_64& rng,
                                            Eigen::Index dim,
                                            std::size_t terms) {
  std::vector<Matrix> raw;
  Matrix s = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < terms; ++i) {
    raw.push_back(random_matrix(rng, dim));
    s += raw.back().adjoint() * raw.back();
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> es(s);
  const Matrix inv_sqrt = es.eigenvectors() *
                          es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                          es.eigenvectors().adjoint();
  std::vector<Matrix> kraus;
  for (const Matrix& g : raw) {
    kraus.push_back(g * inv_sqrt);
  }
  return kraus;
}

// ---- small fixed operators ------------------------------------------------

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0);
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(-1, 0);
  return m;
}

// Depolarizing Kraus set {sqrt(1-3p/4) I, sqrt(p/4) X, sqrt(p/4) Y,
// sqrt(p/4) Z}.
inline std::vector<Matrix> depolarizing_kraus(double p) {
  return {std::sqrt(1.0 - 3.0 * p / 4.0) * Matrix::Identity(2, 2),
          std::sqrt(p / 4.0) * pauli_x(), std::sqrt(p / 4.0) * pauli_y(),
          std::sqrt(p / 4.0) * pauli_z()};
}

}  // namespace oracles
