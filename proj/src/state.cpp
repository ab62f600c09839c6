#include "pcsft/state.hpp"

#include "pcsft/linalg.hpp"

#include <cmath>

namespace pcsft {

DensityOperator::DensityOperator(ComplexMatrix rho, double tol)
    : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
    throw InvalidState("density operator must be a nonempty square matrix");
  }
  const double herm_tol = scaled_tol(rho_, tol);
  if (!is_hermitian(rho_, herm_tol)) {
    throw InvalidState("density operator is not Hermitian within " +
                       std::to_string(herm_tol));
  }
  const HermitianEig eig = eig_hermitian(rho_);
  if (eig.eigenvalues.minCoeff() < -tol) {
    throw InvalidState("density operator has eigenvalue " +
                       std::to_string(eig.eigenvalues.minCoeff()));
  }
  if (std::abs(rho_.trace().real() - 1.0) > tol) {
    throw InvalidState("density operator trace " +
                       std::to_string(rho_.trace().real()) + " is not 1");
  }
}

PureState::PureState(ComplexVector psi, double tol) : psi_(std::move(psi)) {
  if (psi_.size() == 0) {
    throw InvalidState("pure state vector is empty");
  }
  if (std::abs(psi_.norm() - 1.0) > tol) {
    throw InvalidState("pure state vector norm " +
                       std::to_string(psi_.norm()) + " is not 1");
  }
}

DensityOperator PureState::density() const {
  return DensityOperator(psi_ * psi_.adjoint());
}

DispersionScale::DispersionScale(double sigma2) : sigma2_(sigma2) {
  if (!(sigma2 > 0.0)) {
    throw Error("dispersion scale must be positive, got " +
                std::to_string(sigma2));
  }
}

GaussianFieldSpec covariance_from_state(const DensityOperator& rho,
                                        const DispersionScale& scale,
                                        std::uint64_t seed) {
  GaussianFieldSpec spec;
  spec.covariance = scale.sigma2() * rho.matrix();
  spec.seed = seed;
  return spec;
}

DensityOperator state_from_covariance(const GaussianFieldSpec& spec) {
  const double trace = dispersion(spec);
  if (trace <= kZeroTraceTol) {
    throw ZeroField("covariance trace " + std::to_string(trace) +
                    " defines no state");
  }
  return DensityOperator(spec.covariance / trace);
}

double quadratic_form(const ComplexMatrix& a, const ComplexVector& phi) {
  require_square(a, "quadratic_form");
  if (a.cols() != phi.size()) {
    throw DimensionMismatch("quadratic_form: operator dim " +
                            std::to_string(a.cols()) + " vs vector dim " +
                            std::to_string(phi.size()));
  }
  if (!is_hermitian(a, scaled_tol(a))) {
    throw NotHermitian("quadratic_form: operator is not Hermitian");
  }
  // <A phi, phi> = sum_k (A phi)_k conj(phi_k) = phi.dot(A phi) in Eigen.
  const Complex value = phi.dot(a * phi);
  return value.real();
}

double quantum_average(const ComplexMatrix& a, const DensityOperator& rho) {
  require_square(a, "quantum_average");
  if (a.rows() != rho.dim()) {
    throw DimensionMismatch("quantum_average: operator dim " +
                            std::to_string(a.rows()) + " vs state dim " +
                            std::to_string(rho.dim()));
  }
  if (!is_hermitian(a, scaled_tol(a))) {
    throw NotHermitian("quantum_average: operator is not Hermitian");
  }
  const Complex value = (rho.matrix() * a).trace();
  return value.real();
}

MonteCarloEstimate classical_average_mc(const ComplexMatrix& a,
                                        const GaussianFieldSpec& spec, Index n,
                                        unsigned threads) {
  if (n < 2) {
    throw Error("classical_average_mc: n must be >= 2");
  }
  require_square(a, "classical_average_mc");
  if (a.rows() != spec.dim()) {
    throw DimensionMismatch("classical_average_mc: operator dim " +
                            std::to_string(a.rows()) + " vs field dim " +
                            std::to_string(spec.dim()));
  }
  if (!is_hermitian(a, scaled_tol(a))) {
    throw NotHermitian("classical_average_mc: observable is not Hermitian");
  }

  const FieldEnsemble ens = sample(spec, n, /*stream=*/0, threads);
  // f_A(phi_j) for all j at once; diagonal of S* A S without the off-diagonal
  // work.
  const ComplexMatrix transformed = a * ens.samples;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (Index j = 0; j < n; ++j) {
    const double value = ens.samples.col(j).dot(transformed.col(j)).real();
    sum += value;
    sum_sq += value * value;
  }
  const double mean = sum / static_cast<double>(n);
  const double variance =
      (sum_sq - static_cast<double>(n) * mean * mean) /
      static_cast<double>(n - 1);
  MonteCarloEstimate out;
  out.estimate = mean;
  out.stderr_of_mean =
      std::sqrt(std::max(0.0, variance) / static_cast<double>(n));
  out.count = n;
  return out;
}

ScalingCheck check_scaling_relation(const ComplexMatrix& a,
                                    const DensityOperator& rho,
                                    const DispersionScale& scale, Index n,
                                    std::uint64_t seed, unsigned threads) {
  const GaussianFieldSpec spec = covariance_from_state(rho, scale, seed);
  const MonteCarloEstimate mc = classical_average_mc(a, spec, n, threads);

  ScalingCheck check;
  check.classical_estimate = mc.estimate;
  check.classical_stderr = mc.stderr_of_mean;
  // Tr D = sigma^2 since Tr rho = 1.
  check.quantum_scaled = scale.sigma2() * quantum_average(a, rho);
  check.difference = check.classical_estimate - check.quantum_scaled;
  check.threshold = 4.0 * mc.stderr_of_mean;
  check.pass = std::abs(check.difference) <= check.threshold;

  const double trace_da = (spec.covariance * a).trace().real();
  const double trace_d = dispersion(spec);
  check.algebraic_residual =
      std::abs(trace_da - trace_d * quantum_average(a, rho));
  return check;
}

}  // namespace pcsft
