#pragma once

#include "pcsft/errors.hpp"
#include "pcsft/field.hpp"
#include "pcsft/types.hpp"

#include <cstdint>

namespace pcsft {

// Hermitian, PSD, unit-trace operator. Validated on construction.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix rho, double tol = kStructuralTol);

  const ComplexMatrix& matrix() const { return rho_; }
  Index dim() const { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

// Unit vector psi; the rank-1 state is psi psi*.
class PureState {
 public:
  explicit PureState(ComplexVector psi, double tol = 1e-12);

  const ComplexVector& vector() const { return psi_; }
  Index dim() const { return psi_.size(); }
  DensityOperator density() const;

 private:
  ComplexVector psi_;
};

// The free scale sigma^2 = E ||phi||^2 of field fluctuations.
class DispersionScale {
 public:
  explicit DispersionScale(double sigma2);

  double sigma2() const { return sigma2_; }

 private:
  double sigma2_;
};

// D = sigma^2 rho. Tr D = sigma^2 since Tr rho = 1.
GaussianFieldSpec covariance_from_state(const DensityOperator& rho,
                                        const DispersionScale& scale,
                                        std::uint64_t seed);

// rho = D / Tr D. Throws ZeroField when Tr D <= 1e-12.
DensityOperator state_from_covariance(const GaussianFieldSpec& spec);

// f_A(phi) = <A phi, phi>, real for Hermitian A. The inner product
// convention is linear in the first argument, so <A phi, phi> =
// sum_k (A phi)_k conj(phi_k).
double quadratic_form(const ComplexMatrix& a, const ComplexVector& phi);

// Tr(rho A), real for Hermitian A.
double quantum_average(const ComplexMatrix& a, const DensityOperator& rho);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double stderr_of_mean = 0.0;
  Index count = 0;
};

// Sample mean of f_A over n draws of N(0, D), with the standard error of the
// mean (variance divisor n-1). Reproducible from the spec seed.
MonteCarloEstimate classical_average_mc(const ComplexMatrix& a,
                                        const GaussianFieldSpec& spec, Index n,
                                        unsigned threads = 1);

// Monte Carlo check of classical/quantum average agreement: the classical
// average over N(0, sigma^2 rho) equals Tr D times the quantum average.
struct ScalingCheck {
  double classical_estimate = 0.0;
  double classical_stderr = 0.0;
  double quantum_scaled = 0.0;  // sigma^2 * Tr(rho A), the exact value
  double difference = 0.0;
  double threshold = 0.0;  // 4 standard errors
  bool pass = false;
  // | Tr(D A) - Tr D * Tr(rho A) |, an algebraic identity (no sampling).
  double algebraic_residual = 0.0;
};

ScalingCheck check_scaling_relation(const ComplexMatrix& a,
                                    const DensityOperator& rho,
                                    const DispersionScale& scale, Index n,
                                    std::uint64_t seed, unsigned threads = 1);

}  // namespace pcsft
