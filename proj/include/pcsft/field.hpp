#pragma once

#include "pcsft/errors.hpp"
#include "pcsft/linalg.hpp"
#include "pcsft/types.hpp"

#include <cstdint>

namespace pcsft {

// A zero-mean circular complex Gaussian distribution N(0, D) on C^dim,
// together with the seed that makes sampling deterministic.
struct GaussianFieldSpec {
  ComplexMatrix covariance;
  std::uint64_t seed = 0;

  Index dim() const { return covariance.rows(); }

  // Throws InvalidCovariance unless D is Hermitian and PSD within tol.
  void validate(double tol = kStructuralTol) const;
};

// A finite collection of field realizations; column j of `samples` is the
// j-th draw.
struct FieldEnsemble {
  GaussianFieldSpec spec;
  ComplexMatrix samples;  // dim x count

  Index dim() const { return samples.rows(); }
  Index count() const { return samples.cols(); }
};

// E ||phi||^2 = Tr D, the overall scale of field fluctuations.
double dispersion(const GaussianFieldSpec& spec);

// Draws n independent fields phi = Q sqrt(Lambda) z, where Q Lambda Q* is the
// eigendecomposition of D (eigenvalues inside the structural tolerance band
// clipped to zero) and z is a standard circular complex Gaussian vector.
// Bitwise-deterministic in (seed, stream, n); the same (seed, stream, index)
// cell always yields the same field, so any partition of indices across
// threads gives identical output.
FieldEnsemble sample(const GaussianFieldSpec& spec, Index n,
                     std::uint32_t stream = 0, unsigned threads = 1);

// Componentwise sample mean.
ComplexVector empirical_mean(const FieldEnsemble& ens);

// (1/n) sum phi phi*; no mean subtraction, the zero mean is a model axiom.
ComplexMatrix empirical_covariance(const FieldEnsemble& ens);

// (1/n) sum phi phi^T (no conjugation). Tends to zero for circular fields.
ComplexMatrix empirical_pseudo_covariance(const FieldEnsemble& ens);

}  // namespace pcsft
