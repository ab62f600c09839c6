#include "pcsft/field.hpp"

#include "pcsft/philox.hpp"

#include <cmath>
#include <thread>
#include <vector>

namespace pcsft {

namespace {

// phi_j = factor * z_j column by column. A plain gemv per column keeps the
// result bitwise independent of how columns are partitioned across threads.
void fill_columns(const ComplexMatrix& factor, std::uint64_t seed,
                  std::uint32_t stream, Index begin, Index end,
                  ComplexMatrix& out) {
  ComplexVector z(factor.cols());
  for (Index j = begin; j < end; ++j) {
    fill_standard_complex_gaussian(seed, stream, static_cast<std::uint64_t>(j),
                                   z);
    out.col(j).noalias() = factor * z;
  }
}

}  // namespace

void GaussianFieldSpec::validate(double tol) const {
  if (covariance.rows() != covariance.cols() || covariance.rows() == 0) {
    throw InvalidCovariance("covariance must be a nonempty square matrix");
  }
  const double herm_tol = scaled_tol(covariance, tol);
  if (!is_hermitian(covariance, herm_tol)) {
    throw InvalidCovariance("covariance is not Hermitian within " +
                            std::to_string(herm_tol));
  }
  const HermitianEig eig = eig_hermitian(covariance);
  const double psd_tol = scaled_tol(covariance, tol);
  if (eig.eigenvalues.minCoeff() < -psd_tol) {
    throw InvalidCovariance("covariance has eigenvalue " +
                            std::to_string(eig.eigenvalues.minCoeff()) +
                            " below -" + std::to_string(psd_tol));
  }
}

double dispersion(const GaussianFieldSpec& spec) {
  const Complex trace = spec.covariance.trace();
  if (std::abs(trace.imag()) > scaled_tol(spec.covariance)) {
    throw InvalidCovariance("covariance trace has imaginary part " +
                            std::to_string(trace.imag()));
  }
  return trace.real();
}

FieldEnsemble sample(const GaussianFieldSpec& spec, Index n,
                     std::uint32_t stream, unsigned threads) {
  if (n < 1) {
    throw Error("sample: n must be >= 1");
  }
  spec.validate();

  const HermitianEig eig = eig_hermitian(spec.covariance);
  const Index dim = spec.dim();
  // Eigenvalues inside the structural tolerance band are indistinguishable
  // from zero; clipping the whole band keeps rank-deficient fields exactly
  // on their support instead of injecting sqrt(roundoff) leakage.
  const double clip_tol = scaled_tol(spec.covariance);
  RealVector clipped = eig.eigenvalues;
  for (Index k = 0; k < dim; ++k) {
    if (clipped[k] < clip_tol) {
      clipped[k] = 0.0;
    }
  }
  const ComplexMatrix factor =
      eig.eigenvectors * clipped.cwiseSqrt().cast<Complex>().asDiagonal();

  FieldEnsemble ens;
  ens.spec = spec;
  ens.samples.resize(dim, n);

  const Index workers =
      std::max<Index>(1, std::min<Index>(static_cast<Index>(threads), n));
  if (workers == 1) {
    fill_columns(factor, spec.seed, stream, 0, n, ens.samples);
  } else {
    std::vector<std::thread> pool;
    const Index chunk = (n + workers - 1) / workers;
    for (Index w = 0; w < workers; ++w) {
      const Index begin = w * chunk;
      const Index end = std::min(n, begin + chunk);
      if (begin >= end) {
        break;
      }
      pool.emplace_back(fill_columns, std::cref(factor), spec.seed, stream,
                        begin, end, std::ref(ens.samples));
    }
    for (std::thread& t : pool) {
      t.join();
    }
  }
  return ens;
}

ComplexVector empirical_mean(const FieldEnsemble& ens) {
  if (ens.count() < 1) {
    throw Error("empirical_mean: ensemble is empty");
  }
  return ens.samples.rowwise().mean();
}

ComplexMatrix empirical_covariance(const FieldEnsemble& ens) {
  if (ens.count() < 1) {
    throw Error("empirical_covariance: ensemble is empty");
  }
  return (ens.samples * ens.samples.adjoint()) /
         static_cast<double>(ens.count());
}

ComplexMatrix empirical_pseudo_covariance(const FieldEnsemble& ens) {
  if (ens.count() < 1) {
    throw Error("empirical_pseudo_covariance: ensemble is empty");
  }
  return (ens.samples * ens.samples.transpose()) /
         static_cast<double>(ens.count());
}

}  // namespace pcsft
