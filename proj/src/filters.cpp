#include "pcsft/filters.hpp"

#include "pcsft/linalg.hpp"

#include <cmath>

namespace pcsft {

void BlockFilter::require_consistent() const {
  if (blocks.empty()) {
    throw Error("block filter needs at least one block");
  }
  const Index out = blocks.front().rows();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].size() == 0) {
      throw DimensionMismatch("block " + std::to_string(i) + " is empty");
    }
    if (blocks[i].rows() != out) {
      throw DimensionMismatch("block " + std::to_string(i) + " has out dim " +
                              std::to_string(blocks[i].rows()) +
                              ", expected " + std::to_string(out));
    }
  }
}

void BlockFilter::require_common_input(Index dim) const {
  require_consistent();
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].cols() != dim) {
      throw DimensionMismatch("block " + std::to_string(i) + " has in dim " +
                              std::to_string(blocks[i].cols()) +
                              ", expected " + std::to_string(dim));
    }
  }
}

double ChannelDecomposition::weight_sum() const {
  double sum = 0.0;
  for (const ChannelBranch& branch : branches) {
    sum += branch.weight;
  }
  return sum;
}

ComplexMatrix ChannelDecomposition::reconstruct(Index dim) const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const ChannelBranch& branch : branches) {
    if (branch.state.has_value()) {
      sum += branch.weight * branch.state->matrix();
    }
  }
  return sum;
}

FieldEnsemble apply_filter(const LinearFilter& filter,
                           const FieldEnsemble& ens) {
  if (filter.in_dim() != ens.dim()) {
    throw DimensionMismatch("apply_filter: filter in dim " +
                            std::to_string(filter.in_dim()) +
                            " vs ensemble dim " + std::to_string(ens.dim()));
  }
  FieldEnsemble out;
  out.spec.covariance = pushforward_covariance(filter, ens.spec.covariance);
  out.spec.seed = ens.spec.seed;
  out.samples = filter.operator_matrix * ens.samples;
  return out;
}

ComplexMatrix pushforward_covariance(const LinearFilter& filter,
                                     const ComplexMatrix& covariance) {
  if (filter.in_dim() != covariance.rows()) {
    throw DimensionMismatch("pushforward_covariance: filter in dim " +
                            std::to_string(filter.in_dim()) +
                            " vs covariance dim " +
                            std::to_string(covariance.rows()));
  }
  if (!is_hermitian(covariance, scaled_tol(covariance))) {
    throw InvalidCovariance(
        "pushforward_covariance: covariance is not Hermitian");
  }
  return filter.operator_matrix * covariance *
         filter.operator_matrix.adjoint();
}

LinearFilter unitary_filter(const ComplexMatrix& hamiltonian, double t,
                            double hbar) {
  return LinearFilter{unitary_from_hamiltonian(hamiltonian, t, hbar)};
}

LinearFilter projection_filter(const ComplexMatrix& projector) {
  require_square(projector, "projection_filter");
  const double tol = scaled_tol(projector);
  if (!is_hermitian(projector, tol)) {
    throw NotProjector("projection_filter: P is not Hermitian");
  }
  if (frobenius_distance(projector * projector, projector) > tol) {
    throw NotProjector("projection_filter: P is not idempotent");
  }
  return LinearFilter{projector};
}

BlockFilter luders_measurement_filter(
    const std::vector<ComplexMatrix>& projectors) {
  if (projectors.empty()) {
    throw Error("luders_measurement_filter: needs at least one projector");
  }
  const Index dim = projectors.front().rows();
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const ComplexMatrix& p = projectors[i];
    require_square(p, "luders_measurement_filter");
    if (p.rows() != dim) {
      throw DimensionMismatch("projector " + std::to_string(i) +
                              " has dim " + std::to_string(p.rows()) +
                              ", expected " + std::to_string(dim));
    }
    const double tol = scaled_tol(p);
    if (!is_hermitian(p, tol)) {
      throw NotProjector("projector " + std::to_string(i) +
                         " is not Hermitian");
    }
    if (frobenius_distance(p * p, p) > tol) {
      throw NotProjector("projector " + std::to_string(i) +
                         " is not idempotent");
    }
  }
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((projectors[i] * projectors[j]).cwiseAbs().maxCoeff() >
          kStructuralTol) {
        throw NotOrthogonal("projectors " + std::to_string(i) + " and " +
                            std::to_string(j) + " are not orthogonal");
      }
    }
  }
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& p : projectors) {
    sum += p;
  }
  if (frobenius_distance(sum, identity_matrix(dim)) > kStructuralTol) {
    throw IncompleteProjectors(
        "projectors do not sum to the identity (residual " +
        std::to_string(frobenius_distance(sum, identity_matrix(dim))) + ")");
  }
  BlockFilter filter;
  filter.blocks = projectors;
  return filter;
}

// sum_i V_i M V_i*, the raw channel action.
static ComplexMatrix kraus_apply_matrix(const BlockFilter& channel,
                                        const ComplexMatrix& m) {
  channel.require_common_input(m.rows());
  const Index out_dim = channel.out_dim();
  ComplexMatrix sum = ComplexMatrix::Zero(out_dim, out_dim);
  for (const ComplexMatrix& v : channel.blocks) {
    sum += v * m * v.adjoint();
  }
  return sum;
}

FieldEnsemble kraus_filter_apply(const BlockFilter& channel,
                                 const GaussianFieldSpec& spec, Index n,
                                 unsigned threads) {
  channel.require_common_input(spec.dim());
  if (!channel.unchecked) {
    const KrausValidation validation = validate_kraus(channel);
    if (!validation.trace_preserving) {
      throw NotTracePreserving(
          "kraus_filter_apply: sum V_i* V_i differs from identity by " +
          std::to_string(validation.vdagv_residual) +
          " (pass an unchecked filter to allow sub-normalized blocks)");
    }
  }

  FieldEnsemble out;
  out.spec.covariance = kraus_apply_matrix(channel, spec.covariance);
  out.spec.seed = spec.seed;
  out.samples = ComplexMatrix::Zero(channel.out_dim(), n);
  // Block i consumes its own substream, so the k copies are independent and
  // any (sample, block) cell is reproducible in isolation.
  for (Index i = 0; i < channel.size(); ++i) {
    const FieldEnsemble copy =
        sample(spec, n, static_cast<std::uint32_t>(i), threads);
    out.samples += channel.blocks[static_cast<std::size_t>(i)] * copy.samples;
  }
  return out;
}

DensityOperator kraus_channel_exact(const BlockFilter& channel,
                                    const DensityOperator& rho, bool strict) {
  const ComplexMatrix out = kraus_apply_matrix(channel, rho.matrix());
  if (strict) {
    const KrausValidation validation = validate_kraus(channel);
    if (!validation.trace_preserving) {
      throw NotTracePreserving(
          "kraus_channel_exact: sum V_i* V_i differs from identity by " +
          std::to_string(validation.vdagv_residual));
    }
    return DensityOperator(out);
  }
  // Sub-normalized channels: normalize as for any covariance.
  const double trace = out.trace().real();
  if (trace <= kZeroTraceTol) {
    throw ZeroField("channel output has vanishing trace");
  }
  return DensityOperator(out / trace);
}

ChannelDecomposition channel_decomposition(const BlockFilter& channel,
                                           const DensityOperator& rho) {
  channel.require_common_input(rho.dim());
  ChannelDecomposition decomposition;
  for (const ComplexMatrix& v : channel.blocks) {
    const ComplexMatrix term = v * rho.matrix() * v.adjoint();
    ChannelBranch branch;
    branch.weight = term.trace().real();
    if (branch.weight < kDegenerateBranchTol) {
      branch.degenerate = true;
    } else {
      branch.state = DensityOperator(term / branch.weight);
    }
    decomposition.branches.push_back(std::move(branch));
  }
  return decomposition;
}

KrausValidation validate_kraus(const BlockFilter& channel, double tol) {
  channel.require_consistent();
  const Index in_dim = channel.blocks.front().cols();
  channel.require_common_input(in_dim);

  ComplexMatrix sum_vdagv = ComplexMatrix::Zero(in_dim, in_dim);
  ComplexMatrix sum_vvdag =
      ComplexMatrix::Zero(channel.out_dim(), channel.out_dim());
  for (const ComplexMatrix& v : channel.blocks) {
    sum_vdagv += v.adjoint() * v;
    sum_vvdag += v * v.adjoint();
  }
  KrausValidation validation;
  validation.vdagv_residual =
      frobenius_distance(sum_vdagv, identity_matrix(in_dim));
  validation.vvdag_residual =
      frobenius_distance(sum_vvdag, identity_matrix(channel.out_dim()));
  validation.tol = tol;
  validation.trace_preserving = validation.vdagv_residual <= tol;
  return validation;
}

}  // namespace pcsft
