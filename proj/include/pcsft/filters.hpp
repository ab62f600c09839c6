#pragma once

#include "pcsft/errors.hpp"
#include "pcsft/field.hpp"
#include "pcsft/state.hpp"
#include "pcsft/types.hpp"

#include <optional>
#include <vector>

namespace pcsft {

// phi_out = V phi_in. V may be rectangular (out_dim x in_dim).
struct LinearFilter {
  ComplexMatrix operator_matrix;

  Index in_dim() const { return operator_matrix.cols(); }
  Index out_dim() const { return operator_matrix.rows(); }
};

// Blocks (V_1, ..., V_n) acting on n independent field copies:
// phi_out = sum_i V_i phi_i. The classical realization of a Kraus channel.
// `unchecked` marks deliberately sub-normalized filters (e.g. a lone
// projector) that skip trace-preservation validation.
struct BlockFilter {
  std::vector<ComplexMatrix> blocks;
  bool unchecked = false;

  Index out_dim() const { return blocks.empty() ? 0 : blocks.front().rows(); }
  Index size() const { return static_cast<Index>(blocks.size()); }

  // All blocks nonempty with a common out_dim.
  void require_consistent() const;
  // Additionally requires every block to share in_dim = dim.
  void require_common_input(Index dim) const;
};

// Trace-preservation report. `vdagv_residual` is the Frobenius distance of
// sum V_i* V_i from the identity (the property that preserves Tr D);
// `vvdag_residual` is the same for sum V_i V_i*, reported for comparison.
struct KrausValidation {
  double vdagv_residual = 0.0;
  double vvdag_residual = 0.0;
  double tol = 0.0;
  bool trace_preserving = false;
};

// Output-state mixture decomposition of a channel: weights
// p_i = Tr(V_i rho V_i*) and conditional states V_i rho V_i* / p_i.
// Branches with p_i below 1e-12 carry no conditional state.
struct ChannelBranch {
  double weight = 0.0;
  std::optional<DensityOperator> state;
  bool degenerate = false;
};

struct ChannelDecomposition {
  std::vector<ChannelBranch> branches;

  double weight_sum() const;
  // sum_i p_i rho_i over non-degenerate branches.
  ComplexMatrix reconstruct(Index dim) const;
};

// Samplewise phi_out = V phi_in; the output spec carries V D V*.
FieldEnsemble apply_filter(const LinearFilter& filter,
                           const FieldEnsemble& ens);

// D_out = V D V*.
ComplexMatrix pushforward_covariance(const LinearFilter& filter,
                                     const ComplexMatrix& covariance);

// V = exp(-i t H / hbar). Preserves per-sample norms and Tr D.
LinearFilter unitary_filter(const ComplexMatrix& hamiltonian, double t,
                            double hbar = 1.0);

// V = P for an orthogonal projector (P Hermitian, P^2 = P). Dispersion can
// only decrease: Tr(P D P) <= Tr D.
LinearFilter projection_filter(const ComplexMatrix& projector);

// Blocks (P_1, ..., P_k) for mutually orthogonal projectors summing to the
// identity; fed k independent copies of the input field, the output
// covariance is sum_i P_i D P_i with Tr preserved.
BlockFilter luders_measurement_filter(
    const std::vector<ComplexMatrix>& projectors);

// Draws one independent field per block (substream = block index) and
// returns phi_out = sum_i V_i phi_i per sample. Output spec covariance is
// sum_i V_i D V_i*. Deterministic in spec.seed.
FieldEnsemble kraus_filter_apply(const BlockFilter& channel,
                                 const GaussianFieldSpec& spec, Index n,
                                 unsigned threads = 1);

// The exact density-operator oracle: rho_out = sum_i V_i rho V_i*.
// In strict mode, throws NotTracePreserving unless sum V_i* V_i = I.
DensityOperator kraus_channel_exact(const BlockFilter& channel,
                                    const DensityOperator& rho,
                                    bool strict = true);

ChannelDecomposition channel_decomposition(const BlockFilter& channel,
                                           const DensityOperator& rho);

KrausValidation validate_kraus(const BlockFilter& channel,
                               double tol = kStructuralTol);

}  // namespace pcsft
