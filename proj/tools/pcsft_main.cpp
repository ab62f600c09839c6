// pcsft command-line front end: sampling, averaging, evolution, channel and
// validation experiments over operators stored as JSON files. Reports are
// deterministic in (flags, seed): repeated invocations emit identical bytes.

#include "pcsft/field.hpp"
#include "pcsft/filters.hpp"
#include "pcsft/linalg.hpp"
#include "pcsft/operator_io.hpp"
#include "pcsft/report.hpp"
#include "pcsft/state.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using namespace pcsft;

// Thresholds used for report verdicts. The covariance bound comes from
// E||D_hat - D||_F^2 = (Tr D)^2 / n for circular Gaussian fields; the
// normalized-state bound carries an extra margin for the trace division.
constexpr double kCovarianceSigmas = 4.0;
constexpr double kStateResidualScale = 6.0;

double covariance_threshold(double trace_d, Index n) {
  return kCovarianceSigmas * trace_d / std::sqrt(static_cast<double>(n));
}

double state_threshold(Index n) {
  return kStateResidualScale / std::sqrt(static_cast<double>(n));
}

std::string matrix_to_text(const ComplexMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (Index i = 0; i < m.rows(); ++i) {
    if (i > 0) {
      out << ",";
    }
    out << "[";
    for (Index j = 0; j < m.cols(); ++j) {
      if (j > 0) {
        out << ",";
      }
      out << "[" << Report::format_double(m(i, j).real()) << ","
          << Report::format_double(m(i, j).imag()) << "]";
    }
    out << "]";
  }
  out << "]";
  return out.str();
}

DensityOperator load_density(const std::string& path) {
  const OperatorRecord record = load_operator_file(path);
  try {
    return DensityOperator(record.entries);
  } catch (const InvalidState& e) {
    throw InvalidState(path + ": " + e.what());
  }
}

ComplexMatrix load_hermitian(const std::string& path, const char* role) {
  const OperatorRecord record = load_operator_file(path);
  if (!is_hermitian(record.entries, scaled_tol(record.entries))) {
    throw NotHermitian(path + ": " + role + " is not Hermitian");
  }
  return record.entries;
}

int emit(const Report& report, const std::string& out_path) {
  const std::string text = report.render();
  std::cout << text;
  if (!out_path.empty()) {
    write_text_file(out_path, text);
  }
  return report.all_pass() ? 0 : 1;
}

struct CommonOpts {
  std::string state_file;
  std::string out_path;
  double sigma2 = 1.0;
  long long n = 100000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

void echo_common(Report& report, const std::string& command,
                 const CommonOpts& opts) {
  report.set("command", command);
  report.set("state", opts.state_file);
  report.set("sigma2", opts.sigma2);
  report.set("n", opts.n);
  report.set("seed", static_cast<long long>(opts.seed));
  report.set("threads", static_cast<long long>(opts.threads));
}

int run_sample(const CommonOpts& opts) {
  const DensityOperator rho = load_density(opts.state_file);
  const GaussianFieldSpec spec =
      covariance_from_state(rho, DispersionScale(opts.sigma2), opts.seed);
  const FieldEnsemble ens = sample(spec, opts.n, 0, opts.threads);

  Report report;
  echo_common(report, "sample", opts);
  report.set("dim", static_cast<long long>(rho.dim()));

  const double trace_d = dispersion(spec);
  const ComplexVector mean = empirical_mean(ens);
  const double mean_max = mean.cwiseAbs().maxCoeff();
  const double mean_floor = 1e-12 * std::max(1.0, std::sqrt(trace_d));
  const double mean_threshold =
      4.0 * std::sqrt(spec.covariance.diagonal().real().maxCoeff() /
                      static_cast<double>(opts.n)) +
      mean_floor;
  report.add_exact("mean_residual_max", mean_max, mean_threshold,
                   mean_max <= mean_threshold);

  const double cov_residual =
      frobenius_distance(empirical_covariance(ens), spec.covariance);
  const double cov_threshold = covariance_threshold(trace_d, opts.n);
  report.add_exact("covariance_residual_frobenius", cov_residual,
                   cov_threshold, cov_residual <= cov_threshold);

  // Dispersion estimate: mean of ||phi||^2 with its standard error.
  double sum = 0.0;
  double sum_sq = 0.0;
  for (Index j = 0; j < ens.count(); ++j) {
    const double norm2 = ens.samples.col(j).squaredNorm();
    sum += norm2;
    sum_sq += norm2 * norm2;
  }
  const double mean_norm2 = sum / static_cast<double>(ens.count());
  if (ens.count() >= 2) {
    const double variance =
        (sum_sq - static_cast<double>(ens.count()) * mean_norm2 * mean_norm2) /
        static_cast<double>(ens.count() - 1);
    const double stderr_mean =
        std::sqrt(std::max(0.0, variance) / static_cast<double>(ens.count()));
    const double diff = std::abs(mean_norm2 - trace_d);
    report.add_estimate("dispersion_estimate", mean_norm2, stderr_mean,
                        4.0 * stderr_mean, diff <= 4.0 * stderr_mean);
  } else {
    report.add_estimate_no_stderr("dispersion_estimate", mean_norm2);
  }
  report.add_exact("dispersion_exact", trace_d);
  return emit(report, opts.out_path);
}

int run_average(const CommonOpts& opts, const std::string& observable_file) {
  const DensityOperator rho = load_density(opts.state_file);
  const ComplexMatrix observable = load_hermitian(observable_file, "observable");
  const ScalingCheck check =
      check_scaling_relation(observable, rho, DispersionScale(opts.sigma2),
                             opts.n, opts.seed, opts.threads);

  Report report;
  echo_common(report, "average", opts);
  report.set("observable", observable_file);
  report.set("dim", static_cast<long long>(rho.dim()));

  report.add_estimate("classical_average", check.classical_estimate,
                      check.classical_stderr);
  report.add_exact("quantum_average_scaled", check.quantum_scaled);
  report.add_estimate("difference", check.difference, check.classical_stderr,
                      check.threshold, check.pass);
  report.add_exact("scaling_identity_residual", check.algebraic_residual,
                   1e-12, check.algebraic_residual <= 1e-12);
  return emit(report, opts.out_path);
}

int run_evolve(const CommonOpts& opts, const std::string& hamiltonian_file,
               double t, double hbar) {
  const DensityOperator rho = load_density(opts.state_file);
  const ComplexMatrix hamiltonian =
      load_hermitian(hamiltonian_file, "hamiltonian");
  if (hamiltonian.rows() != rho.dim()) {
    throw DimensionMismatch("state dim " + std::to_string(rho.dim()) +
                            " vs hamiltonian dim " +
                            std::to_string(hamiltonian.rows()));
  }

  const LinearFilter filter = unitary_filter(hamiltonian, t, hbar);
  const GaussianFieldSpec spec =
      covariance_from_state(rho, DispersionScale(opts.sigma2), opts.seed);
  const FieldEnsemble ens = sample(spec, opts.n, 0, opts.threads);
  const FieldEnsemble evolved = apply_filter(filter, ens);

  const ComplexMatrix rho_t = pushforward_covariance(filter, rho.matrix());

  Report report;
  echo_common(report, "evolve", opts);
  report.set("hamiltonian", hamiltonian_file);
  report.set("t", t);
  report.set("hbar", hbar);
  report.set("dim", static_cast<long long>(rho.dim()));
  report.set("rho_t_exact", matrix_to_text(rho_t));

  const DensityOperator empirical =
      state_from_covariance({empirical_covariance(evolved), opts.seed});
  report.set("rho_t_empirical", matrix_to_text(empirical.matrix()));
  const double residual = frobenius_distance(empirical.matrix(), rho_t);
  const double threshold = state_threshold(opts.n);
  report.add_exact("state_residual_frobenius", residual, threshold,
                   residual <= threshold);

  double max_norm_dev = 0.0;
  double max_norm = 0.0;
  for (Index j = 0; j < ens.count(); ++j) {
    max_norm_dev =
        std::max(max_norm_dev, std::abs(evolved.samples.col(j).norm() -
                                        ens.samples.col(j).norm()));
    max_norm = std::max(max_norm, ens.samples.col(j).norm());
  }
  const double norm_threshold = 1e-12 * std::max(1.0, max_norm);
  report.add_exact("norm_conservation_max_deviation", max_norm_dev,
                   norm_threshold, max_norm_dev <= norm_threshold);

  const double trace_in = dispersion(spec);
  const double trace_out = dispersion(evolved.spec);
  const double trace_residual = std::abs(trace_out - trace_in);
  const double trace_threshold = 1e-10 * std::max(1.0, trace_in);
  report.add_exact("dispersion_conservation_residual", trace_residual,
                   trace_threshold, trace_residual <= trace_threshold);
  return emit(report, opts.out_path);
}

int run_channel(const CommonOpts& opts, const std::string& channel_file,
                bool exact_only, bool unchecked) {
  const DensityOperator rho = load_density(opts.state_file);
  const BlockFilter channel =
      block_filter_from_records(load_channel_file(channel_file), unchecked);
  channel.require_common_input(rho.dim());

  Report report;
  echo_common(report, "channel", opts);
  report.set("channel", channel_file);
  report.set("blocks", static_cast<long long>(channel.size()));
  report.set("dim", static_cast<long long>(rho.dim()));
  report.set("exact_only", exact_only ? "true" : "false");
  report.set("unchecked", unchecked ? "true" : "false");

  const KrausValidation validation = validate_kraus(channel);
  report.add_exact("kraus_vdagv_residual", validation.vdagv_residual,
                   validation.tol,
                   unchecked ? std::optional<bool>{}
                             : std::optional<bool>{validation.trace_preserving});
  report.add_exact("kraus_vvdag_residual", validation.vvdag_residual);
  if (!unchecked && !validation.trace_preserving) {
    throw NotTracePreserving(channel_file +
                             ": sum V_i* V_i differs from identity by " +
                             Report::format_double(validation.vdagv_residual) +
                             " (use --unchecked for sub-normalized filters)");
  }

  const DensityOperator oracle = kraus_channel_exact(channel, rho, !unchecked);
  report.set("rho_out_exact", matrix_to_text(oracle.matrix()));

  const ChannelDecomposition decomposition =
      channel_decomposition(channel, rho);
  for (std::size_t i = 0; i < decomposition.branches.size(); ++i) {
    const ChannelBranch& branch = decomposition.branches[i];
    report.add_exact("weight_" + std::to_string(i), branch.weight);
    if (branch.degenerate) {
      report.set("branch_" + std::to_string(i),
                 "degenerate (weight below 1e-12, state undefined)");
    } else {
      report.set("branch_" + std::to_string(i),
                 matrix_to_text(branch.state->matrix()));
    }
  }
  if (!unchecked) {
    const double weight_sum = decomposition.weight_sum();
    report.add_exact("weight_sum", weight_sum, 1e-10,
                     std::abs(weight_sum - 1.0) <= 1e-10);
    const double reconstruction_residual = frobenius_distance(
        decomposition.reconstruct(channel.out_dim()), oracle.matrix());
    report.add_exact("decomposition_residual", reconstruction_residual, 1e-10,
                     reconstruction_residual <= 1e-10);
  }

  // The analytic output covariance and the oracle agree after normalization
  // for any sigma^2.
  const GaussianFieldSpec spec =
      covariance_from_state(rho, DispersionScale(opts.sigma2), opts.seed);
  {
    GaussianFieldSpec pushed;
    pushed.covariance = ComplexMatrix::Zero(channel.out_dim(),
                                            channel.out_dim());
    for (const ComplexMatrix& v : channel.blocks) {
      pushed.covariance += v * spec.covariance * v.adjoint();
    }
    pushed.seed = opts.seed;
    const double filter_oracle_residual = frobenius_distance(
        state_from_covariance(pushed).matrix(), oracle.matrix());
    report.add_exact("filter_oracle_residual", filter_oracle_residual, 1e-10,
                     filter_oracle_residual <= 1e-10);
  }

  if (!exact_only) {
    const FieldEnsemble out =
        kraus_filter_apply(channel, spec, opts.n, opts.threads);
    const DensityOperator empirical =
        state_from_covariance({empirical_covariance(out), opts.seed});
    report.set("rho_out_empirical", matrix_to_text(empirical.matrix()));
    const double residual =
        frobenius_distance(empirical.matrix(), oracle.matrix());
    const double threshold = state_threshold(opts.n);
    report.add_exact("empirical_state_residual", residual, threshold,
                     residual <= threshold);
  }
  return emit(report, opts.out_path);
}

int run_validate(const std::string& channel_file, double tol,
                 const std::string& out_path) {
  const BlockFilter channel =
      block_filter_from_records(load_channel_file(channel_file));
  const KrausValidation validation = validate_kraus(channel, tol);

  Report report;
  report.set("command", "validate");
  report.set("channel", channel_file);
  report.set("blocks", static_cast<long long>(channel.size()));
  report.set("tol", tol);
  report.add_exact("kraus_vdagv_residual", validation.vdagv_residual, tol,
                   validation.trace_preserving);
  report.add_exact("kraus_vvdag_residual", validation.vvdag_residual);
  return emit(report, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pcsft: classical Gaussian-field simulation of quantum states "
               "and channels"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string observable_file;
  std::string hamiltonian_file;
  std::string channel_file;
  double t = 0.0;
  double hbar = 1.0;
  double tol = 1e-10;
  bool exact_only = false;
  bool unchecked = false;

  const auto add_common = [&](CLI::App* cmd, bool needs_state) {
    if (needs_state) {
      cmd->add_option("--state", opts.state_file, "density operator file")
          ->required();
    }
    cmd->add_option("--sigma2", opts.sigma2,
                    "field dispersion sigma^2 (default 1)");
    cmd->add_option("--n", opts.n, "sample count (default 100000)");
    cmd->add_option("--seed", opts.seed, "RNG seed")->required();
    cmd->add_option("--threads", opts.threads,
                    "worker threads; output is thread-count invariant");
    cmd->add_option("--out", opts.out_path, "also write the report here");
  };

  CLI::App* cmd_sample =
      app.add_subcommand("sample", "sample a field and check its statistics");
  add_common(cmd_sample, true);

  CLI::App* cmd_average = app.add_subcommand(
      "average", "compare classical and quantum averages of an observable");
  add_common(cmd_average, true);
  cmd_average->add_option("--observable", observable_file, "observable file")
      ->required();

  CLI::App* cmd_evolve =
      app.add_subcommand("evolve", "unitary evolution as a linear filter");
  add_common(cmd_evolve, true);
  cmd_evolve->add_option("--hamiltonian", hamiltonian_file, "hamiltonian file")
      ->required();
  cmd_evolve->add_option("--t", t, "evolution time")->required();
  cmd_evolve->add_option("--hbar", hbar, "hbar (default 1)");

  CLI::App* cmd_channel = app.add_subcommand(
      "channel", "apply a Kraus channel as a block filter on field copies");
  add_common(cmd_channel, true);
  cmd_channel->add_option("--channel", channel_file, "channel file")
      ->required();
  cmd_channel->add_flag("--exact-only", exact_only,
                        "skip the Monte Carlo estimate");
  cmd_channel->add_flag("--unchecked", unchecked,
                        "allow sub-normalized (non-trace-preserving) blocks");

  CLI::App* cmd_validate = app.add_subcommand(
      "validate", "check trace preservation of a channel file");
  cmd_validate->add_option("--channel", channel_file, "channel file")
      ->required();
  cmd_validate->add_option("--tol", tol, "residual tolerance (default 1e-10)");
  cmd_validate->add_option("--out", opts.out_path,
                           "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(cmd_sample)) {
      return run_sample(opts);
    }
    if (app.got_subcommand(cmd_average)) {
      return run_average(opts, observable_file);
    }
    if (app.got_subcommand(cmd_evolve)) {
      return run_evolve(opts, hamiltonian_file, t, hbar);
    }
    if (app.got_subcommand(cmd_channel)) {
      return run_channel(opts, channel_file, exact_only, unchecked);
    }
    if (app.got_subcommand(cmd_validate)) {
      return run_validate(channel_file, tol, opts.out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
