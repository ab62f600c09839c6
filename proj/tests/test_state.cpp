#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcsft/linalg.hpp"
#include "pcsft/state.hpp"

#include "oracles.hpp"

#include <random>

using namespace pcsft;

namespace {

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

DensityOperator ground_state() { return DensityOperator(diag2(1.0, 0.0)); }

}  // namespace

TEST_CASE("density operator invariants are enforced") {
  CHECK_NOTHROW(DensityOperator(diag2(0.5, 0.5)));
  CHECK_THROWS_AS(DensityOperator(diag2(0.6, 0.6)), InvalidState);     // trace
  CHECK_THROWS_AS(DensityOperator(diag2(1.5, -0.5)), InvalidState);    // PSD
  ComplexMatrix m(2, 2);
  m << Complex(0.5, 0), Complex(0.3, 0), Complex(0.1, 0), Complex(0.5, 0);
  CHECK_THROWS_AS(DensityOperator{m}, InvalidState);  // hermiticity
}

TEST_CASE("pure states must be normalized") {
  ComplexVector psi(2);
  psi << Complex(1, 0), Complex(0, 0);
  const PureState state(psi);
  CHECK(frobenius_distance(state.density().matrix(), diag2(1.0, 0.0)) <
        1e-15);

  psi << Complex(1, 0), Complex(1, 0);
  CHECK_THROWS_AS(PureState{psi}, InvalidState);
}

TEST_CASE("dispersion scale must be positive") {
  CHECK_THROWS_AS(DispersionScale(0.0), Error);
  CHECK_THROWS_AS(DispersionScale(-1.0), Error);
  CHECK(DispersionScale(2.0).sigma2() == 2.0);
}

TEST_CASE("covariance_from_state") {
  SUBCASE("rank-1 projector at unit scale") {
    const GaussianFieldSpec spec =
        covariance_from_state(ground_state(), DispersionScale(1.0), 1);
    CHECK(frobenius_distance(spec.covariance, diag2(1.0, 0.0)) == 0.0);
    CHECK(spec.seed == 1);
  }

  SUBCASE("maximally mixed state at sigma2 = 4") {
    const GaussianFieldSpec spec = covariance_from_state(
        DensityOperator(diag2(0.5, 0.5)), DispersionScale(4.0), 2);
    CHECK(frobenius_distance(spec.covariance, diag2(2.0, 2.0)) < 1e-15);
  }

  SUBCASE("dispersion equals sigma2") {
    std::mt19937_64 rng(6);
    const DensityOperator rho(oracles::random_density_matrix(rng, 5));
    const GaussianFieldSpec spec =
        covariance_from_state(rho, DispersionScale(3.5), 3);
    CHECK(dispersion(spec) == doctest::Approx(3.5).epsilon(1e-12));
  }
}

TEST_CASE("state_from_covariance") {
  GaussianFieldSpec spec;
  spec.covariance = diag2(2.0, 0.0);
  CHECK(frobenius_distance(state_from_covariance(spec).matrix(),
                           diag2(1.0, 0.0)) < 1e-15);

  spec.covariance = ComplexMatrix::Identity(3, 3);
  CHECK(frobenius_distance(state_from_covariance(spec).matrix(),
                           ComplexMatrix::Identity(3, 3) / 3.0) < 1e-15);

  spec.covariance = ComplexMatrix::Zero(2, 2);
  CHECK_THROWS_AS(state_from_covariance(spec), ZeroField);
}

TEST_CASE("round-trip state -> covariance -> state") {
  std::mt19937_64 rng(7);
  for (const double sigma2 : {0.5, 1.0, 4.0}) {
    const DensityOperator rho(oracles::random_density_matrix(rng, 4));
    const DensityOperator back = state_from_covariance(
        covariance_from_state(rho, DispersionScale(sigma2), 0));
    CHECK(frobenius_distance(back.matrix(), rho.matrix()) <= 1e-12);
  }
}

TEST_CASE("quadratic_form") {
  ComplexVector phi(2);
  phi << Complex(1, 1), Complex(2, -1);
  CHECK(quadratic_form(ComplexMatrix::Identity(2, 2), phi) ==
        doctest::Approx(phi.squaredNorm()).epsilon(1e-14));

  ComplexVector ones(2);
  ones << Complex(1, 0), Complex(1, 0);
  CHECK(quadratic_form(diag2(1.0, -1.0), ones) ==
        doctest::Approx(0.0).epsilon(1e-14));

  const ComplexVector plus = ones / std::sqrt(2.0);
  CHECK(quadratic_form(oracles::pauli_x(), plus) ==
        doctest::Approx(1.0).epsilon(1e-14));

  CHECK_THROWS_AS(quadratic_form(ComplexMatrix::Identity(3, 3), phi),
                  DimensionMismatch);
  ComplexMatrix upper(2, 2);
  upper << Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0);
  CHECK_THROWS_AS(quadratic_form(upper, phi), NotHermitian);
}

TEST_CASE("quadratic_form is real for Hermitian operators") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    const Index dim = 2 + static_cast<Index>(i % 7);
    const ComplexMatrix a = oracles::random_hermitian(rng, dim);
    const ComplexVector phi = oracles::random_vector(rng, dim);
    const Complex full = phi.dot(a * phi);
    const double bound = 1e-10 * phi.squaredNorm() *
                         a.cwiseAbs().maxCoeff() * static_cast<double>(dim);
    CHECK(std::abs(full.imag()) <= bound);
    CHECK(quadratic_form(a, phi) == full.real());
  }
}

TEST_CASE("quantum_average") {
  CHECK(quantum_average(ComplexMatrix::Identity(2, 2),
                        DensityOperator(diag2(0.3, 0.7))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(quantum_average(diag2(5.0, -2.0), ground_state()) ==
        doctest::Approx(5.0).epsilon(1e-14));
  CHECK(quantum_average(oracles::pauli_z(),
                        DensityOperator(diag2(0.5, 0.5))) ==
        doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("classical_average_mc") {
  SUBCASE("degenerate zero field") {
    GaussianFieldSpec spec;
    spec.covariance = ComplexMatrix::Zero(2, 2);
    spec.seed = 3;
    const MonteCarloEstimate mc =
        classical_average_mc(oracles::pauli_z(), spec, 100);
    CHECK(mc.estimate == 0.0);
    CHECK(mc.stderr_of_mean == 0.0);
  }

  SUBCASE("identity observable estimates Tr D") {
    GaussianFieldSpec spec;
    spec.covariance = diag2(2.0, 1.0);
    spec.seed = 17;
    const MonteCarloEstimate mc =
        classical_average_mc(ComplexMatrix::Identity(2, 2), spec, 100000);
    CHECK(std::abs(mc.estimate - 3.0) <= 4.0 * mc.stderr_of_mean);
    CHECK(mc.stderr_of_mean > 0.0);
  }

  SUBCASE("pauli-z on the isotropic field averages to zero") {
    GaussianFieldSpec spec;
    spec.covariance = ComplexMatrix::Identity(2, 2);
    spec.seed = 19;
    const MonteCarloEstimate mc =
        classical_average_mc(oracles::pauli_z(), spec, 100000);
    CHECK(std::abs(mc.estimate) <= 4.0 * mc.stderr_of_mean);
  }

  SUBCASE("reproducible and thread-count invariant") {
    GaussianFieldSpec spec;
    spec.covariance = diag2(2.0, 1.0);
    spec.seed = 23;
    const MonteCarloEstimate a =
        classical_average_mc(oracles::pauli_x(), spec, 5000);
    const MonteCarloEstimate b =
        classical_average_mc(oracles::pauli_x(), spec, 5000);
    const MonteCarloEstimate c =
        classical_average_mc(oracles::pauli_x(), spec, 5000, 4);
    CHECK(a.estimate == b.estimate);
    CHECK(a.stderr_of_mean == b.stderr_of_mean);
    CHECK(a.estimate == c.estimate);
    CHECK(a.stderr_of_mean == c.stderr_of_mean);
  }

  SUBCASE("requires n >= 2") {
    GaussianFieldSpec spec;
    spec.covariance = diag2(1.0, 1.0);
    CHECK_THROWS_AS(
        classical_average_mc(ComplexMatrix::Identity(2, 2), spec, 1), Error);
  }
}

// E f_A(phi) = Tr(D A): the identity that makes quadratic forms reproduce
// quantum averages.
TEST_CASE("classical averages match Tr(DA) on random pairs") {
  std::mt19937_64 rng(30);
  int checked = 0;
  for (int i = 0; i < 20; ++i) {
    const Index dim = 2 + static_cast<Index>(i % 7);
    const ComplexMatrix a = oracles::random_hermitian(rng, dim);
    GaussianFieldSpec spec;
    spec.covariance = oracles::random_psd(rng, dim);
    spec.seed = 100 + i;
    const double exact = (spec.covariance * a).trace().real();
    const MonteCarloEstimate mc = classical_average_mc(a, spec, 20000);
    CHECK(std::abs(mc.estimate - exact) <= 4.0 * mc.stderr_of_mean);
    ++checked;
  }
  CHECK(checked == 20);
}

// Tr(DA) = Tr D Tr(rho A) whenever rho = D / Tr D; pure algebra.
TEST_CASE("scaling identity holds algebraically") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 20; ++i) {
    const Index dim = 2 + static_cast<Index>(i % 7);
    const ComplexMatrix a = oracles::random_hermitian(rng, dim);
    const ComplexMatrix d = oracles::random_psd(rng, dim);
    const double trace_d = d.trace().real();
    const ComplexMatrix rho = d / trace_d;
    const double lhs = (d * a).trace().real();
    const double rhs = trace_d * (rho * a).trace().real();
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
  }
}

TEST_CASE("check_scaling_relation") {
  SUBCASE("identity observable") {
    std::mt19937_64 rng(32);
    const DensityOperator rho(oracles::random_density_matrix(rng, 3));
    const ScalingCheck check = check_scaling_relation(
        ComplexMatrix::Identity(3, 3), rho, DispersionScale(1.0), 100000, 5);
    CHECK(check.quantum_scaled == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check.pass);
    CHECK(check.algebraic_residual <= 1e-12);
  }

  SUBCASE("ground state with pauli-z") {
    const ScalingCheck check =
        check_scaling_relation(oracles::pauli_z(), ground_state(),
                               DispersionScale(1.0), 100000, 7);
    CHECK(check.quantum_scaled == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check.pass);
  }

  SUBCASE("doubling sigma2 doubles both sides") {
    std::mt19937_64 rng(33);
    const DensityOperator rho(oracles::random_density_matrix(rng, 2));
    const ComplexMatrix a = oracles::random_hermitian(rng, 2);
    const ScalingCheck one =
        check_scaling_relation(a, rho, DispersionScale(1.0), 100000, 9);
    const ScalingCheck two =
        check_scaling_relation(a, rho, DispersionScale(2.0), 100000, 9);
    CHECK(two.quantum_scaled ==
          doctest::Approx(2.0 * one.quantum_scaled).epsilon(1e-12));
    CHECK(std::abs(two.classical_estimate - 2.0 * one.classical_estimate) <=
          4.0 * (two.classical_stderr + 2.0 * one.classical_stderr));
    CHECK(one.pass);
    CHECK(two.pass);
  }
}
