#include <doctest.h>

#include <qzeno/antizeno.hpp>
#include <qzeno/scenarios.hpp>

#include <cmath>
#include <numbers>

using namespace qzeno;

namespace {
constexpr double kPi = std::numbers::pi_v<double>;
}

TEST_CASE("qubit rotation keeps p = 1 while reaching the orthogonal state") {
  const double omega = 1.3;
  const SteeredMeasurement m = qubit_rotation_measurement(omega);
  const double t_flip = kPi / (2.0 * omega);

  OdeConfig cfg;
  cfg.step_count = 1000;
  const double p = antizeno_probability(m, t_flip, cfg);
  CHECK(std::abs(p - 1.0) <= 1e-9);

  const SteeringPropagator prop = solve_steering(m, 0.0, t_flip, cfg);
  CHECK(unitarity_defect(prop.w) <= 1e-12);
  // The steering generator vanishes identically here, so W stays 1.
  CHECK(op_norm(prop.w - ComplexMatrix::Identity(2, 2)) <= 1e-10);
  CHECK(op_norm(steering_generator(m, 0.4)) <= 1e-12);

  const StateVector psi = evolved_state(m, t_flip, cfg);
  ComplexVector one = ComplexVector::Zero(2);
  one(1) = 1.0;
  CHECK((psi.vector() - one).norm() <= 1e-8);
  CHECK(fidelity(m.initial_state().vector(), psi.vector()) <= 1e-12);
}

TEST_CASE("zeno closed form against the explicit spectral expression") {
  ComplexVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const StateVector psi0(plus);
  const HermitianOperator h(pauli_z());  // <+|sigma_z|+> = 0
  const double t1 = 0.2, t = 0.5;
  const ComplexMatrix a = zeno_closed_form(psi0, h, t1, t);
  ComplexMatrix want(2, 2);
  const double sign[2] = {1.0, -1.0};
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      want(j, k) = 0.5 * std::polar(1.0, t * sign[j]) *
                   std::polar(1.0, -t1 * sign[k]);
  CHECK(op_norm(a - want) <= 1e-14);
}

TEST_CASE("zeno probability is one for seeded watched states") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    const StateVector psi0 = random_state(4, rng);
    const HermitianOperator h = random_hermitian(4, rng);
    CHECK(std::abs(zeno_probability(psi0, h, 1.3) - 1.0) <= 1e-12);
  }
}

TEST_CASE("steering generator is anti-hermitian") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 9);
  for (double t : {0.1, 0.5, 0.9}) {
    const ComplexMatrix g = steering_generator(m, t);
    CHECK(op_norm(g + g.adjoint()) <= 1e-10);
  }
}

TEST_CASE("steering and chain ODEs produce the same operator") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 6);
  OdeConfig cfg;
  cfg.step_count = 2000;
  const SteeringPropagator prop = solve_steering(m, 0.0, 1.0, cfg);

  const ProjectorFamily family = m.family(1.0);
  const HeisenbergFamily heis(family, m.h());
  const ComplexMatrix chain_limit =
      solve_chain_ode(heis, Branch::found, 0.0, 1.0, cfg);
  CHECK(op_norm(prop.a_h - chain_limit) <= 1e-6);
}

TEST_CASE("continuum probability is one across seeds") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SteeredMeasurement m = seeded_steered_measurement(4, 2, seed);
    const double p = antizeno_probability(m, 1.0);
    CHECK(std::abs(p - 1.0) <= 1e-6);
  }
}

TEST_CASE("evolved state stays on the moving support") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 11);
  const ProjectorFamily family = m.family(1.0);
  for (double t : {0.25, 0.5, 1.0}) {
    const StateVector psi = evolved_state(m, t);
    CHECK(std::abs(psi.vector().norm() - 1.0) <= 1e-12);
    const ComplexVector v = psi.vector();
    CHECK((family.value(t) * v - v).norm() <= 1e-6);
  }
}

TEST_CASE("evolved density matches the evolved state") {
  const SteeredMeasurement m = seeded_steered_measurement(3, 1, 12);
  const StateVector psi = evolved_state(m, 0.7);
  const DensityOperator rho = evolved_density(m, 0.7);
  CHECK(op_norm(rho.matrix() - psi.vector() * psi.vector().adjoint()) <= 1e-8);
}

TEST_CASE("effective hamiltonian is hermitian and drives the trajectory") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 13);
  const double t = 0.5, delta = 0.02;
  const ComplexMatrix h_eff = effective_hamiltonian(m, t);
  CHECK(hermiticity_defect(h_eff) <= 1e-10);

  OdeConfig cfg;
  cfg.step_count = 2000;
  const ComplexVector plus = evolved_state(m, t + delta, cfg).vector();
  const ComplexVector minus = evolved_state(m, t - delta, cfg).vector();
  const ComplexVector psi = evolved_state(m, t, cfg).vector();
  const ComplexVector residual =
      (plus - minus) / (2.0 * delta) + Complex(0, 1) * (h_eff * psi);
  CHECK(residual.norm() <= 0.05);
}

TEST_CASE("rank-1 phase is real and rebuilds the evolved state") {
  const SteeredMeasurement m = seeded_steered_measurement(3, 1, 4);
  const double t = 0.9;
  for (double s : {0.1, 0.4, 0.8})
    CHECK(std::isfinite(rank1_phase_integrand(m, s)));

  const double phase = rank1_phase(m, t);
  const ComplexVector psi0 = m.initial_state().vector();
  const ComplexVector want =
      std::polar(1.0, phase) * (m.u().value(t) * psi0);
  const ComplexVector got = evolved_state(m, t).vector();
  CHECK((got - want).norm() <= 1e-6);
}

TEST_CASE("rank-1 phase accessors reject higher rank") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 4);
  CHECK_THROWS_AS(rank1_phase_integrand(m, 0.3), ValidationError);
}

TEST_CASE("rank-n block dynamics match the full solve; unordered does not") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 1);
  const ComplexMatrix basis = range_basis(m.e());
  const double t = 1.0;

  for (double s : {0.2, 0.6}) {
    const ComplexMatrix f = rankn_f_matrix(m, basis, s);
    CHECK(op_norm(f + f.adjoint()) <= 1e-10);
  }

  const StateVector block = rankn_state(m, basis, t);
  const StateVector full = evolved_state(m, t);
  CHECK((block.vector() - full.vector()).norm() <= 1e-6);

  const StateVector unordered = rankn_state_unordered(m, basis, t);
  CHECK((unordered.vector() - full.vector()).norm() >= 1e-2);
}

TEST_CASE("rank-n rejects a basis outside the projector range") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 1);
  ComplexMatrix bad = ComplexMatrix::Zero(4, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = 1.0;
  CHECK_THROWS_AS(rankn_f_matrix(m, bad, 0.2), ValidationError);
}

TEST_CASE("construction validates the theorem preconditions") {
  ComplexVector zero = ComplexVector::Zero(2), plus(2);
  zero(0) = 1.0;
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const Projector e(zero * zero.adjoint());
  const HermitianOperator h(ComplexMatrix::Zero(2, 2));
  const UnitaryFamily u = UnitaryFamily::from_constant_generator(
      Complex(0, -1) * pauli_y());

  // rho0 not supported on E.
  CHECK_THROWS_AS(
      SteeredMeasurement(e, u, h, DensityOperator(plus * plus.adjoint())),
      ValidationError);

  // A family anchored away from zero breaks U(0) = 1.
  const UnitaryFamily shifted = UnitaryFamily::from_constant_generator(
      Complex(0, -1) * pauli_y(), 0.5);
  CHECK_THROWS_AS(SteeredMeasurement(e, shifted, h,
                                     DensityOperator(zero * zero.adjoint())),
                  ValidationError);
}
