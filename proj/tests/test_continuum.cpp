#include <doctest.h>

#include <qzeno/continuum.hpp>
#include <qzeno/scenarios.hpp>

#include <cmath>

using namespace qzeno;

namespace {

// For the qubit direction family theta(t) with H = -(alpha/2) sigma_y the
// steering generator vanishes, so the found-branch chain limit is exactly
// R(eps(t)) E R(eps(t1))^dagger with R(x) = exp(-i sigma_y x / 2).
ComplexMatrix rotation_y(double angle) {
  ComplexMatrix r(2, 2);
  const double c = std::cos(angle / 2), s = std::sin(angle / 2);
  r << c, -s, s, c;
  return r;
}

ComplexMatrix spin_chain_closed_form(const SpinFamilyParams& params, double t1,
                                     double t) {
  ComplexMatrix e = ComplexMatrix::Zero(2, 2);
  e(0, 0) = 1.0;
  return rotation_y(spin_epsilon(params, t)) * e *
         rotation_y(spin_epsilon(params, t1)).adjoint();
}

SpinFamilyParams linear_params(double alpha, double omega) {
  SpinFamilyParams p;
  p.alpha = alpha;
  p.theta = [omega](double t) { return omega * t; };
  p.theta_dot = [omega](double) { return omega; };
  return p;
}

}  // namespace

TEST_CASE("chain ODE reproduces the rotating-family closed form") {
  const SpinFamilyParams params = linear_params(0.3, 0.7);
  const ProjectorFamily family = spin_family(params, 0.0, 1.0);
  const HeisenbergFamily heis(family, spin_hamiltonian(0.3));

  OdeConfig cfg;
  cfg.step_count = 1000;
  const ComplexMatrix a = solve_chain_ode(heis, Branch::found, 0.0, 0.8, cfg);
  CHECK(op_norm(a - spin_chain_closed_form(params, 0.0, 0.8)) <= 1e-10);

  // Nonzero chain start exercises the E_H(t1) initial condition.
  const ComplexMatrix b = solve_chain_ode(heis, Branch::found, 0.3, 0.9, cfg);
  CHECK(op_norm(b - spin_chain_closed_form(params, 0.3, 0.9)) <= 1e-10);
}

TEST_CASE("chain ODE error is fourth order in the step size") {
  const SpinFamilyParams params = linear_params(0.4, 0.9);
  const ProjectorFamily family = spin_family(params, 0.0, 1.0);
  const HeisenbergFamily heis(family, spin_hamiltonian(0.4));
  const ComplexMatrix want = spin_chain_closed_form(params, 0.0, 1.0);

  double err[3];
  const int steps[3] = {40, 80, 160};
  for (int i = 0; i < 3; ++i) {
    OdeConfig cfg;
    cfg.step_count = steps[i];
    err[i] =
        op_norm(solve_chain_ode(heis, Branch::found, 0.0, 1.0, cfg) - want);
  }
  CHECK(err[0] / err[1] > 13.0);
  CHECK(err[0] / err[1] < 19.0);
  CHECK(err[1] / err[2] > 13.0);
  CHECK(err[1] / err[2] < 19.0);
}

TEST_CASE("ordered exponential starts at the identity") {
  const SpinFamilyParams params = linear_params(0.2, 0.5);
  const ProjectorFamily family = spin_family(params, 0.0, 1.0);
  const HeisenbergFamily heis(family, spin_hamiltonian(0.2));
  const ComplexMatrix x =
      ordered_exponential(heis, Branch::complement, 0.4, 0.4);
  CHECK(op_norm(x - ComplexMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("high-order dyson series approaches the ordered exponential") {
  const SpinFamilyParams params = linear_params(0.3, 0.7);
  const ProjectorFamily family = spin_family(params, 0.0, 0.5);
  const HeisenbergFamily heis(family, spin_hamiltonian(0.3));

  DysonTruncation trunc;
  trunc.order = 8;
  trunc.quadrature_points = 2048;
  const std::vector<ComplexMatrix> terms =
      dyson_terms(heis, Branch::complement, 0.0, 0.4, trunc);
  REQUIRE(terms.size() == 8);
  ComplexMatrix series = ComplexMatrix::Identity(2, 2);
  for (const ComplexMatrix& term : terms) series += term;

  OdeConfig cfg;
  cfg.step_count = 4000;
  const ComplexMatrix x =
      ordered_exponential(heis, Branch::complement, 0.0, 0.4, cfg);
  CHECK(op_norm(x - series) <= 1e-9);

  // dyson_series wires in the branch initial factor.
  const ComplexMatrix with_init =
      dyson_series(heis, Branch::complement, 0.0, 0.4, trunc);
  const ComplexMatrix e0 = heis.value(0.0);
  CHECK(op_norm(with_init -
                series * (ComplexMatrix::Identity(2, 2) - e0)) <= 1e-12);
}

TEST_CASE("dyson guards") {
  const SpinFamilyParams params = linear_params(0.3, 0.7);
  const ProjectorFamily family = spin_family(params, 0.0, 1.0);
  const HeisenbergFamily heis(family, spin_hamiltonian(0.3));
  DysonTruncation trunc;
  trunc.order = 9;
  CHECK_THROWS_AS(dyson_terms(heis, Branch::found, 0.0, 0.5, trunc),
                  ValidationError);
  trunc.order = 2;
  trunc.quadrature_points = 1;
  CHECK_THROWS_AS(dyson_terms(heis, Branch::found, 0.0, 0.5, trunc),
                  ValidationError);
}

TEST_CASE("residual check accepts the closed form and rejects a frozen one") {
  const SpinFamilyParams params = linear_params(0.3, 0.7);
  const ProjectorFamily family = spin_family(params, 0.0, 1.0);
  const HeisenbergFamily heis(family, spin_hamiltonian(0.3));

  const auto candidate = [&params](double t) {
    return spin_chain_closed_form(params, 0.0, t);
  };
  OdeConfig cfg;
  cfg.step_count = 1000;
  CHECK(residual_check(heis, candidate, Branch::found, 0.0, 1.0, cfg) <= 1e-6);

  const auto frozen = [&params](double) {
    return spin_chain_closed_form(params, 0.0, 0.0);
  };
  CHECK(residual_check(heis, frozen, Branch::found, 0.0, 1.0, cfg) > 1e-2);
}

TEST_CASE("discrete chain at n = 4096 matches the chain ODE") {
  const SteeredMeasurement m = seeded_steered_measurement(3, 1, 2);
  const ProjectorFamily family = m.family(0.7);
  const HeisenbergFamily heis(family, m.h());

  const MeasurementSchedule sched(0.0, 0.7, 4096);
  const ComplexMatrix chain =
      chain_operator(family, m.h(), sched, HistoryOutcome::all_found(4096));
  OdeConfig cfg;
  cfg.step_count = 2000;
  const ComplexMatrix ode = solve_chain_ode(heis, Branch::found, 0.0, 0.7, cfg);
  CHECK(op_norm(chain - ode) <= 1e-3);
}

TEST_CASE("analytic and finite-difference heisenberg derivatives agree") {
  const SteeredMeasurement m = seeded_steered_measurement(4, 2, 3);
  const ProjectorFamily family = m.family(1.0);
  const HeisenbergFamily heis(family, m.h());
  for (double t : {0.2, 0.5, 0.8}) {
    const ComplexMatrix da = heisenberg_derivative(heis, t,
                                                   DerivativeMode::analytic);
    const ComplexMatrix dfd = heisenberg_derivative(
        heis, t, DerivativeMode::central_difference, 1e-5);
    CHECK(op_norm(da - dfd) <= 1e-8);
  }
}

TEST_CASE("complement-branch ODE solves the complement chain") {
  // Frozen commuting family: all-missed chain is exactly 1 - E at any n,
  // and the complement ODE limit must agree.
  ComplexMatrix em = ComplexMatrix::Zero(3, 3);
  em(0, 0) = 1.0;
  const Projector e(em);
  ComplexMatrix hm = ComplexMatrix::Zero(3, 3);
  hm(1, 1) = 0.4;
  hm(2, 2) = -0.2;
  const ProjectorFamily family = ProjectorFamily::constant(e, 0.0, 1.0);
  const HeisenbergFamily heis(family, HermitianOperator(hm));
  OdeConfig cfg;
  cfg.step_count = 200;
  const ComplexMatrix a =
      solve_chain_ode(heis, Branch::complement, 0.0, 1.0, cfg);
  CHECK(op_norm(a - (ComplexMatrix::Identity(3, 3) - em)) <= 1e-12);
}
