#pragma once

#include <qzeno/continuum.hpp>

namespace qzeno {

// A projector steered by a unitary family, E_s(t) = U(t) E U(t)^dagger,
// measured continuously on a system with Hamiltonian H starting from rho0.
// Construction validates the two theorem preconditions: E rho0 E = rho0 and
// U(0) = 1.
class SteeredMeasurement {
 public:
  SteeredMeasurement(Projector e, UnitaryFamily u, HermitianOperator h,
                     DensityOperator rho0, const ToleranceConfig& tol = {});

  const Projector& e() const { return e_; }
  const UnitaryFamily& u() const { return u_; }
  const HermitianOperator& h() const { return h_; }
  const DensityOperator& rho0() const { return rho0_; }
  Eigen::Index dim() const { return e_.dim(); }
  const ToleranceConfig& tol() const { return tol_; }

  // E_s(t) = U(t) E U(t)^dagger as a steered ProjectorFamily on [0, t_end].
  ProjectorFamily family(double t_end) const;
  // Initial state vector; requires rho0 pure.
  StateVector initial_state() const;

 private:
  Projector e_;
  UnitaryFamily u_;
  HermitianOperator h_;
  DensityOperator rho0_;
  ToleranceConfig tol_;
};

// V(t) = exp(iHt) U(t), with Vdot^dagger V = Udot^dagger U - i U^dagger H U.
class VFamily {
 public:
  explicit VFamily(const SteeredMeasurement& m);

  ComplexMatrix value(double t) const;
  ComplexMatrix vdag_dot_v(double t) const;  // anti-hermitian
  Eigen::Index dim() const { return dim_; }

 private:
  Eigen::Index dim_;
  UnitaryFamily u_;
  ComplexMatrix h_;
  Eigen::VectorXd h_eigs_;
  ComplexMatrix h_vecs_;
};

// Result of integrating the steering ODE dW/dt = G(t) W on [t1, t].
struct SteeringPropagator {
  ComplexMatrix w;    // time-ordered exponential of E Vdot^dagger V E
  ComplexMatrix a_h;  // V(t) W E V(t1)^dagger
  double t1 = 0.0;
  double t = 0.0;
};

// exp(i(H - Hbar)t) |psi0><psi0| exp(-i(H - Hbar)t1), Hbar = <psi0|H|psi0>.
ComplexMatrix zeno_closed_form(const StateVector& psi0,
                               const HermitianOperator& h, double t1, double t,
                               const ToleranceConfig& tol = {});

// || K_h(t) psi0 ||^2 from the closed form with t1 = 0; equals 1.
double zeno_probability(const StateVector& psi0, const HermitianOperator& h,
                        double t, const ToleranceConfig& tol = {});

// G(t) = E Vdot^dagger(t) V(t) E; anti-hermitian.
ComplexMatrix steering_generator(const SteeredMeasurement& m, double t);

// Integrates dW/dt' = G(t') W, W(t1) = 1, and assembles
// A_h = V(t) W E V(t1)^dagger; W is unitary within tol_conv.
SteeringPropagator solve_steering(const SteeredMeasurement& m, double t1,
                                  double t, const OdeConfig& cfg = {});

// Tr(A_h rho0 A_h^dagger) via solve_steering on [0, t]; the theorem value
// is 1 whenever the construction preconditions hold.
double antizeno_probability(const SteeredMeasurement& m, double t,
                            const OdeConfig& cfg = {});

// psi_h(t) = exp(-iHt) A_h psi(0); unit norm within tol_conv (checked), then
// normalised exactly.
StateVector evolved_state(const SteeredMeasurement& m, double t,
                          const OdeConfig& cfg = {});

DensityOperator evolved_density(const SteeredMeasurement& m, double t,
                                const OdeConfig& cfg = {});

// H_eff(t) = E_s H E_s + i [dE_s/dt, E_s]; hermitian.
ComplexMatrix effective_hamiltonian(const SteeredMeasurement& m, double t);

// The rank-1 geometric-phase integrand <psi~|(i d/dt - H)|psi~>, psi~ = U psi0.
double rank1_phase_integrand(const SteeredMeasurement& m, double t);

// Integral of the integrand over [0, t] (composite Simpson); real, unwrapped.
double rank1_phase(const SteeredMeasurement& m, double t,
                   int quadrature_points = 2048);

// f_{ab}(t) = i <psi~_a|(i d/dt - H)|psi~_b> = <a| Vdot^dagger V |b> on an
// orthonormal basis of range(E); anti-hermitian.
ComplexMatrix rankn_f_matrix(const SteeredMeasurement& m,
                             const ComplexMatrix& basis, double t);

// U(t) B Y(t) B^dagger psi(0) with dY/dt = f(t) Y on the rank-n block.
StateVector rankn_state(const SteeredMeasurement& m, const ComplexMatrix& basis,
                        double t, const OdeConfig& cfg = {});

// Same but with the plain (unordered) exponential of the integral of f;
// disagrees with rankn_state whenever the f(t) fail to commute.
StateVector rankn_state_unordered(const SteeredMeasurement& m,
                                  const ComplexMatrix& basis, double t,
                                  int quadrature_points = 2048);

}  // namespace qzeno
