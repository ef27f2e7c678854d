#pragma once

#include <qzeno/antizeno.hpp>
#include <qzeno/chain.hpp>

#include <array>
#include <cstdint>

namespace qzeno {

// ---------------------------------------------------------------------------
// von Neumann measurement steering: drive |phi> to |psi> through k
// interpolating complete measurements.
// ---------------------------------------------------------------------------

struct SteeringPlan {
  SteeringPlan(StateVector phi_in, StateVector psi_in, int k_in,
               std::uint64_t seed_in, const ToleranceConfig& tol_in = {});

  StateVector phi;
  StateVector psi;
  int k;
  std::uint64_t seed;  // drives the per-step random basis completions
  ToleranceConfig tol;

  // psi^(nu) = cos(pi nu / 2k) phi + sin(pi nu / 2k) psi.
  StateVector interpolant(int nu) const;
};

struct VnSteeringResult {
  DensityOperator final;
  double fidelity = 0.0;             // <psi| rho^(k) |psi>
  std::vector<double> entropies;     // S(rho^(nu)), nu = 0..k
};

VnSteeringResult vn_steering_run(const SteeringPlan& plan);

// [cos(pi/2k)]^{2k}, the success-probability lower bound.
double vn_bound(int k);

// Deterministic orthonormal basis whose first column is psi (standard basis
// completion); the frame in which the final state should be near-diagonal.
ComplexMatrix vn_target_basis(const SteeringPlan& plan);

// rho^(k) expressed in vn_target_basis.
ComplexMatrix vn_in_target_basis(const SteeringPlan& plan);

// Max |off-diagonal| of rho^(k) in the target basis.
double vn_offdiagonal_decay(const SteeringPlan& plan);

// Steering between a non-orthogonal pair by routing through an orthogonal
// intermediary chi (needs ambient dim >= 3): phi -> chi -> psi, k steps per
// leg; returns the final fidelity to psi.
double vn_two_leg_route(const StateVector& phi, const StateVector& psi, int k,
                        std::uint64_t seed, const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Spin-1/2 continuous measurement: H = -(alpha/2) sigma_y, direction family
// theta(t), effective angle eps(t) = theta(t) + alpha t.
// ---------------------------------------------------------------------------

struct SpinFamilyParams {
  double alpha = 0.0;
  std::function<double(double)> theta;      // theta(0) = 0
  std::function<double(double)> theta_dot;
};

HermitianOperator spin_hamiltonian(double alpha,
                                   const ToleranceConfig& tol = {});

ProjectorFamily spin_family(const SpinFamilyParams& params, double t_start,
                            double t_end, const ToleranceConfig& tol = {});

double spin_epsilon(const SpinFamilyParams& params, double t);

// Heisenberg projector at effective angle eps: (1 + sin eps sx + cos eps sz)/2.
ComplexMatrix spin_heisenberg_closed_form(double eps);

// The order-th bracketed term of the complement-branch series in eps.
ComplexMatrix spin_series_closed_form(double eps, int order);

struct SpinSeriesSample {
  double eps = 0.0;
  double t = 0.0;                     // time with eps(t) = eps
  std::vector<double> order_errors;   // |numeric term m - closed form m|
  double remainder = 0.0;             // ||T-exp - (1 + sum terms)||
};

struct SpinSeriesReport {
  std::vector<SpinSeriesSample> samples;
  double remainder_slope = 0.0;  // log-log fit of remainder vs eps
};

// Per-order comparison of the numeric Dyson terms against the closed forms,
// plus the remainder scaling fit; requires eps(t) monotone increasing.
SpinSeriesReport spin_series_verify(const SpinFamilyParams& params,
                                    const std::vector<double>& eps_values,
                                    int max_order = 4,
                                    int quadrature_points = 2048,
                                    int reference_steps = 4000,
                                    const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Swept spectral window on a finite lattice (H diagonal, commuting).
// ---------------------------------------------------------------------------

struct WindowFamilyParams {
  Eigen::Index dim = 8;
  std::function<double(double)> lambda_l;
  std::function<double(double)> lambda_r;
  Eigen::VectorXd h_diag;  // empty: defaults to diag(0, 1, ..., dim-1)
};

ProjectorFamily window_family(const WindowFamilyParams& params, double t_start,
                              double t_end, const ToleranceConfig& tol = {});

HermitianOperator window_hamiltonian(const WindowFamilyParams& params,
                                     const ToleranceConfig& tol = {});

// Projector onto indices j < min_grid lambda_l or j > max_grid lambda_r —
// the n -> infinity value of the complement chain on the schedule grid.
Projector swept_window_limit(const WindowFamilyParams& params,
                             const MeasurementSchedule& sched,
                             const ToleranceConfig& tol = {});

// ---------------------------------------------------------------------------
// Seeded steered-measurement instances used across scenarios and tests.
// ---------------------------------------------------------------------------

// Random rank-r projector, unit-spectral-norm Hamiltonian, pure rho0 in
// range(E), and a time-dependent anti-hermitian generator for U.
SteeredMeasurement seeded_steered_measurement(Eigen::Index dim,
                                              Eigen::Index rank,
                                              std::uint64_t seed,
                                              const ToleranceConfig& tol = {});

// E = |0><0|, U(t) = exp(-i sigma_y omega t), H = 0: the watched qubit that
// is steered into the orthogonal state at T = pi/(2 omega).
SteeredMeasurement qubit_rotation_measurement(double omega,
                                              const ToleranceConfig& tol = {});

// Static rank-1 watch: E = |psi0><psi0|, U = 1, H a seeded draw scaled to
// spectral norm hamiltonian_scale.  The frozen-evolution limit has the
// closed form zeno_closed_form().
SteeredMeasurement zeno_static_measurement(Eigen::Index dim,
                                           double hamiltonian_scale,
                                           std::uint64_t seed,
                                           const ToleranceConfig& tol = {});

}  // namespace qzeno
