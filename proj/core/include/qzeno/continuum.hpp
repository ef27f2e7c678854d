#pragma once

#include <qzeno/families.hpp>

#include <functional>
#include <vector>

namespace qzeno {

// Fixed-step integrator settings for the measurement ODEs.
struct OdeConfig {
  int step_count = 1000;
  DerivativeMode derivative_mode = DerivativeMode::analytic;
  double h_fd = 1e-5;
};

// Truncation of the time-ordered exponential series.
struct DysonTruncation {
  int order = 4;
  int quadrature_points = 64;  // grid points per iterated integral pass
};

// h: the measured branch (factors E_H); h-bar: the complement branch.
enum class Branch { found, complement };

// dE_H/dt = i[H, E_H(t)] + exp(iHt) (dE_s/dt) exp(-iHt).
ComplexMatrix heisenberg_derivative(const HeisenbergFamily& fam, double t,
                                    DerivativeMode mode = DerivativeMode::analytic,
                                    double h_fd = 1e-5);

// Integrates dA/dt' = (dE_H/dt') A (found) or dA/dt' = (dE_H-bar/dt') A
// (complement) from A(t1) = E_H(t1) / E_H-bar(t1); each integrator stage
// left-multiplies the accumulated A by the derivative at the stage time.
ComplexMatrix solve_chain_ode(const HeisenbergFamily& fam, Branch branch,
                              double t1, double t, const OdeConfig& cfg = {});

// The bare time-ordered exponential factor X with dX/dt' = (dE_H/dt') X,
// X(t1) = 1, so that solve_chain_ode = X * E_H(t1).
ComplexMatrix ordered_exponential(const HeisenbergFamily& fam, Branch branch,
                                  double t1, double t,
                                  const OdeConfig& cfg = {});

// Iterated ordered-simplex integrals I_m, m = 1..order, of the branch
// derivative over t > s_m > ... > s_1 > t1, computed by cumulative
// trapezoidal passes (one pass per order).
std::vector<ComplexMatrix> dyson_terms(const HeisenbergFamily& fam,
                                       Branch branch, double t1, double t,
                                       const DysonTruncation& trunc = {});

// (1 + sum_m I_m) * E_H(t1) (or the complement projector).
ComplexMatrix dyson_series(const HeisenbergFamily& fam, Branch branch,
                           double t1, double t,
                           const DysonTruncation& trunc = {});

// Max over the grid of || dA/dt' - (dE_H/dt') A(t') || with dA/dt' from
// central differences of the candidate; the candidate is sampled exactly at
// t1 + i (t - t1)/step_count, i = 0..step_count.
double residual_check(const HeisenbergFamily& fam,
                      const std::function<ComplexMatrix(double)>& candidate,
                      Branch branch, double t1, double t,
                      const OdeConfig& cfg = {});

}  // namespace qzeno
