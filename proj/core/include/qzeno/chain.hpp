#pragma once

#include <qzeno/families.hpp>

#include <optional>
#include <vector>

namespace qzeno {

// Uniform grid t_i = t_start + (t_end - t_start)(i-1)/(n-1), both endpoints
// measured; n = 1 degenerates to the single point t_start.
struct MeasurementSchedule {
  MeasurementSchedule(double t_start, double t_end, int n);

  double t_start;
  double t_end;
  int n;

  double time(int i) const;  // i in [0, n)
  std::vector<double> grid() const;
};

// One bit per grid point: true = E found 1, false = complement found 1.
struct HistoryOutcome {
  std::vector<bool> bits;

  static HistoryOutcome all_found(int n);
  static HistoryOutcome all_missed(int n);
};

struct ChainResult {
  ComplexMatrix chain_op;
  double probability = 0.0;
  std::optional<DensityOperator> posterior;
};

// T-ordered product of Heisenberg projectors over the grid, rightmost factor
// at the earliest time; bit i selects E_H(t_i) or its complement.
ComplexMatrix chain_operator(const ProjectorFamily& family,
                             const HermitianOperator& h,
                             const MeasurementSchedule& sched,
                             const HistoryOutcome& outcome,
                             const ToleranceConfig& tol = {});

// Tr(A rho0 A^dagger), clamped to [0, 1]; violations beyond 10 tol_alg throw.
double chain_probability(const DensityOperator& rho0,
                         const ComplexMatrix& chain_op,
                         const ToleranceConfig& tol = {});

// K rho0 K^dagger / Tr with K = exp(-i H t_final) A.
DensityOperator posterior_state(const DensityOperator& rho0,
                                const HermitianOperator& h,
                                const ComplexMatrix& chain_op, double t_final,
                                const ToleranceConfig& tol = {});

// K(t') = exp(-i H t') [1 - A_complement(t_end, t_start)].
ComplexMatrix union_propagator(const ProjectorFamily& family,
                               const HermitianOperator& h,
                               const MeasurementSchedule& sched, double t_prime,
                               const ToleranceConfig& tol = {});

// Sum of p(h) over all 2^n histories; n <= 12 guard.
double all_histories_closure(const ProjectorFamily& family,
                             const HermitianOperator& h,
                             const MeasurementSchedule& sched,
                             const DensityOperator& rho0,
                             const ToleranceConfig& tol = {});

// Convenience: chain operator, probability, and posterior at t_final in one
// call; the posterior is absent when the probability is at or below
// prob_floor.
ChainResult run_chain(const ProjectorFamily& family, const HermitianOperator& h,
                      const MeasurementSchedule& sched,
                      const HistoryOutcome& outcome, const DensityOperator& rho0,
                      double t_final, const ToleranceConfig& tol = {});

}  // namespace qzeno
