#include <qzeno/chain.hpp>

#include <algorithm>
#include <cmath>

namespace qzeno {

MeasurementSchedule::MeasurementSchedule(double start, double end, int count)
    : t_start(start), t_end(end), n(count) {
  require(n >= 1, "MeasurementSchedule: n must be >= 1");
  require(std::isfinite(t_start) && std::isfinite(t_end),
          "MeasurementSchedule: non-finite endpoint");
  if (n >= 2)
    require(t_end > t_start,
            "MeasurementSchedule: grid must be strictly increasing");
}

double MeasurementSchedule::time(int i) const {
  require(i >= 0 && i < n, "MeasurementSchedule: index out of range");
  if (n == 1) return t_start;
  return t_start + (t_end - t_start) * static_cast<double>(i) /
                       static_cast<double>(n - 1);
}

std::vector<double> MeasurementSchedule::grid() const {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = time(i);
  return g;
}

HistoryOutcome HistoryOutcome::all_found(int n) {
  return HistoryOutcome{std::vector<bool>(static_cast<size_t>(n), true)};
}

HistoryOutcome HistoryOutcome::all_missed(int n) {
  return HistoryOutcome{std::vector<bool>(static_cast<size_t>(n), false)};
}

ComplexMatrix chain_operator(const ProjectorFamily& family,
                             const HermitianOperator& h,
                             const MeasurementSchedule& sched,
                             const HistoryOutcome& outcome,
                             const ToleranceConfig& tol) {
  require(outcome.bits.size() == static_cast<size_t>(sched.n),
          "chain_operator: outcome length mismatch");
  HeisenbergFamily heis(family, h, tol);
  Eigen::Index d = heis.dim();
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix a;  // accumulated product, rightmost factor earliest
  for (int i = 0; i < sched.n; ++i) {
    ComplexMatrix p = heis.value(sched.time(i));
    if (!outcome.bits[static_cast<size_t>(i)]) p = id - p;
    a = (i == 0) ? p : ComplexMatrix(p * a);
  }
  return a;
}

double chain_probability(const DensityOperator& rho0,
                         const ComplexMatrix& chain_op,
                         const ToleranceConfig& tol) {
  require(chain_op.rows() == rho0.dim() && chain_op.cols() == rho0.dim(),
          "chain_probability: dimension mismatch");
  double p =
      (chain_op * rho0.matrix() * chain_op.adjoint()).trace().real();
  require(p >= -10.0 * tol.tol_alg && p <= 1.0 + 10.0 * tol.tol_alg,
          "chain_probability: probability " + std::to_string(p) +
              " outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

DensityOperator posterior_state(const DensityOperator& rho0,
                                const HermitianOperator& h,
                                const ComplexMatrix& chain_op, double t_final,
                                const ToleranceConfig& tol) {
  double p = chain_probability(rho0, chain_op, tol);
  if (p <= tol.prob_floor)
    throw NullOutcome("posterior_state: history probability " +
                      std::to_string(p) + " at or below prob_floor");
  ComplexMatrix k =
      mat_exp(Complex(0.0, -t_final) * h.matrix(), tol) * chain_op;
  return DensityOperator(k * rho0.matrix() * k.adjoint() / p, tol);
}

ComplexMatrix union_propagator(const ProjectorFamily& family,
                               const HermitianOperator& h,
                               const MeasurementSchedule& sched, double t_prime,
                               const ToleranceConfig& tol) {
  ComplexMatrix a_bar =
      chain_operator(family, h, sched, HistoryOutcome::all_missed(sched.n), tol);
  Eigen::Index d = a_bar.rows();
  return mat_exp(Complex(0.0, -t_prime) * h.matrix(), tol) *
         (ComplexMatrix::Identity(d, d) - a_bar);
}

namespace {

// Depth-first enumeration over outcome bits, reusing partial products.
void closure_walk(const std::vector<ComplexMatrix>& found,
                  const std::vector<ComplexMatrix>& missed,
                  const DensityOperator& rho0, const ToleranceConfig& tol,
                  size_t depth, const ComplexMatrix& partial, double& total) {
  if (depth == found.size()) {
    total += chain_probability(rho0, partial, tol);
    return;
  }
  closure_walk(found, missed, rho0, tol, depth + 1, found[depth] * partial,
               total);
  closure_walk(found, missed, rho0, tol, depth + 1, missed[depth] * partial,
               total);
}

}  // namespace

double all_histories_closure(const ProjectorFamily& family,
                             const HermitianOperator& h,
                             const MeasurementSchedule& sched,
                             const DensityOperator& rho0,
                             const ToleranceConfig& tol) {
  require(sched.n <= 12, "all_histories_closure: n too large (max 12)");
  HeisenbergFamily heis(family, h, tol);
  Eigen::Index d = heis.dim();
  ComplexMatrix id = ComplexMatrix::Identity(d, d);
  std::vector<ComplexMatrix> found, missed;
  for (int i = 0; i < sched.n; ++i) {
    found.push_back(heis.value(sched.time(i)));
    missed.push_back(id - found.back());
  }
  double total = 0.0;
  closure_walk(found, missed, rho0, tol, 0, id, total);
  return total;
}

ChainResult run_chain(const ProjectorFamily& family, const HermitianOperator& h,
                      const MeasurementSchedule& sched,
                      const HistoryOutcome& outcome,
                      const DensityOperator& rho0, double t_final,
                      const ToleranceConfig& tol) {
  ChainResult result;
  result.chain_op = chain_operator(family, h, sched, outcome, tol);
  result.probability = chain_probability(rho0, result.chain_op, tol);
  if (result.probability > tol.prob_floor)
    result.posterior =
        posterior_state(rho0, h, result.chain_op, t_final, tol);
  return result;
}

}  // namespace qzeno
