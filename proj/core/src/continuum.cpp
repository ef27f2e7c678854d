#include <qzeno/continuum.hpp>

#include <cmath>

namespace qzeno {

namespace {

// Branch derivative F(t): dE_H/dt for found, its negative for complement
// (E_H-bar = 1 - E_H).
ComplexMatrix branch_derivative(const HeisenbergFamily& fam, Branch branch,
                                double t, const OdeConfig& cfg) {
  ComplexMatrix d = fam.derivative(t, cfg.derivative_mode, cfg.h_fd);
  if (branch == Branch::complement) d = -d;
  return d;
}

ComplexMatrix branch_initial(const HeisenbergFamily& fam, Branch branch,
                             double t1) {
  ComplexMatrix e = fam.value(t1);
  if (branch == Branch::complement)
    e = ComplexMatrix::Identity(e.rows(), e.cols()) - e;
  return e;
}

// RK4 for the linear left-multiplicative ODE dX/dt = F(t) X.
ComplexMatrix integrate_product_ode(const HeisenbergFamily& fam, Branch branch,
                                    double t1, double t, const OdeConfig& cfg,
                                    ComplexMatrix x) {
  require(t >= t1, "integrate_product_ode: t must be >= t1");
  require(cfg.step_count >= 2, "OdeConfig: step_count must be >= 2");
  if (t == t1) return x;
  const int n = cfg.step_count;
  const double h = (t - t1) / n;
  for (int i = 0; i < n; ++i) {
    double ti = t1 + i * h;
    ComplexMatrix f0 = branch_derivative(fam, branch, ti, cfg);
    ComplexMatrix fm = branch_derivative(fam, branch, ti + 0.5 * h, cfg);
    ComplexMatrix f1 = branch_derivative(fam, branch, ti + h, cfg);
    ComplexMatrix k1 = f0 * x;
    ComplexMatrix k2 = fm * (x + 0.5 * h * k1);
    ComplexMatrix k3 = fm * (x + 0.5 * h * k2);
    ComplexMatrix k4 = f1 * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

}  // namespace

ComplexMatrix heisenberg_derivative(const HeisenbergFamily& fam, double t,
                                    DerivativeMode mode, double h_fd) {
  return fam.derivative(t, mode, h_fd);
}

ComplexMatrix solve_chain_ode(const HeisenbergFamily& fam, Branch branch,
                              double t1, double t, const OdeConfig& cfg) {
  return integrate_product_ode(fam, branch, t1, t, cfg,
                               branch_initial(fam, branch, t1));
}

ComplexMatrix ordered_exponential(const HeisenbergFamily& fam, Branch branch,
                                  double t1, double t, const OdeConfig& cfg) {
  return integrate_product_ode(
      fam, branch, t1, t, cfg,
      ComplexMatrix::Identity(fam.dim(), fam.dim()));
}

std::vector<ComplexMatrix> dyson_terms(const HeisenbergFamily& fam,
                                       Branch branch, double t1, double t,
                                       const DysonTruncation& trunc) {
  require(trunc.order >= 0 && trunc.order <= 8,
          "DysonTruncation: order must be in [0, 8]");
  require(trunc.quadrature_points >= 2,
          "DysonTruncation: quadrature_points must be >= 2");
  require(t >= t1, "dyson_terms: t must be >= t1");
  const int q = trunc.quadrature_points;
  const double h = (t - t1) / q;
  const Eigen::Index d = fam.dim();
  OdeConfig dcfg;  // derivative sampling only
  std::vector<ComplexMatrix> deriv(static_cast<size_t>(q) + 1);
  for (int j = 0; j <= q; ++j)
    deriv[static_cast<size_t>(j)] =
        branch_derivative(fam, branch, t1 + j * h, dcfg);

  std::vector<ComplexMatrix> terms;
  // prev[j] = ordered integral of order m over the simplex below grid point j;
  // order 0 is the constant 1.
  std::vector<ComplexMatrix> prev(static_cast<size_t>(q) + 1,
                                  ComplexMatrix::Identity(d, d));
  for (int m = 1; m <= trunc.order; ++m) {
    std::vector<ComplexMatrix> cur(static_cast<size_t>(q) + 1);
    cur[0] = ComplexMatrix::Zero(d, d);
    ComplexMatrix f_prev = deriv[0] * prev[0];
    for (int j = 1; j <= q; ++j) {
      ComplexMatrix f_cur = deriv[static_cast<size_t>(j)] *
                            prev[static_cast<size_t>(j)];
      cur[static_cast<size_t>(j)] =
          cur[static_cast<size_t>(j - 1)] + 0.5 * h * (f_prev + f_cur);
      f_prev = std::move(f_cur);
    }
    terms.push_back(cur[static_cast<size_t>(q)]);
    prev = std::move(cur);
  }
  return terms;
}

ComplexMatrix dyson_series(const HeisenbergFamily& fam, Branch branch,
                           double t1, double t, const DysonTruncation& trunc) {
  ComplexMatrix sum = ComplexMatrix::Identity(fam.dim(), fam.dim());
  for (const auto& term : dyson_terms(fam, branch, t1, t, trunc)) sum += term;
  return sum * branch_initial(fam, branch, t1);
}

double residual_check(const HeisenbergFamily& fam,
                      const std::function<ComplexMatrix(double)>& candidate,
                      Branch branch, double t1, double t,
                      const OdeConfig& cfg) {
  require(static_cast<bool>(candidate), "residual_check: null candidate");
  require(t > t1, "residual_check: empty interval");
  require(cfg.step_count >= 2, "OdeConfig: step_count must be >= 2");
  const int n = cfg.step_count;
  const double h = (t - t1) / n;
  std::vector<ComplexMatrix> samples(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i)
    samples[static_cast<size_t>(i)] = candidate(t1 + i * (t - t1) / n);
  double worst = 0.0;
  for (int i = 1; i < n; ++i) {
    double ti = t1 + i * (t - t1) / n;
    ComplexMatrix da = (samples[static_cast<size_t>(i) + 1] -
                        samples[static_cast<size_t>(i) - 1]) /
                       (2.0 * h);
    ComplexMatrix f = branch_derivative(fam, branch, ti, cfg);
    worst = std::max(worst,
                     op_norm(da - f * samples[static_cast<size_t>(i)]));
  }
  return worst;
}

}  // namespace qzeno
