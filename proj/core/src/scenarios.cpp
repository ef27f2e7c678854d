#include <qzeno/scenarios.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace qzeno {

namespace {

std::vector<Projector> basis_projectors(const ComplexMatrix& basis,
                                        const ToleranceConfig& tol) {
  std::vector<Projector> family;
  family.reserve(static_cast<std::size_t>(basis.cols()));
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    const ComplexVector b = basis.col(j);
    family.emplace_back(b * b.adjoint(), tol);
  }
  return family;
}

// One complete von Neumann measurement adapted to |target>: Lueders mix in a
// freshly drawn orthonormal completion of target.
DensityOperator steer_step(const DensityOperator& rho,
                           const ComplexVector& target, std::mt19937_64& rng,
                           const ToleranceConfig& tol) {
  ComplexMatrix seed_col(target.size(), 1);
  seed_col.col(0) = target;
  const ComplexMatrix basis = orthonormal_completion(seed_col, rng);
  return lueders_mix(rho, basis_projectors(basis, tol), tol);
}

double state_fidelity(const ComplexVector& psi, const DensityOperator& rho) {
  return psi.dot(rho.matrix() * psi).real();
}

}  // namespace

// ---------------------------------------------------------------------------
// von Neumann steering
// ---------------------------------------------------------------------------

SteeringPlan::SteeringPlan(StateVector phi_in, StateVector psi_in, int k_in,
                           std::uint64_t seed_in, const ToleranceConfig& tol_in)
    : phi(std::move(phi_in)),
      psi(std::move(psi_in)),
      k(k_in),
      seed(seed_in),
      tol(tol_in) {
  require(phi.dim() == psi.dim(), "steering endpoints must share a dimension");
  require(phi.dim() >= 2, "steering needs dim >= 2");
  require(k >= 1, "steering needs at least one step");
  require(std::abs(phi.vector().dot(psi.vector())) <= tol.tol_alg,
          "steering endpoints must be orthogonal");
}

StateVector SteeringPlan::interpolant(int nu) const {
  require(nu >= 0 && nu <= k, "interpolation index out of range");
  const double angle = std::numbers::pi_v<double> * nu / (2.0 * k);
  ComplexVector v =
      std::cos(angle) * phi.vector() + std::sin(angle) * psi.vector();
  return StateVector(std::move(v), true, tol);
}

VnSteeringResult vn_steering_run(const SteeringPlan& plan) {
  std::mt19937_64 rng(plan.seed);
  DensityOperator rho = plan.phi.to_density(plan.tol);
  std::vector<double> entropies;
  entropies.reserve(static_cast<std::size_t>(plan.k) + 1);
  entropies.push_back(von_neumann_entropy(rho, plan.tol));
  for (int nu = 1; nu <= plan.k; ++nu) {
    rho = steer_step(rho, plan.interpolant(nu).vector(), rng, plan.tol);
    entropies.push_back(von_neumann_entropy(rho, plan.tol));
  }
  const double fid = state_fidelity(plan.psi.vector(), rho);
  return VnSteeringResult{std::move(rho), fid, std::move(entropies)};
}

double vn_bound(int k) {
  require(k >= 1, "steering bound needs k >= 1");
  const double c = std::cos(std::numbers::pi_v<double> / (2.0 * k));
  return std::pow(c, 2.0 * k);
}

ComplexMatrix vn_target_basis(const SteeringPlan& plan) {
  const Eigen::Index dim = plan.psi.dim();
  ComplexMatrix basis(dim, dim);
  basis.col(0) = plan.psi.vector();
  Eigen::Index filled = 1;
  for (Eigen::Index j = 0; j < dim && filled < dim; ++j) {
    ComplexVector cand = ComplexVector::Zero(dim);
    cand(j) = Complex(1.0, 0.0);
    for (int sweep = 0; sweep < 2; ++sweep)
      for (Eigen::Index c = 0; c < filled; ++c)
        cand -= basis.col(c).dot(cand) * basis.col(c);
    const double norm = cand.norm();
    if (norm > 1e-8) basis.col(filled++) = cand / norm;
  }
  require(filled == dim, "target-basis completion failed");
  return basis;
}

ComplexMatrix vn_in_target_basis(const SteeringPlan& plan) {
  const ComplexMatrix basis = vn_target_basis(plan);
  const VnSteeringResult run = vn_steering_run(plan);
  return basis.adjoint() * run.final.matrix() * basis;
}

double vn_offdiagonal_decay(const SteeringPlan& plan) {
  const ComplexMatrix rho_b = vn_in_target_basis(plan);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < rho_b.rows(); ++i)
    for (Eigen::Index j = 0; j < rho_b.cols(); ++j)
      if (i != j) worst = std::max(worst, std::abs(rho_b(i, j)));
  return worst;
}

double vn_two_leg_route(const StateVector& phi, const StateVector& psi, int k,
                        std::uint64_t seed, const ToleranceConfig& tol) {
  const Eigen::Index dim = phi.dim();
  require(psi.dim() == dim, "steering endpoints must share a dimension");
  require(dim >= 3, "two-leg route needs dim >= 3");
  require(k >= 1, "steering needs at least one step");

  std::mt19937_64 rng(seed);

  // Orthonormal seed columns spanning {phi, psi}; the first completion
  // column is then orthogonal to both and serves as the way-point chi.
  ComplexVector psi_perp =
      psi.vector() - phi.vector().dot(psi.vector()) * phi.vector();
  const double perp_norm = psi_perp.norm();
  ComplexMatrix span(dim, perp_norm > 1e-8 ? 2 : 1);
  span.col(0) = phi.vector();
  if (perp_norm > 1e-8) span.col(1) = psi_perp / perp_norm;
  const ComplexMatrix full = orthonormal_completion(span, rng);
  const ComplexVector chi = full.col(span.cols());

  const double pi = std::numbers::pi_v<double>;
  DensityOperator rho = phi.to_density(tol);
  for (int nu = 1; nu <= k; ++nu) {
    const double a = pi * nu / (2.0 * k);
    const ComplexVector target =
        std::cos(a) * phi.vector() + std::sin(a) * chi;
    rho = steer_step(rho, target, rng, tol);
  }
  for (int nu = 1; nu <= k; ++nu) {
    const double a = pi * nu / (2.0 * k);
    const ComplexVector target = std::cos(a) * chi + std::sin(a) * psi.vector();
    rho = steer_step(rho, target / target.norm(), rng, tol);
  }
  return state_fidelity(psi.vector(), rho);
}

// ---------------------------------------------------------------------------
// Spin-1/2 worked example
// ---------------------------------------------------------------------------

HermitianOperator spin_hamiltonian(double alpha, const ToleranceConfig& tol) {
  require(std::isfinite(alpha), "alpha must be finite");
  return HermitianOperator(-0.5 * alpha * pauli_y(), tol);
}

ProjectorFamily spin_family(const SpinFamilyParams& params, double t_start,
                            double t_end, const ToleranceConfig& tol) {
  require(static_cast<bool>(params.theta) &&
              static_cast<bool>(params.theta_dot),
          "spin family needs theta and theta_dot");
  require(std::abs(params.theta(0.0)) <= tol.tol_alg,
          "spin family expects theta(0) = 0");
  return ProjectorFamily::spin_direction(params.theta, params.theta_dot,
                                         t_start, t_end, tol);
}

double spin_epsilon(const SpinFamilyParams& params, double t) {
  return params.theta(t) + params.alpha * t;
}

ComplexMatrix spin_heisenberg_closed_form(double eps) {
  return 0.5 * (ComplexMatrix::Identity(2, 2) + std::sin(eps) * pauli_x() +
                std::cos(eps) * pauli_z());
}

ComplexMatrix spin_series_closed_form(double eps, int order) {
  const ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  const Complex i(0.0, 1.0);
  const double s = std::sin(eps);
  const double c = std::cos(eps);
  switch (order) {
    case 1:
      return -0.5 * ((c - 1.0) * pauli_z() + s * pauli_x());
    case 2:
      return 0.25 * ((1.0 - c) * id - i * (eps - s) * pauli_y());
    case 3:
      return -0.125 * ((eps * s + 2.0 * c - 2.0) * pauli_z() +
                       (2.0 * s - eps * (c + 1.0)) * pauli_x());
    case 4:
      return (-1.0 / 16.0) *
             ((0.5 * eps * eps + eps * s + 3.0 * (c - 1.0)) * id +
              i * (2.0 * eps + eps * c - 3.0 * s) * pauli_y());
    default:
      throw ValidationError("closed forms cover orders 1 through 4");
  }
}

SpinSeriesReport spin_series_verify(const SpinFamilyParams& params,
                                    const std::vector<double>& eps_values,
                                    int max_order, int quadrature_points,
                                    int reference_steps,
                                    const ToleranceConfig& tol) {
  require(max_order >= 1 && max_order <= 4,
          "series comparison covers orders 1 through 4");
  require(quadrature_points >= 2, "need at least two quadrature points");
  require(reference_steps >= 16, "reference integration too coarse");
  require(!eps_values.empty(), "need at least one eps value");
  for (double eps : eps_values)
    require(std::isfinite(eps) && eps > 0.0, "eps values must be positive");
  require(static_cast<bool>(params.theta) &&
              static_cast<bool>(params.theta_dot),
          "spin family needs theta and theta_dot");
  require(std::abs(params.theta(0.0)) <= tol.tol_alg,
          "spin series expects theta(0) = 0");

  const double eps_max = *std::max_element(eps_values.begin(),
                                           eps_values.end());
  double t_hi = 1.0;
  for (int guard = 0; spin_epsilon(params, t_hi) < eps_max; ++guard) {
    require(guard < 60, "eps never reaches the requested value");
    t_hi *= 2.0;
  }
  for (int s = 0; s <= 512; ++s) {
    const double t = t_hi * s / 512.0;
    require(params.theta_dot(t) + params.alpha > 0.0,
            "eps(t) must be strictly increasing over the scan range");
  }

  const HermitianOperator h = spin_hamiltonian(params.alpha, tol);
  SpinSeriesReport report;
  report.samples.reserve(eps_values.size());
  for (double eps : eps_values) {
    double lo = 0.0;
    double hi = t_hi;
    while (hi - lo > 1e-15 * t_hi) {
      const double mid = 0.5 * (lo + hi);
      (spin_epsilon(params, mid) < eps ? lo : hi) = mid;
    }
    const double t_eps = 0.5 * (lo + hi);

    const ProjectorFamily family = spin_family(params, 0.0, t_eps, tol);
    const HeisenbergFamily heis(family, h, tol);
    DysonTruncation trunc;
    trunc.order = max_order;
    trunc.quadrature_points = quadrature_points;
    const std::vector<ComplexMatrix> terms =
        dyson_terms(heis, Branch::complement, 0.0, t_eps, trunc);

    SpinSeriesSample sample;
    sample.eps = eps;
    sample.t = t_eps;
    ComplexMatrix partial = ComplexMatrix::Identity(2, 2);
    for (int m = 1; m <= max_order; ++m) {
      const ComplexMatrix& term = terms[static_cast<std::size_t>(m - 1)];
      partial += term;
      sample.order_errors.push_back(
          op_norm(term - spin_series_closed_form(eps, m)));
    }
    OdeConfig ref_cfg;
    ref_cfg.step_count = reference_steps;
    const ComplexMatrix x_ref =
        ordered_exponential(heis, Branch::complement, 0.0, t_eps, ref_cfg);
    sample.remainder = op_norm(x_ref - partial);
    report.samples.push_back(std::move(sample));
  }

  report.remainder_slope = std::numeric_limits<double>::quiet_NaN();
  if (report.samples.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    bool usable = true;
    for (const SpinSeriesSample& s : report.samples)
      usable = usable && s.remainder > 0.0;
    if (usable) {
      const double n = static_cast<double>(report.samples.size());
      for (const SpinSeriesSample& s : report.samples) {
        const double x = std::log(s.eps);
        const double y = std::log(s.remainder);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
      }
      report.remainder_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Swept spectral window
// ---------------------------------------------------------------------------

ProjectorFamily window_family(const WindowFamilyParams& params, double t_start,
                              double t_end, const ToleranceConfig& tol) {
  require(static_cast<bool>(params.lambda_l) &&
              static_cast<bool>(params.lambda_r),
          "window family needs both edge functions");
  return ProjectorFamily::diagonal_window(params.dim, params.lambda_l,
                                          params.lambda_r, t_start, t_end,
                                          tol);
}

HermitianOperator window_hamiltonian(const WindowFamilyParams& params,
                                     const ToleranceConfig& tol) {
  require(params.dim >= 1, "window dimension must be positive");
  Eigen::VectorXd diag = params.h_diag;
  if (diag.size() == 0)
    diag = Eigen::VectorXd::LinSpaced(params.dim, 0.0,
                                      static_cast<double>(params.dim - 1));
  require(diag.size() == params.dim,
          "window H diagonal must match the dimension");
  for (Eigen::Index j = 0; j < diag.size(); ++j)
    require(std::isfinite(diag(j)), "window H diagonal must be finite");
  ComplexMatrix m = ComplexMatrix::Zero(params.dim, params.dim);
  for (Eigen::Index j = 0; j < params.dim; ++j) m(j, j) = diag(j);
  return HermitianOperator(std::move(m), tol);
}

Projector swept_window_limit(const WindowFamilyParams& params,
                             const MeasurementSchedule& sched,
                             const ToleranceConfig& tol) {
  require(static_cast<bool>(params.lambda_l) &&
              static_cast<bool>(params.lambda_r),
          "window family needs both edge functions");
  double min_l = std::numeric_limits<double>::infinity();
  double max_l = -std::numeric_limits<double>::infinity();
  double min_r = std::numeric_limits<double>::infinity();
  double max_r = -std::numeric_limits<double>::infinity();
  for (double t : sched.grid()) {
    const double l = params.lambda_l(t);
    const double r = params.lambda_r(t);
    require(std::isfinite(l) && std::isfinite(r),
            "window edges must be finite on the schedule grid");
    min_l = std::min(min_l, l);
    max_l = std::max(max_l, l);
    min_r = std::min(min_r, r);
    max_r = std::max(max_r, r);
  }
  require(max_l < min_r,
          "window edges must share a common band across the schedule");
  ComplexMatrix m = ComplexMatrix::Zero(params.dim, params.dim);
  for (Eigen::Index j = 0; j < params.dim; ++j) {
    const double x = static_cast<double>(j);
    if (x < min_l || x > max_r) m(j, j) = 1.0;
  }
  return Projector(std::move(m), tol);
}

// ---------------------------------------------------------------------------
// Seeded instances
// ---------------------------------------------------------------------------

SteeredMeasurement seeded_steered_measurement(Eigen::Index dim,
                                              Eigen::Index rank,
                                              std::uint64_t seed,
                                              const ToleranceConfig& tol) {
  require(dim >= 2, "steered instance needs dim >= 2");
  require(rank >= 1 && rank < dim, "rank must satisfy 1 <= rank < dim");
  std::mt19937_64 rng(seed);
  const Projector e = random_projector(dim, rank, rng, tol);
  const HermitianOperator h = random_hermitian_unit(dim, rng, tol);
  const ComplexMatrix basis = range_basis(e, tol);
  const StateVector coeffs = random_state(rank, rng, tol);
  const ComplexVector psi0 = basis * coeffs.vector();
  DensityOperator rho0(psi0 * psi0.adjoint(), tol);

  const ComplexMatrix g0 =
      Complex(0.0, 1.0) * random_hermitian_unit(dim, rng, tol).matrix();
  const ComplexMatrix g1 =
      Complex(0.0, 1.0) * random_hermitian_unit(dim, rng, tol).matrix();
  auto generator = [g0, g1](double t) -> ComplexMatrix {
    return std::cos(0.9 * t) * g0 + std::sin(1.7 * t) * g1;
  };
  UnitaryFamily u =
      UnitaryFamily::from_generator(std::move(generator), dim, 0.0, 1024, tol);
  return SteeredMeasurement(e, std::move(u), h, std::move(rho0), tol);
}

SteeredMeasurement qubit_rotation_measurement(double omega,
                                              const ToleranceConfig& tol) {
  require(std::isfinite(omega) && omega != 0.0, "omega must be nonzero");
  Projector e(0.5 * (ComplexMatrix::Identity(2, 2) + pauli_z()), tol);
  UnitaryFamily u = UnitaryFamily::from_constant_generator(
      Complex(0.0, -1.0) * omega * pauli_y(), 0.0, tol);
  HermitianOperator h(ComplexMatrix::Zero(2, 2), tol);
  ComplexVector psi0 = ComplexVector::Zero(2);
  psi0(0) = 1.0;
  DensityOperator rho0(psi0 * psi0.adjoint(), tol);
  return SteeredMeasurement(std::move(e), std::move(u), std::move(h),
                            std::move(rho0), tol);
}

SteeredMeasurement zeno_static_measurement(Eigen::Index dim,
                                           double hamiltonian_scale,
                                           std::uint64_t seed,
                                           const ToleranceConfig& tol) {
  require(dim >= 2, "zeno instance needs dim >= 2");
  require(std::isfinite(hamiltonian_scale) && hamiltonian_scale > 0.0,
          "hamiltonian scale must be positive");
  std::mt19937_64 rng(seed);
  const StateVector psi0 = random_state(dim, rng, tol);
  Projector e(psi0.vector() * psi0.vector().adjoint(), tol);
  HermitianOperator h(
      hamiltonian_scale * random_hermitian_unit(dim, rng, tol).matrix(), tol);
  UnitaryFamily u = UnitaryFamily::from_constant_generator(
      ComplexMatrix::Zero(dim, dim), 0.0, tol);
  return SteeredMeasurement(std::move(e), std::move(u), std::move(h),
                            psi0.to_density(tol), tol);
}

}  // namespace qzeno
