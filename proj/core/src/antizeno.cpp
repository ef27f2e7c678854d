#include <qzeno/antizeno.hpp>

#include <algorithm>
#include <cmath>

namespace qzeno {

namespace {

// RK4 for dX/dt = F(t) X over [t1, t] with the given step count.
ComplexMatrix rk4_linear(const std::function<ComplexMatrix(double)>& f,
                         double t1, double t, int steps, ComplexMatrix x) {
  require(t >= t1, "rk4_linear: t must be >= t1");
  require(steps >= 2, "rk4_linear: step count must be >= 2");
  if (t == t1) return x;
  const double h = (t - t1) / steps;
  for (int i = 0; i < steps; ++i) {
    double ti = t1 + i * h;
    ComplexMatrix f0 = f(ti);
    ComplexMatrix fm = f(ti + 0.5 * h);
    ComplexMatrix f1 = f(ti + h);
    ComplexMatrix k1 = f0 * x;
    ComplexMatrix k2 = fm * (x + 0.5 * h * k1);
    ComplexMatrix k3 = fm * (x + 0.5 * h * k2);
    ComplexMatrix k4 = f1 * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

// Composite Simpson over [0, t]; q is rounded up to an even interval count.
double simpson_scalar(const std::function<double(double)>& f, double t,
                      int q) {
  if (q % 2 != 0) ++q;
  const double h = t / q;
  double sum = f(0.0) + f(t);
  for (int j = 1; j < q; ++j) sum += (j % 2 ? 4.0 : 2.0) * f(j * h);
  return (h / 3.0) * sum;
}

ComplexMatrix simpson_matrix(const std::function<ComplexMatrix(double)>& f,
                             double t, int q) {
  if (q % 2 != 0) ++q;
  const double h = t / q;
  ComplexMatrix sum = f(0.0) + f(t);
  for (int j = 1; j < q; ++j) sum += (j % 2 ? 4.0 : 2.0) * f(j * h);
  return (h / 3.0) * sum;
}

}  // namespace

SteeredMeasurement::SteeredMeasurement(Projector e, UnitaryFamily u,
                                       HermitianOperator h,
                                       DensityOperator rho0,
                                       const ToleranceConfig& tol)
    : e_(std::move(e)),
      u_(std::move(u)),
      h_(std::move(h)),
      rho0_(std::move(rho0)),
      tol_(tol) {
  require(e_.dim() == u_.dim() && e_.dim() == h_.dim() &&
              e_.dim() == rho0_.dim(),
          "SteeredMeasurement: dimension mismatch");
  require(u_.t_start() == 0.0, "SteeredMeasurement: U must start at t = 0");
  require(op_norm(u_.value(0.0) -
                  ComplexMatrix::Identity(e_.dim(), e_.dim())) <= tol.tol_alg,
          "SteeredMeasurement: U(0) must be the identity");
  require(op_norm(e_.matrix() * rho0_.matrix() * e_.matrix() -
                  rho0_.matrix()) <= tol.tol_alg,
          "SteeredMeasurement: E rho0 E must equal rho0");
}

ProjectorFamily SteeredMeasurement::family(double t_end) const {
  return ProjectorFamily::steered(e_, u_, 0.0, t_end, tol_);
}

StateVector SteeredMeasurement::initial_state() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(rho0_.matrix());
  require(es.info() == Eigen::Success,
          "SteeredMeasurement: eigensolver failed");
  Eigen::Index top = rho0_.dim() - 1;  // eigenvalues sorted ascending
  require(es.eigenvalues()(top) >= 1.0 - 10.0 * tol_.tol_alg,
          "SteeredMeasurement: rho0 is not pure");
  return StateVector(es.eigenvectors().col(top), true, tol_);
}

VFamily::VFamily(const SteeredMeasurement& m)
    : dim_(m.dim()), u_(m.u()), h_(m.h().matrix()) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_);
  require(es.info() == Eigen::Success, "VFamily: eigensolver failed");
  h_eigs_ = es.eigenvalues();
  h_vecs_ = es.eigenvectors();
}

ComplexMatrix VFamily::value(double t) const {
  ComplexVector phases(h_eigs_.size());
  for (Eigen::Index k = 0; k < h_eigs_.size(); ++k)
    phases(k) = std::exp(Complex(0.0, h_eigs_(k) * t));
  return h_vecs_ * phases.asDiagonal() * h_vecs_.adjoint() * u_.value(t);
}

ComplexMatrix VFamily::vdag_dot_v(double t) const {
  ComplexMatrix u = u_.value(t);
  if (u_.has_generator()) {
    // Udot^dagger U - i U^dagger H U = -U^dagger (g + iH) U.
    return -(u.adjoint() * (u_.generator(t) + Complex(0.0, 1.0) * h_) * u);
  }
  ComplexMatrix du = u_.derivative(t);
  return du.adjoint() * u - Complex(0.0, 1.0) * (u.adjoint() * h_ * u);
}

ComplexMatrix zeno_closed_form(const StateVector& psi0,
                               const HermitianOperator& h, double t1, double t,
                               const ToleranceConfig& tol) {
  require(psi0.dim() == h.dim(), "zeno_closed_form: dimension mismatch");
  require(psi0.normalized(), "zeno_closed_form: psi0 must be normalised");
  double hbar = (psi0.vector().adjoint() * h.matrix() * psi0.vector())(0, 0)
                    .real();
  ComplexMatrix shifted =
      h.matrix() - hbar * ComplexMatrix::Identity(h.dim(), h.dim());
  ComplexMatrix left = mat_exp(Complex(0.0, t) * shifted, tol);
  ComplexMatrix right = mat_exp(Complex(0.0, -t1) * shifted, tol);
  return left * (psi0.vector() * psi0.vector().adjoint()) * right;
}

double zeno_probability(const StateVector& psi0, const HermitianOperator& h,
                        double t, const ToleranceConfig& tol) {
  ComplexMatrix a = zeno_closed_form(psi0, h, 0.0, t, tol);
  ComplexMatrix k = mat_exp(Complex(0.0, -t) * h.matrix(), tol) * a;
  return (k * psi0.vector()).squaredNorm();
}

ComplexMatrix steering_generator(const SteeredMeasurement& m, double t) {
  VFamily v(m);
  return m.e().matrix() * v.vdag_dot_v(t) * m.e().matrix();
}

SteeringPropagator solve_steering(const SteeredMeasurement& m, double t1,
                                  double t, const OdeConfig& cfg) {
  require(t >= t1, "solve_steering: t must be >= t1");
  VFamily v(m);
  const ComplexMatrix e = m.e().matrix();
  auto g = [&](double tau) -> ComplexMatrix {
    return e * v.vdag_dot_v(tau) * e;
  };
  SteeringPropagator prop;
  prop.t1 = t1;
  prop.t = t;
  prop.w = rk4_linear(g, t1, t, cfg.step_count,
                      ComplexMatrix::Identity(m.dim(), m.dim()));
  require(unitarity_defect(prop.w) <= m.tol().tol_conv,
          "solve_steering: W lost unitarity");
  prop.a_h = v.value(t) * prop.w * e * v.value(t1).adjoint();
  return prop;
}

double antizeno_probability(const SteeredMeasurement& m, double t,
                            const OdeConfig& cfg) {
  SteeringPropagator prop = solve_steering(m, 0.0, t, cfg);
  double p = (prop.a_h * m.rho0().matrix() * prop.a_h.adjoint())
                 .trace()
                 .real();
  require(p >= -10.0 * m.tol().tol_alg && p <= 1.0 + m.tol().tol_conv,
          "antizeno_probability: probability " + std::to_string(p) +
              " outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

StateVector evolved_state(const SteeredMeasurement& m, double t,
                          const OdeConfig& cfg) {
  StateVector psi0 = m.initial_state();
  SteeringPropagator prop = solve_steering(m, 0.0, t, cfg);
  ComplexMatrix k =
      mat_exp(Complex(0.0, -t) * m.h().matrix(), m.tol()) * prop.a_h;
  ComplexVector v = k * psi0.vector();
  require(std::abs(v.norm() - 1.0) <= m.tol().tol_conv,
          "evolved_state: norm defect exceeds tol_conv");
  return StateVector(v / v.norm(), true, m.tol());
}

DensityOperator evolved_density(const SteeredMeasurement& m, double t,
                                const OdeConfig& cfg) {
  SteeringPropagator prop = solve_steering(m, 0.0, t, cfg);
  ComplexMatrix k =
      mat_exp(Complex(0.0, -t) * m.h().matrix(), m.tol()) * prop.a_h;
  ComplexMatrix rho = k * m.rho0().matrix() * k.adjoint();
  double tr = rho.trace().real();
  require(std::abs(tr - 1.0) <= m.tol().tol_conv,
          "evolved_density: trace defect exceeds tol_conv");
  return DensityOperator(rho / tr, m.tol());
}

ComplexMatrix effective_hamiltonian(const SteeredMeasurement& m, double t) {
  const ComplexMatrix& e = m.e().matrix();
  ComplexMatrix u = m.u().value(t);
  ComplexMatrix es = u * e * u.adjoint();
  ComplexMatrix des;
  if (m.u().has_generator()) {
    ComplexMatrix g = m.u().generator(t);
    des = g * es - es * g;
  } else {
    ComplexMatrix du = m.u().derivative(t);
    des = du * e * u.adjoint() + u * e * du.adjoint();
  }
  return es * m.h().matrix() * es +
         Complex(0.0, 1.0) * (des * es - es * des);
}

double rank1_phase_integrand(const SteeredMeasurement& m, double t) {
  require(m.e().rank() == 1, "rank1_phase: rank(E) must be 1");
  StateVector psi0 = m.initial_state();
  ComplexVector tilde = m.u().value(t) * psi0.vector();
  ComplexVector dtilde = m.u().derivative(t) * psi0.vector();
  Complex val = Complex(0.0, 1.0) * tilde.dot(dtilde) -
                tilde.dot(m.h().matrix() * tilde);
  require(std::abs(val.imag()) <= 100.0 * m.tol().tol_alg,
          "rank1_phase: integrand is not real");
  return val.real();
}

double rank1_phase(const SteeredMeasurement& m, double t,
                   int quadrature_points) {
  require(quadrature_points >= 2, "rank1_phase: too few quadrature points");
  require(m.e().rank() == 1, "rank1_phase: rank(E) must be 1");
  if (t == 0.0) return 0.0;
  StateVector psi0 = m.initial_state();
  auto integrand = [&](double tau) {
    ComplexVector tilde = m.u().value(tau) * psi0.vector();
    ComplexVector dtilde = m.u().derivative(tau) * psi0.vector();
    Complex val = Complex(0.0, 1.0) * tilde.dot(dtilde) -
                  tilde.dot(m.h().matrix() * tilde);
    require(std::abs(val.imag()) <= 100.0 * m.tol().tol_alg,
            "rank1_phase: integrand is not real");
    return val.real();
  };
  return simpson_scalar(integrand, t, quadrature_points);
}

ComplexMatrix rankn_f_matrix(const SteeredMeasurement& m,
                             const ComplexMatrix& basis, double t) {
  Eigen::Index n = basis.cols();
  require(basis.rows() == m.dim() && n == m.e().rank(),
          "rankn_f_matrix: basis must have rank(E) columns");
  require(op_norm(ComplexMatrix(basis.adjoint() * basis) -
                  ComplexMatrix::Identity(n, n)) <= m.tol().tol_alg,
          "rankn_f_matrix: basis is not orthonormal");
  require(op_norm(m.e().matrix() * basis - basis) <= m.tol().tol_alg,
          "rankn_f_matrix: basis does not span range(E)");
  VFamily v(m);
  return basis.adjoint() * v.vdag_dot_v(t) * basis;
}

namespace {

// Shared setup for the rank-n propagators: validates the basis once and
// returns the expansion coefficients of psi(0).
ComplexVector rankn_coefficients(const SteeredMeasurement& m,
                                 const ComplexMatrix& basis,
                                 const StateVector& psi0) {
  rankn_f_matrix(m, basis, 0.0);  // runs the basis validation
  ComplexVector c = basis.adjoint() * psi0.vector();
  require((basis * c - psi0.vector()).norm() <= 100.0 * m.tol().tol_alg,
          "rankn_state: psi(0) outside range(E)");
  return c;
}

}  // namespace

StateVector rankn_state(const SteeredMeasurement& m, const ComplexMatrix& basis,
                        double t, const OdeConfig& cfg) {
  StateVector psi0 = m.initial_state();
  ComplexVector c = rankn_coefficients(m, basis, psi0);
  VFamily vfam(m);
  auto f = [&](double tau) -> ComplexMatrix {
    return basis.adjoint() * vfam.vdag_dot_v(tau) * basis;
  };
  ComplexMatrix y = rk4_linear(
      f, 0.0, t, cfg.step_count,
      ComplexMatrix::Identity(basis.cols(), basis.cols()));
  ComplexVector v = m.u().value(t) * (basis * (y * c));
  require(std::abs(v.norm() - 1.0) <= m.tol().tol_conv,
          "rankn_state: norm defect exceeds tol_conv");
  return StateVector(v / v.norm(), true, m.tol());
}

StateVector rankn_state_unordered(const SteeredMeasurement& m,
                                  const ComplexMatrix& basis, double t,
                                  int quadrature_points) {
  StateVector psi0 = m.initial_state();
  ComplexVector c = rankn_coefficients(m, basis, psi0);
  VFamily vfam(m);
  ComplexMatrix f_int = simpson_matrix(
      [&](double tau) -> ComplexMatrix {
        return basis.adjoint() * vfam.vdag_dot_v(tau) * basis;
      },
      t, quadrature_points);
  ComplexMatrix y = mat_exp(f_int, m.tol());
  ComplexVector v = m.u().value(t) * (basis * (y * c));
  require(std::abs(v.norm() - 1.0) <= m.tol().tol_conv,
          "rankn_state_unordered: norm defect exceeds tol_conv");
  return StateVector(v / v.norm(), true, m.tol());
}

}  // namespace qzeno
