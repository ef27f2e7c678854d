#include <qzeno/families.hpp>

#include <cmath>
#include <limits>

namespace qzeno {

namespace {

// One classical RK4 step for X' = g(t) X.
ComplexMatrix rk4_step(const UnitaryFamily::MatrixFn& g, double t0,
                       const ComplexMatrix& x0, double h) {
  ComplexMatrix k1 = g(t0) * x0;
  ComplexMatrix gm = g(t0 + 0.5 * h);
  ComplexMatrix k2 = gm * (x0 + 0.5 * h * k1);
  ComplexMatrix k3 = gm * (x0 + 0.5 * h * k2);
  ComplexMatrix k4 = g(t0 + h) * (x0 + h * k3);
  return x0 + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace

struct UnitaryFamily::Checkpoints {
  double h = 0.0;
  std::vector<ComplexMatrix> u;  // u[m] = U(t_start + m h)
};

UnitaryFamily UnitaryFamily::from_callback(MatrixFn value, Eigen::Index dim,
                                           double t_start, double h_fd,
                                           const ToleranceConfig& tol) {
  require(static_cast<bool>(value), "UnitaryFamily: null callback");
  require(dim >= 1 && dim <= tol.max_dim, "UnitaryFamily: bad dimension");
  require(h_fd > 0.0, "UnitaryFamily: h_fd must be positive");
  UnitaryFamily fam;
  fam.dim_ = dim;
  fam.t_start_ = t_start;
  fam.h_fd_ = h_fd;
  fam.tol_ = tol;
  fam.value_ = std::move(value);
  ComplexMatrix u0 = fam.value_(t_start);
  require(op_norm(u0 - ComplexMatrix::Identity(dim, dim)) <= tol.tol_alg,
          "UnitaryFamily: U(t_start) must be the identity");
  return fam;
}

UnitaryFamily UnitaryFamily::from_constant_generator(
    const ComplexMatrix& g, double t_start, const ToleranceConfig& tol) {
  require_dim(g, tol, "UnitaryFamily generator");
  require(op_norm(g + g.adjoint()) <= tol.tol_alg,
          "UnitaryFamily: generator must be anti-hermitian");
  // g = -i K, K hermitian: U(t) = exp(g s) = Vec exp(-i eig s) Vec^dagger.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(Complex(0.0, 0.5) *
                                                  (g - g.adjoint().eval()));
  require(es.info() == Eigen::Success, "UnitaryFamily: eigensolver failed");
  Eigen::VectorXd eigs = es.eigenvalues();
  ComplexMatrix vecs = es.eigenvectors();
  UnitaryFamily fam;
  fam.dim_ = g.rows();
  fam.t_start_ = t_start;
  fam.tol_ = tol;
  ComplexMatrix gc = g;
  fam.generator_ = [gc](double) { return gc; };
  fam.value_ = [eigs, vecs, t_start](double t) {
    ComplexVector phases(eigs.size());
    for (Eigen::Index k = 0; k < eigs.size(); ++k)
      phases(k) = std::exp(Complex(0.0, -eigs(k) * (t - t_start)));
    return ComplexMatrix(vecs * phases.asDiagonal() * vecs.adjoint());
  };
  return fam;
}

UnitaryFamily UnitaryFamily::from_generator(MatrixFn g, Eigen::Index dim,
                                            double t_start,
                                            int substeps_per_unit,
                                            const ToleranceConfig& tol) {
  require(static_cast<bool>(g), "UnitaryFamily: null generator");
  require(dim >= 1 && dim <= tol.max_dim, "UnitaryFamily: bad dimension");
  require(substeps_per_unit >= 2, "UnitaryFamily: substeps_per_unit too small");
  ComplexMatrix g0 = g(t_start);
  require(g0.rows() == dim && g0.cols() == dim,
          "UnitaryFamily: generator dimension mismatch");
  require(op_norm(g0 + g0.adjoint()) <= tol.tol_alg,
          "UnitaryFamily: generator must be anti-hermitian");
  UnitaryFamily fam;
  fam.dim_ = dim;
  fam.t_start_ = t_start;
  fam.tol_ = tol;
  fam.generator_ = std::move(g);
  fam.chk_ = std::make_shared<Checkpoints>();
  fam.chk_->h = 1.0 / substeps_per_unit;
  fam.chk_->u.push_back(ComplexMatrix::Identity(dim, dim));
  return fam;
}

ComplexMatrix UnitaryFamily::value(double t) const {
  ComplexMatrix u;
  if (chk_) {
    double s = t - t_start_;
    require(s >= -1e-9, "UnitaryFamily: t below t_start for generator family");
    s = std::max(s, 0.0);
    const double h = chk_->h;
    auto m = static_cast<size_t>(std::floor(s / h + 1e-9));
    double rem = s - static_cast<double>(m) * h;
    if (rem >= h - 1e-12) {
      ++m;
      rem = 0.0;
    }
    while (chk_->u.size() <= m) {
      size_t k = chk_->u.size();
      double tk = t_start_ + static_cast<double>(k - 1) * h;
      chk_->u.push_back(rk4_step(generator_, tk, chk_->u[k - 1], h));
    }
    u = chk_->u[m];
    if (rem > 1e-14 * (1.0 + std::abs(t)))
      u = rk4_step(generator_, t_start_ + static_cast<double>(m) * h, u, rem);
  } else {
    u = value_(t);
    require(u.rows() == dim_ && u.cols() == dim_,
            "UnitaryFamily: callback dimension mismatch");
  }
  require(unitarity_defect(u) <= tol_.tol_alg,
          "UnitaryFamily: value is not unitary at t = " + std::to_string(t));
  return u;
}

ComplexMatrix UnitaryFamily::derivative(double t) const {
  if (generator_) return generator_(t) * value(t);
  return (value_(t + h_fd_) - value_(t - h_fd_)) / (2.0 * h_fd_);
}

ComplexMatrix UnitaryFamily::generator(double t) const {
  require(static_cast<bool>(generator_),
          "UnitaryFamily: no generator available");
  return generator_(t);
}

// ---------------------------------------------------------------------------

ProjectorFamily ProjectorFamily::steered(Projector e, UnitaryFamily u,
                                         double t_start, double t_end,
                                         const ToleranceConfig& tol) {
  require(e.dim() == u.dim(), "ProjectorFamily: dimension mismatch");
  require(t_end > t_start, "ProjectorFamily: empty domain");
  ProjectorFamily fam;
  fam.kind_ = Kind::steered;
  fam.dim_ = e.dim();
  fam.rank_ = e.rank();
  fam.t_start_ = t_start;
  fam.t_end_ = t_end;
  fam.tol_ = tol;
  fam.base_ = std::make_shared<Projector>(std::move(e));
  fam.steering_ = std::make_shared<UnitaryFamily>(std::move(u));
  return fam;
}

ProjectorFamily ProjectorFamily::diagonal_window(Eigen::Index dim,
                                                 ScalarFn lambda_l,
                                                 ScalarFn lambda_r,
                                                 double t_start, double t_end,
                                                 const ToleranceConfig& tol) {
  require(dim >= 1 && dim <= tol.max_dim, "ProjectorFamily: bad dimension");
  require(static_cast<bool>(lambda_l) && static_cast<bool>(lambda_r),
          "ProjectorFamily: null window bound");
  require(t_end > t_start, "ProjectorFamily: empty domain");
  // Cross-time assumption of the swept-window analysis: every left bound
  // stays below every right bound, and the integer window is never empty.
  double max_l = -std::numeric_limits<double>::infinity();
  double min_r = std::numeric_limits<double>::infinity();
  const int samples = 256;
  for (int i = 0; i <= samples; ++i) {
    double t = t_start + (t_end - t_start) * i / samples;
    double l = lambda_l(t), r = lambda_r(t);
    require(std::isfinite(l) && std::isfinite(r),
            "ProjectorFamily: non-finite window bound");
    require(std::ceil(l) <= std::floor(r) && std::floor(r) >= 0.0 &&
                std::ceil(l) <= static_cast<double>(dim - 1),
            "ProjectorFamily: empty window at t = " + std::to_string(t));
    max_l = std::max(max_l, l);
    min_r = std::min(min_r, r);
  }
  require(max_l < min_r,
          "ProjectorFamily: window bounds violate lambda_l(t) < lambda_r(t')");
  ProjectorFamily fam;
  fam.kind_ = Kind::diagonal_window;
  fam.dim_ = dim;
  fam.t_start_ = t_start;
  fam.t_end_ = t_end;
  fam.tol_ = tol;
  fam.lambda_l_ = std::move(lambda_l);
  fam.lambda_r_ = std::move(lambda_r);
  fam.rank_ = Projector(fam.value(t_start)).rank();
  return fam;
}

ProjectorFamily ProjectorFamily::spin_direction(ScalarFn theta,
                                                ScalarFn theta_dot,
                                                double t_start, double t_end,
                                                const ToleranceConfig& tol) {
  require(static_cast<bool>(theta) && static_cast<bool>(theta_dot),
          "ProjectorFamily: null theta callback");
  require(t_end > t_start, "ProjectorFamily: empty domain");
  ProjectorFamily fam;
  fam.kind_ = Kind::spin_direction;
  fam.dim_ = 2;
  fam.rank_ = 1;
  fam.t_start_ = t_start;
  fam.t_end_ = t_end;
  fam.tol_ = tol;
  fam.theta_ = std::move(theta);
  fam.theta_dot_ = std::move(theta_dot);
  return fam;
}

ProjectorFamily ProjectorFamily::tabulated(MatrixFn value, Eigen::Index dim,
                                           double t_start, double t_end,
                                           double h_fd,
                                           const ToleranceConfig& tol) {
  require(static_cast<bool>(value), "ProjectorFamily: null callback");
  require(dim >= 1 && dim <= tol.max_dim, "ProjectorFamily: bad dimension");
  require(t_end > t_start, "ProjectorFamily: empty domain");
  require(h_fd > 0.0, "ProjectorFamily: h_fd must be positive");
  ProjectorFamily fam;
  fam.kind_ = Kind::tabulated;
  fam.dim_ = dim;
  fam.t_start_ = t_start;
  fam.t_end_ = t_end;
  fam.h_fd_ = h_fd;
  fam.tol_ = tol;
  fam.value_ = std::move(value);
  fam.rank_ = Projector(fam.value_(t_start), tol).rank();
  return fam;
}

ProjectorFamily ProjectorFamily::constant(Projector e, double t_start,
                                          double t_end,
                                          const ToleranceConfig& tol) {
  ComplexMatrix m = e.matrix();
  return tabulated([m](double) { return m; }, e.dim(), t_start, t_end, 1e-5,
                   tol);
}

void ProjectorFamily::require_in_domain(double t) const {
  double slack = 1e-3 * (1.0 + t_end_ - t_start_);
  require(t >= t_start_ - slack && t <= t_end_ + slack,
          "ProjectorFamily: t = " + std::to_string(t) + " outside domain [" +
              std::to_string(t_start_) + ", " + std::to_string(t_end_) + "]");
}

ComplexMatrix ProjectorFamily::value(double t) const {
  require_in_domain(t);
  ComplexMatrix m;
  switch (kind_) {
    case Kind::steered: {
      ComplexMatrix u = steering_->value(t);
      m = u * base_->matrix() * u.adjoint();
      break;
    }
    case Kind::diagonal_window: {
      double lo = std::ceil(lambda_l_(t));
      double hi = std::floor(lambda_r_(t));
      m = ComplexMatrix::Zero(dim_, dim_);
      for (Eigen::Index j = 0; j < dim_; ++j)
        if (static_cast<double>(j) >= lo && static_cast<double>(j) <= hi)
          m(j, j) = 1.0;
      break;
    }
    case Kind::spin_direction: {
      double th = theta_(t);
      m = 0.5 * (ComplexMatrix::Identity(2, 2) + std::sin(th) * pauli_x() +
                 std::cos(th) * pauli_z());
      break;
    }
    case Kind::tabulated:
      m = value_(t);
      break;
  }
  Projector p(m, tol_);
  if (kind_ != Kind::diagonal_window)
    require(p.rank() == rank_,
            "ProjectorFamily: rank changed at t = " + std::to_string(t));
  return p.matrix();
}

ComplexMatrix ProjectorFamily::derivative(double t) const {
  require_in_domain(t);
  switch (kind_) {
    case Kind::steered: {
      ComplexMatrix es = value(t);
      if (steering_->has_generator()) {
        ComplexMatrix g = steering_->generator(t);
        return g * es - es * g;
      }
      ComplexMatrix u = steering_->value(t);
      ComplexMatrix du = steering_->derivative(t);
      return du * base_->matrix() * u.adjoint() +
             u * base_->matrix() * du.adjoint();
    }
    case Kind::diagonal_window:
      // Piecewise constant: zero almost everywhere.
      return ComplexMatrix::Zero(dim_, dim_);
    case Kind::spin_direction: {
      double th = theta_(t);
      return 0.5 * theta_dot_(t) *
             (std::cos(th) * pauli_x() - std::sin(th) * pauli_z());
    }
    case Kind::tabulated:
      return (value_(t + h_fd_) - value_(t - h_fd_)) / (2.0 * h_fd_);
  }
  return ComplexMatrix::Zero(dim_, dim_);
}

const Projector& ProjectorFamily::base() const {
  require(kind_ == Kind::steered, "ProjectorFamily: not a steered family");
  return *base_;
}

const UnitaryFamily& ProjectorFamily::steering() const {
  require(kind_ == Kind::steered, "ProjectorFamily: not a steered family");
  return *steering_;
}

// ---------------------------------------------------------------------------

HeisenbergFamily::HeisenbergFamily(ProjectorFamily family, HermitianOperator h,
                                   const ToleranceConfig& tol)
    : family_(std::move(family)), h_(std::move(h)), tol_(tol) {
  require(family_.dim() == h_.dim(), "HeisenbergFamily: dimension mismatch");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_.matrix());
  require(es.info() == Eigen::Success, "HeisenbergFamily: eigensolver failed");
  h_eigs_ = es.eigenvalues();
  h_vecs_ = es.eigenvectors();
}

ComplexMatrix HeisenbergFamily::conjugate_in(const ComplexMatrix& a,
                                             double t) const {
  ComplexVector phases(h_eigs_.size());
  for (Eigen::Index k = 0; k < h_eigs_.size(); ++k)
    phases(k) = std::exp(Complex(0.0, h_eigs_(k) * t));
  ComplexMatrix u = h_vecs_ * phases.asDiagonal() * h_vecs_.adjoint();
  return u * a * u.adjoint();
}

ComplexMatrix HeisenbergFamily::schroedinger_factor(double t) const {
  ComplexVector phases(h_eigs_.size());
  for (Eigen::Index k = 0; k < h_eigs_.size(); ++k)
    phases(k) = std::exp(Complex(0.0, -h_eigs_(k) * t));
  return h_vecs_ * phases.asDiagonal() * h_vecs_.adjoint();
}

ComplexMatrix HeisenbergFamily::value(double t) const {
  return conjugate_in(family_.value(t), t);
}

Projector HeisenbergFamily::value_projector(double t) const {
  return Projector(value(t), tol_);
}

ComplexMatrix HeisenbergFamily::derivative(double t, DerivativeMode mode,
                                           double h_fd) const {
  ComplexMatrix eh = value(t);
  ComplexMatrix comm =
      Complex(0.0, 1.0) * (h_.matrix() * eh - eh * h_.matrix());
  ComplexMatrix des;
  if (mode == DerivativeMode::analytic) {
    des = family_.derivative(t);
  } else {
    require(h_fd > 0.0, "HeisenbergFamily: h_fd must be positive");
    des = (family_.value(t + h_fd) - family_.value(t - h_fd)) / (2.0 * h_fd);
  }
  return comm + conjugate_in(des, t);
}

}  // namespace qzeno
