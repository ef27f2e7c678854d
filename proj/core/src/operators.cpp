#include <qzeno/operators.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>

namespace qzeno {

namespace {

// Unitary diagonalisation of a hermitian matrix, shared by the spectral
// routines below.
Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig_h(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  if (es.info() != Eigen::Success)
    throw ValidationError("hermitian eigendecomposition failed");
  return es;
}

ComplexMatrix phase_exp(const HermitianOperator& h, double t) {
  // exp(-i H t) through the spectral decomposition of H.
  auto es = eig_h(h.matrix());
  ComplexVector phases(h.dim());
  for (Eigen::Index k = 0; k < h.dim(); ++k)
    phases(k) = std::exp(Complex(0.0, -es.eigenvalues()(k) * t));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

ComplexMatrix randn_matrix(Eigen::Index rows, Eigen::Index cols,
                           std::mt19937_64& rng) {
  std::normal_distribution<double> unit_normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      m(i, j) = Complex(unit_normal(rng), unit_normal(rng));
  return m;
}

}  // namespace

HermitianOperator::HermitianOperator(ComplexMatrix m,
                                     const ToleranceConfig& tol)
    : mat_(std::move(m)) {
  require_dim(mat_, tol, "HermitianOperator");
  require(mat_.allFinite(), "HermitianOperator: non-finite entries");
  require(hermiticity_defect(mat_) <= tol.tol_alg,
          "HermitianOperator: matrix is not hermitian");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m, const ToleranceConfig& tol)
    : mat_(std::move(m)) {
  require_dim(mat_, tol, "UnitaryOperator");
  require(mat_.allFinite(), "UnitaryOperator: non-finite entries");
  require(unitarity_defect(mat_) <= tol.tol_alg,
          "UnitaryOperator: matrix is not unitary");
}

Projector::Projector(ComplexMatrix m, const ToleranceConfig& tol)
    : mat_(std::move(m)) {
  require_dim(mat_, tol, "Projector");
  require(mat_.allFinite(), "Projector: non-finite entries");
  require(hermiticity_defect(mat_) <= tol.tol_alg,
          "Projector: matrix is not hermitian");
  require(idempotence_defect(mat_) <= tol.tol_alg,
          "Projector: matrix is not idempotent");
  mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
  rank_ = static_cast<Eigen::Index>(std::llround(mat_.trace().real()));
}

Projector Projector::complement() const {
  return Projector(ComplexMatrix::Identity(dim(), dim()) - mat_);
}

DensityOperator::DensityOperator(ComplexMatrix m, const ToleranceConfig& tol)
    : mat_(std::move(m)) {
  require_dim(mat_, tol, "DensityOperator");
  require(mat_.allFinite(), "DensityOperator: non-finite entries");
  require(hermiticity_defect(mat_) <= tol.tol_alg,
          "DensityOperator: matrix is not hermitian");
  require(std::abs(mat_.trace().real() - 1.0) <= tol.tol_alg &&
              std::abs(mat_.trace().imag()) <= tol.tol_alg,
          "DensityOperator: trace must be 1");
  auto es = eig_h(0.5 * (mat_ + mat_.adjoint().eval()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    require(ev(k) >= -tol.tol_alg,
            "DensityOperator: negative eigenvalue " + std::to_string(ev(k)));
    ev(k) = std::max(ev(k), 0.0);
  }
  ev /= ev.sum();
  mat_ = es.eigenvectors() * ev.cast<Complex>().asDiagonal() *
         es.eigenvectors().adjoint();
}

StateVector::StateVector(ComplexVector v, bool normalized,
                         const ToleranceConfig& tol)
    : vec_(std::move(v)), normalized_(normalized) {
  require(vec_.size() > 0 && vec_.size() <= tol.max_dim,
          "StateVector: bad dimension");
  require(vec_.allFinite(), "StateVector: non-finite entries");
  if (normalized_)
    require(std::abs(vec_.norm() - 1.0) <= tol.tol_alg,
            "StateVector: vector is not normalised");
}

DensityOperator StateVector::to_density(const ToleranceConfig& tol) const {
  require(normalized_, "StateVector::to_density: state must be normalised");
  return DensityOperator(vec_ * vec_.adjoint(), tol);
}

ComplexMatrix mat_exp(const ComplexMatrix& m, const ToleranceConfig& tol) {
  require_square(m, "mat_exp");
  require(m.allFinite(), "mat_exp: non-finite entries");
  if (hermiticity_defect(m) <= tol.tol_alg) {
    auto es = eig_h(0.5 * (m + m.adjoint().eval()));
    return es.eigenvectors() *
           es.eigenvalues().array().exp().matrix().cast<Complex>().asDiagonal() *
           es.eigenvectors().adjoint();
  }
  if (op_norm(m + m.adjoint()) <= tol.tol_alg) {
    // m = -i K with K hermitian, so exp(m) = exp(-i K).
    ComplexMatrix k = Complex(0.0, 0.5) * (m - m.adjoint().eval());
    auto es = eig_h(k);
    ComplexVector phases(m.rows());
    for (Eigen::Index j = 0; j < m.rows(); ++j)
      phases(j) = std::exp(Complex(0.0, -es.eigenvalues()(j)));
    return es.eigenvectors() * phases.asDiagonal() *
           es.eigenvectors().adjoint();
  }
  return m.exp();
}

StateVector evolve_state(const StateVector& psi, const HermitianOperator& h,
                         double t, const ToleranceConfig& tol) {
  require(psi.dim() == h.dim(), "evolve_state: dimension mismatch");
  return StateVector(phase_exp(h, t) * psi.vector(), psi.normalized(), tol);
}

DensityOperator evolve_density(const DensityOperator& rho,
                               const HermitianOperator& h, double t,
                               const ToleranceConfig& tol) {
  require(rho.dim() == h.dim(), "evolve_density: dimension mismatch");
  ComplexMatrix u = phase_exp(h, t);
  return DensityOperator(u * rho.matrix() * u.adjoint(), tol);
}

double measure_prob(const DensityOperator& rho, const Projector& e,
                    const ToleranceConfig& tol) {
  require(e.dim() == rho.dim(), "measure_prob: dimension mismatch");
  double p = (e.matrix() * rho.matrix()).trace().real();
  require(p >= -tol.tol_alg && p <= 1.0 + tol.tol_alg,
          "measure_prob: probability " + std::to_string(p) +
              " outside [0, 1]");
  return std::clamp(p, 0.0, 1.0);
}

DensityOperator collapse(const DensityOperator& rho, const Projector& e,
                         const ToleranceConfig& tol) {
  double p = measure_prob(rho, e, tol);
  if (p <= tol.prob_floor)
    throw NullOutcome("collapse: outcome probability " + std::to_string(p) +
                      " at or below prob_floor");
  return DensityOperator(e.matrix() * rho.matrix() * e.matrix() / p, tol);
}

DensityOperator lueders_mix(const DensityOperator& rho,
                            const std::vector<Projector>& family,
                            const ToleranceConfig& tol) {
  require(!family.empty(), "lueders_mix: empty family");
  Eigen::Index d = rho.dim();
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  ComplexMatrix mixed = ComplexMatrix::Zero(d, d);
  for (const auto& e : family) {
    require(e.dim() == d, "lueders_mix: dimension mismatch");
    sum += e.matrix();
    mixed += e.matrix() * rho.matrix() * e.matrix();
  }
  require(op_norm(sum - ComplexMatrix::Identity(d, d)) <= tol.tol_alg,
          "lueders_mix: family does not resolve the identity");
  for (size_t i = 0; i < family.size(); ++i)
    for (size_t j = i + 1; j < family.size(); ++j)
      require(op_norm(family[i].matrix() * family[j].matrix()) <= tol.tol_alg,
              "lueders_mix: family is not orthogonal");
  return DensityOperator(mixed, tol);
}

Projector heisenberg_transform(const Projector& e_s,
                               const HermitianOperator& h, double t,
                               const ToleranceConfig& tol) {
  require(e_s.dim() == h.dim(), "heisenberg_transform: dimension mismatch");
  return Projector(heisenberg_conjugate(e_s.matrix(), h, t), tol);
}

ComplexMatrix heisenberg_conjugate(const ComplexMatrix& a,
                                   const HermitianOperator& h, double t) {
  require(a.rows() == h.dim() && a.cols() == h.dim(),
          "heisenberg_conjugate: dimension mismatch");
  ComplexMatrix u = phase_exp(h, -t);  // exp(+i H t)
  return u * a * u.adjoint();
}

double von_neumann_entropy(const DensityOperator& rho,
                           const ToleranceConfig& tol) {
  (void)tol;
  auto es = eig_h(rho.matrix());
  double s = 0.0;
  for (Eigen::Index k = 0; k < rho.dim(); ++k) {
    double p = es.eigenvalues()(k);
    if (p > 0.0) s -= p * std::log(p);
  }
  return std::max(s, 0.0);
}

double fidelity(const ComplexVector& phi, const ComplexVector& psi) {
  require(phi.size() == psi.size(), "fidelity: dimension mismatch");
  return std::norm(phi.dot(psi));
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

HermitianOperator random_hermitian(Eigen::Index dim, std::mt19937_64& rng,
                                   const ToleranceConfig& tol) {
  ComplexMatrix a = randn_matrix(dim, dim, rng);
  return HermitianOperator(0.5 * (a + a.adjoint().eval()), tol);
}

HermitianOperator random_hermitian(Eigen::Index dim, std::uint64_t seed,
                                   const ToleranceConfig& tol) {
  std::mt19937_64 rng(seed);
  return random_hermitian(dim, rng, tol);
}

HermitianOperator random_hermitian_unit(Eigen::Index dim, std::mt19937_64& rng,
                                        const ToleranceConfig& tol) {
  HermitianOperator h = random_hermitian(dim, rng, tol);
  return HermitianOperator(h.matrix() / op_norm(h.matrix()), tol);
}

Projector random_projector(Eigen::Index dim, Eigen::Index rank,
                           std::mt19937_64& rng, const ToleranceConfig& tol) {
  require(rank >= 1 && rank <= dim, "random_projector: bad rank");
  Eigen::HouseholderQR<ComplexMatrix> qr(randn_matrix(dim, rank, rng));
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, rank);
  return Projector(q * q.adjoint(), tol);
}

Projector random_projector(Eigen::Index dim, Eigen::Index rank,
                           std::uint64_t seed, const ToleranceConfig& tol) {
  std::mt19937_64 rng(seed);
  return random_projector(dim, rank, rng, tol);
}

StateVector random_state(Eigen::Index dim, std::mt19937_64& rng,
                         const ToleranceConfig& tol) {
  ComplexVector v = randn_matrix(dim, 1, rng).col(0);
  return StateVector(v / v.norm(), true, tol);
}

StateVector random_state(Eigen::Index dim, std::uint64_t seed,
                         const ToleranceConfig& tol) {
  std::mt19937_64 rng(seed);
  return random_state(dim, rng, tol);
}

DensityOperator random_density(Eigen::Index dim, std::mt19937_64& rng,
                               const ToleranceConfig& tol) {
  ComplexMatrix a = randn_matrix(dim, dim, rng);
  ComplexMatrix w = a * a.adjoint();
  return DensityOperator(w / w.trace().real(), tol);
}

DensityOperator random_density(Eigen::Index dim, std::uint64_t seed,
                               const ToleranceConfig& tol) {
  std::mt19937_64 rng(seed);
  return random_density(dim, rng, tol);
}

ComplexMatrix range_basis(const Projector& e, const ToleranceConfig& tol) {
  (void)tol;
  auto es = eig_h(e.matrix());
  ComplexMatrix basis(e.dim(), e.rank());
  Eigen::Index col = 0;
  // Eigenvalues sorted ascending; the trailing rank() of them are ~1.
  for (Eigen::Index k = 0; k < e.dim(); ++k)
    if (es.eigenvalues()(k) > 0.5) basis.col(col++) = es.eigenvectors().col(k);
  require(col == e.rank(), "range_basis: rank mismatch");
  return basis;
}

ComplexMatrix orthonormal_completion(const ComplexMatrix& v,
                                     std::mt19937_64& rng) {
  Eigen::Index dim = v.rows();
  require(v.cols() <= dim, "orthonormal_completion: too many columns");
  ComplexMatrix basis(dim, dim);
  Eigen::Index got = v.cols();
  basis.leftCols(got) = v;
  while (got < dim) {
    ComplexVector cand = randn_matrix(dim, 1, rng).col(0);
    // Two Gram-Schmidt sweeps for numerical orthogonality.
    for (int sweep = 0; sweep < 2; ++sweep)
      for (Eigen::Index k = 0; k < got; ++k)
        cand -= basis.col(k).dot(cand) * basis.col(k);
    if (cand.norm() < 1e-8) continue;
    basis.col(got++) = cand / cand.norm();
  }
  return basis;
}

}  // namespace qzeno
