#pragma once

#include <qzeno/operators.hpp>

#include <functional>
#include <memory>
#include <vector>

namespace qzeno {

// How time derivatives of operator families are produced.
enum class DerivativeMode { analytic, central_difference };

// ---------------------------------------------------------------------------
// UnitaryFamily: t |-> U(t), either a closed-form callback or generator
// defined by U'(t) = g(t) U(t), U(t_start) = 1 with g anti-Hermitian.
// Generator-defined values are integrated once on a fixed internal grid
// (checkpointed), so value(t) is a pure function of t.
// ---------------------------------------------------------------------------
class UnitaryFamily {
 public:
  using MatrixFn = std::function<ComplexMatrix(double)>;

  static UnitaryFamily from_callback(MatrixFn value, Eigen::Index dim,
                                     double t_start = 0.0, double h_fd = 1e-5,
                                     const ToleranceConfig& tol = {});
  // Exact path: U(t) = exp(g (t - t_start)) through one eigendecomposition.
  static UnitaryFamily from_constant_generator(const ComplexMatrix& g,
                                               double t_start = 0.0,
                                               const ToleranceConfig& tol = {});
  // Fixed-substep integration of U' = g(t) U; substeps_per_unit controls the
  // internal grid density.
  static UnitaryFamily from_generator(MatrixFn g, Eigen::Index dim,
                                      double t_start = 0.0,
                                      int substeps_per_unit = 1024,
                                      const ToleranceConfig& tol = {});

  ComplexMatrix value(double t) const;
  // dU/dt: g(t) U(t) for generator kinds, central difference otherwise.
  ComplexMatrix derivative(double t) const;
  bool has_generator() const { return static_cast<bool>(generator_); }
  // Anti-Hermitian g(t) with U' = g U (generator kinds only).
  ComplexMatrix generator(double t) const;

  Eigen::Index dim() const { return dim_; }
  double t_start() const { return t_start_; }

 private:
  UnitaryFamily() = default;

  Eigen::Index dim_ = 0;
  double t_start_ = 0.0;
  double h_fd_ = 1e-5;
  ToleranceConfig tol_;
  MatrixFn value_;      // set for callback kind
  MatrixFn generator_;  // set for generator kinds

  // Checkpoint state for from_generator.
  struct Checkpoints;
  std::shared_ptr<Checkpoints> chk_;
};

// ---------------------------------------------------------------------------
// ProjectorFamily: smooth map t |-> E_s(t) on [t_start, t_end].
// ---------------------------------------------------------------------------
class ProjectorFamily {
 public:
  enum class Kind { steered, diagonal_window, spin_direction, tabulated };
  using MatrixFn = std::function<ComplexMatrix(double)>;
  using ScalarFn = std::function<double(double)>;

  // E_s(t) = U(t) E U(t)^dagger.
  static ProjectorFamily steered(Projector e, UnitaryFamily u, double t_start,
                                 double t_end, const ToleranceConfig& tol = {});
  // E_s(t) = sum over basis indices j with lambda_l(t) <= j <= lambda_r(t).
  // Piecewise constant in t; derivative() returns zero (a.e. value).
  static ProjectorFamily diagonal_window(Eigen::Index dim, ScalarFn lambda_l,
                                         ScalarFn lambda_r, double t_start,
                                         double t_end,
                                         const ToleranceConfig& tol = {});
  // Qubit direction family E_s = (1 + n.sigma)/2, n = (sin th, 0, cos th).
  static ProjectorFamily spin_direction(ScalarFn theta, ScalarFn theta_dot,
                                        double t_start, double t_end,
                                        const ToleranceConfig& tol = {});
  // Arbitrary norm-differentiable callback; derivative via central difference.
  static ProjectorFamily tabulated(MatrixFn value, Eigen::Index dim,
                                   double t_start, double t_end,
                                   double h_fd = 1e-5,
                                   const ToleranceConfig& tol = {});
  static ProjectorFamily constant(Projector e, double t_start, double t_end,
                                  const ToleranceConfig& tol = {});

  // Validated projector value; rank constancy enforced except for
  // diagonal_window, whose integer occupancy may legitimately jump.
  ComplexMatrix value(double t) const;
  ComplexMatrix derivative(double t) const;

  Kind kind() const { return kind_; }
  Eigen::Index dim() const { return dim_; }
  Eigen::Index rank() const { return rank_; }
  double t_start() const { return t_start_; }
  double t_end() const { return t_end_; }
  const Projector& base() const;         // steered only
  const UnitaryFamily& steering() const;  // steered only

 private:
  ProjectorFamily() = default;
  void require_in_domain(double t) const;

  Kind kind_ = Kind::tabulated;
  Eigen::Index dim_ = 0;
  Eigen::Index rank_ = 0;
  double t_start_ = 0.0, t_end_ = 0.0;
  double h_fd_ = 1e-5;
  ToleranceConfig tol_;
  std::shared_ptr<Projector> base_;
  std::shared_ptr<UnitaryFamily> steering_;
  MatrixFn value_;
  ScalarFn lambda_l_, lambda_r_;
  ScalarFn theta_, theta_dot_;
};

// ---------------------------------------------------------------------------
// HeisenbergFamily: E_H(t) = exp(iHt) E_s(t) exp(-iHt) with derivative
// dE_H/dt = i[H, E_H(t)] + exp(iHt) (dE_s/dt) exp(-iHt).
// ---------------------------------------------------------------------------
class HeisenbergFamily {
 public:
  HeisenbergFamily(ProjectorFamily family, HermitianOperator h,
                   const ToleranceConfig& tol = {});

  ComplexMatrix value(double t) const;
  Projector value_projector(double t) const;
  ComplexMatrix derivative(double t,
                           DerivativeMode mode = DerivativeMode::analytic,
                           double h_fd = 1e-5) const;

  // exp(+i H t) A exp(-i H t) using the cached spectral decomposition.
  ComplexMatrix conjugate_in(const ComplexMatrix& a, double t) const;
  // exp(-i H t)
  ComplexMatrix schroedinger_factor(double t) const;

  const ProjectorFamily& family() const { return family_; }
  const HermitianOperator& hamiltonian() const { return h_; }
  Eigen::Index dim() const { return family_.dim(); }
  double t_start() const { return family_.t_start(); }
  double t_end() const { return family_.t_end(); }

 private:
  ProjectorFamily family_;
  HermitianOperator h_;
  ToleranceConfig tol_;
  Eigen::VectorXd h_eigs_;
  ComplexMatrix h_vecs_;
};

}  // namespace qzeno
