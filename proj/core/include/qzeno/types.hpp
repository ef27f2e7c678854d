#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qzeno {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// Shared numerical knobs.  tol_alg guards algebraic identities (hermiticity,
// idempotence, unitarity); tol_conv is the target for iterative/ODE results;
// probabilities below prob_floor are treated as null outcomes.
struct ToleranceConfig {
  double tol_alg = 1e-10;
  double tol_conv = 1e-6;
  double prob_floor = 1e-12;
  int max_dim = 64;
};

// Raised when conditioning on a history of (numerically) zero probability.
class NullOutcome : public std::runtime_error {
 public:
  explicit NullOutcome(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an input fails a structural invariant (wrong shape, not
// hermitian, not a projector, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Spectral (operator) norm via SVD; the metric used by every defect check.
inline double op_norm(const ComplexMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

inline double hermiticity_defect(const ComplexMatrix& m) {
  return op_norm(m - m.adjoint());
}

inline double idempotence_defect(const ComplexMatrix& m) {
  return op_norm(m * m - m);
}

inline double unitarity_defect(const ComplexMatrix& m) {
  return op_norm(m.adjoint() * m -
                 ComplexMatrix::Identity(m.cols(), m.cols()));
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}

inline void require_square(const ComplexMatrix& m, const std::string& who) {
  require(m.rows() == m.cols() && m.rows() > 0,
          who + ": matrix must be square and non-empty");
}

inline void require_dim(const ComplexMatrix& m, const ToleranceConfig& tol,
                        const std::string& who) {
  require_square(m, who);
  require(m.rows() <= tol.max_dim,
          who + ": dimension " + std::to_string(m.rows()) +
              " exceeds max_dim " + std::to_string(tol.max_dim));
}

}  // namespace qzeno
