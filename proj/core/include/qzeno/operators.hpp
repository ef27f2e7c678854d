#pragma once

#include <qzeno/types.hpp>

#include <cstdint>
#include <random>
#include <vector>

namespace qzeno {

// ---------------------------------------------------------------------------
// Validated operator wrappers.  Each constructor checks the defining algebraic
// property against tol.tol_alg and throws ValidationError on failure; the
// underlying matrix is then trusted downstream.
// ---------------------------------------------------------------------------

class HermitianOperator {
 public:
  explicit HermitianOperator(ComplexMatrix m, const ToleranceConfig& tol = {});
  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(ComplexMatrix m, const ToleranceConfig& tol = {});
  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

class Projector {
 public:
  explicit Projector(ComplexMatrix m, const ToleranceConfig& tol = {});
  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }
  Eigen::Index rank() const { return rank_; }
  Projector complement() const;

 private:
  ComplexMatrix mat_;
  Eigen::Index rank_ = 0;
};

// Positive semi-definite, unit trace.  Eigenvalues in [-tol_alg, 0) are
// clipped to 0 and the operator renormalised; anything more negative throws.
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix m, const ToleranceConfig& tol = {});
  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

class StateVector {
 public:
  explicit StateVector(ComplexVector v, bool normalized = true,
                       const ToleranceConfig& tol = {});
  const ComplexVector& vector() const { return vec_; }
  Eigen::Index dim() const { return vec_.size(); }
  bool normalized() const { return normalized_; }
  DensityOperator to_density(const ToleranceConfig& tol = {}) const;

 private:
  ComplexVector vec_;
  bool normalized_;
};

// ---------------------------------------------------------------------------
// Core operations.
// ---------------------------------------------------------------------------

// exp(M).  Hermitian and anti-Hermitian inputs go through an exact
// eigendecomposition; everything else falls back to a dense Pade/scaling
// evaluation.
ComplexMatrix mat_exp(const ComplexMatrix& m, const ToleranceConfig& tol = {});

// exp(-i H t) |psi>
StateVector evolve_state(const StateVector& psi, const HermitianOperator& h,
                         double t, const ToleranceConfig& tol = {});

// exp(-i H t) rho exp(+i H t)
DensityOperator evolve_density(const DensityOperator& rho,
                               const HermitianOperator& h, double t,
                               const ToleranceConfig& tol = {});

// Tr(E rho), clamped to [0, 1] within tol_alg slack.
double measure_prob(const DensityOperator& rho, const Projector& e,
                    const ToleranceConfig& tol = {});

// E rho E / Tr(E rho); throws NullOutcome at or below prob_floor.
DensityOperator collapse(const DensityOperator& rho, const Projector& e,
                         const ToleranceConfig& tol = {});

// sum_n E_n rho E_n for a complete orthogonal family.
DensityOperator lueders_mix(const DensityOperator& rho,
                            const std::vector<Projector>& family,
                            const ToleranceConfig& tol = {});

// exp(+i H t) E exp(-i H t)
Projector heisenberg_transform(const Projector& e_s, const HermitianOperator& h,
                               double t, const ToleranceConfig& tol = {});

// Same conjugation for a matrix with no projector structure (derivatives,
// chain operators).
ComplexMatrix heisenberg_conjugate(const ComplexMatrix& a,
                                   const HermitianOperator& h, double t);

// -sum_k p_k ln p_k over the spectrum of rho (natural log, 0 ln 0 = 0).
double von_neumann_entropy(const DensityOperator& rho,
                           const ToleranceConfig& tol = {});

// |<phi|psi>|^2 for unit vectors.
double fidelity(const ComplexVector& phi, const ComplexVector& psi);

// ---------------------------------------------------------------------------
// Constructors and helpers.
// ---------------------------------------------------------------------------

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// GUE-style hermitian draw, entries O(1).  The rng-based overloads compose
// (successive draws advance the stream); the seed-based ones match one draw
// from a fresh stream.
HermitianOperator random_hermitian(Eigen::Index dim, std::mt19937_64& rng,
                                   const ToleranceConfig& tol = {});
HermitianOperator random_hermitian(Eigen::Index dim, std::uint64_t seed,
                                   const ToleranceConfig& tol = {});

// As above but rescaled to unit spectral norm.
HermitianOperator random_hermitian_unit(Eigen::Index dim, std::mt19937_64& rng,
                                        const ToleranceConfig& tol = {});

// Rank-r projector onto the span of r Haar-ish random orthonormal columns.
Projector random_projector(Eigen::Index dim, Eigen::Index rank,
                           std::mt19937_64& rng,
                           const ToleranceConfig& tol = {});
Projector random_projector(Eigen::Index dim, Eigen::Index rank,
                           std::uint64_t seed,
                           const ToleranceConfig& tol = {});

StateVector random_state(Eigen::Index dim, std::mt19937_64& rng,
                         const ToleranceConfig& tol = {});
StateVector random_state(Eigen::Index dim, std::uint64_t seed,
                         const ToleranceConfig& tol = {});

DensityOperator random_density(Eigen::Index dim, std::mt19937_64& rng,
                               const ToleranceConfig& tol = {});
DensityOperator random_density(Eigen::Index dim, std::uint64_t seed,
                               const ToleranceConfig& tol = {});

// Orthonormal columns spanning range(E); second dimension equals rank(E).
ComplexMatrix range_basis(const Projector& e, const ToleranceConfig& tol = {});

// Extends the orthonormal columns of v to a full orthonormal basis of C^dim,
// drawing completion candidates from rng (Gram-Schmidt).
ComplexMatrix orthonormal_completion(const ComplexMatrix& v,
                                     std::mt19937_64& rng);

}  // namespace qzeno
