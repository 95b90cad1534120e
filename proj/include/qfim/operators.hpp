#pragma once

#include <string>
#include <utility>

#include "qfim/symmetric_space.hpp"
#include "qfim/types.hpp"

namespace qfim {

/// A Hermitian operator on a symmetric space, stored dense.
class HermitianOperator {
public:
  /// Hermiticity is validated on construction: the anti-Hermitian part must
  /// stay below 1e-12 of the Frobenius norm.
  HermitianOperator(CMatrix matrix, std::string label, SpacePtr space);

  const CMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  const SpacePtr& space() const { return space_; }
  Index dim() const { return matrix_.rows(); }

  double trace() const { return matrix_.trace().real(); }
  double frobenius_norm() const { return matrix_.norm(); }

private:
  CMatrix matrix_;
  std::string label_;
  SpacePtr space_;
};

/// Schwinger-boson transition operator a_i^dagger a_j in the occupation
/// basis. Mode indices are 0-based. For i == j this is the mode-i number
/// operator.
CMatrix transition_operator(const SymmetricSpace& space, int i, int j);

/// Sparse form of the same operator; at most one off-diagonal entry per
/// column, so products and matvecs stay cheap even at large dimension.
SparseCMatrix transition_operator_sparse(const SymmetricSpace& space, int i, int j);

/// exp(factor * A) * v via segmented truncated Taylor series, accurate to
/// machine precision. Never forms the dense exponential.
CVector apply_exponential(const SparseCMatrix& a, Complex factor, const CVector& v);

/// Dense matrix exponential of -i * angle * H for Hermitian H, via
/// eigendecomposition. Throws NumericalError if the eigensolver fails.
CMatrix hermitian_rotation(const CMatrix& h, double angle);

void require_compatible(const SpacePtr& a, const SpacePtr& b, const char* what);

}  // namespace qfim
