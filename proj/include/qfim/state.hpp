#pragma once

#include <string>
#include <utility>

#include "qfim/operators.hpp"

namespace qfim {

/// A pure state as complex amplitudes over the occupation basis.
class StateVector {
public:
  /// Validates unit norm to 1e-12.
  StateVector(CVector amplitudes, SpacePtr space);

  const CVector& amplitudes() const { return amplitudes_; }
  const SpacePtr& space() const { return space_; }
  Index dim() const { return amplitudes_.size(); }

  double norm() const { return amplitudes_.norm(); }
  Complex overlap(const StateVector& other) const { return amplitudes_.dot(other.amplitudes_); }

private:
  CVector amplitudes_;
  SpacePtr space_;
};

/// A density operator; Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
public:
  DensityMatrix(CMatrix rho, SpacePtr space);

  /// rho = |psi><psi|
  static DensityMatrix pure(const StateVector& psi);

  const CMatrix& matrix() const { return rho_; }
  const SpacePtr& space() const { return space_; }
  Index dim() const { return rho_.rows(); }

private:
  CMatrix rho_;
  SpacePtr space_;
};

double expectation(const StateVector& psi, const SparseCMatrix& op);
double expectation(const StateVector& psi, const HermitianOperator& op);
double variance(const StateVector& psi, const SparseCMatrix& op);
double variance(const StateVector& psi, const HermitianOperator& op);

}  // namespace qfim
