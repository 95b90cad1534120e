#include "qfim/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

namespace qfim {

StateVector::StateVector(CVector amplitudes, SpacePtr space)
    : amplitudes_(std::move(amplitudes)), space_(std::move(space)) {
  if (!space_) throw ValidationError("StateVector requires a space");
  if (amplitudes_.size() != space_->dim()) {
    throw ValidationError("StateVector: amplitude count does not match the space dimension");
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "StateVector must be unit-norm; got " << norm;
    throw ValidationError(msg.str());
  }
}

DensityMatrix::DensityMatrix(CMatrix rho, SpacePtr space)
    : rho_(std::move(rho)), space_(std::move(space)) {
  if (!space_) throw ValidationError("DensityMatrix requires a space");
  if (rho_.rows() != rho_.cols() || rho_.rows() != space_->dim()) {
    throw ValidationError("DensityMatrix: dimension does not match the space");
  }
  const double scale = std::max(rho_.norm(), 1.0);
  if ((rho_ - rho_.adjoint()).norm() > 1e-12 * scale) {
    throw ValidationError("DensityMatrix must be Hermitian");
  }
  if (std::abs(rho_.trace().real() - 1.0) > 1e-10 || std::abs(rho_.trace().imag()) > 1e-10) {
    throw ValidationError("DensityMatrix must have unit trace");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("DensityMatrix: eigensolver failed");
  const double min_eig = solver.eigenvalues().minCoeff();
  const double max_eig = solver.eigenvalues().maxCoeff();
  if (min_eig < -1e-10 * std::max(max_eig, 1.0)) {
    std::ostringstream msg;
    msg << "DensityMatrix must be positive semidefinite; min eigenvalue " << min_eig;
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint(), psi.space());
}

double expectation(const StateVector& psi, const SparseCMatrix& op) {
  return psi.amplitudes().dot(op * psi.amplitudes()).real();
}

double expectation(const StateVector& psi, const HermitianOperator& op) {
  require_compatible(psi.space(), op.space(), "expectation");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes()).real();
}

double variance(const StateVector& psi, const SparseCMatrix& op) {
  const CVector image = op * psi.amplitudes();
  const double mean = psi.amplitudes().dot(image).real();
  return image.squaredNorm() - mean * mean;
}

double variance(const StateVector& psi, const HermitianOperator& op) {
  require_compatible(psi.space(), op.space(), "variance");
  const CVector image = op.matrix() * psi.amplitudes();
  const double mean = psi.amplitudes().dot(image).real();
  return image.squaredNorm() - mean * mean;
}

}  // namespace qfim
