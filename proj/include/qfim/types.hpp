#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfim {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;
using SparseCMatrix = Eigen::SparseMatrix<Complex>;
using Index = Eigen::Index;

/// Occupation numbers per mode, summing to the particle count.
using OccupationState = std::vector<int>;

/// Bad user input: malformed configs, out-of-range indices, schema violations.
class ValidationError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Operands built over incompatible symmetric spaces.
class SpaceMismatchError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// A requested object would exceed configured resource limits.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A numerical routine failed to converge or produced invalid output.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Refusal to solve for a unitary connection between operators whose
/// spectra differ. Carries both sorted spectra for diagnostics.
class SpectrumMismatchError : public ValidationError {
public:
  SpectrumMismatchError(std::string message, RVector spectrum_g, RVector spectrum_z)
      : ValidationError(std::move(message)),
        spectrum_g_(std::move(spectrum_g)),
        spectrum_z_(std::move(spectrum_z)) {}

  const RVector& spectrum_g() const { return spectrum_g_; }
  const RVector& spectrum_z() const { return spectrum_z_; }

private:
  RVector spectrum_g_;
  RVector spectrum_z_;
};

}  // namespace qfim
