#pragma once

#include <string>
#include <vector>

#include "qfim/lie_basis.hpp"
#include "qfim/state.hpp"

namespace qfim {

/// Quantum Fisher information matrix over a LieBasis.
struct Qfim {
  RMatrix matrix;                   ///< real symmetric, (n^2-1) x (n^2-1)
  std::string state_tag;            ///< provenance label
  std::vector<std::string> labels;  ///< basis operator labels, row/column order
};

/// Pure-state QFIM F_{mu nu} = 4 Re(<G_mu psi|G_nu psi> - <G_mu><G_nu>),
/// assembled from the n^2-1 image vectors G_mu|psi> without any D x D
/// operator products.
Qfim qfim_pure(const StateVector& psi, const LieBasis& basis, std::string state_tag = "");

/// Mixed-state QFIM from symmetric logarithmic derivatives solved in the
/// eigenbasis of rho, with d_mu rho = -i [G_mu, rho]. Eigenvalue pairs with
/// p_j + p_k below support_threshold are treated as outside the support and
/// the SLD element set to zero.
Qfim qfim_mixed(const DensityMatrix& rho, const LieBasis& basis,
                double support_threshold = 1e-12, std::string state_tag = "");

/// Quantum geometric tensor Q_{mu nu} = <G_mu psi|G_nu psi> - <G_mu><G_nu>.
/// Hermitian; 4 Re(Q) is the pure-state QFIM and Im(Q) the Berry curvature.
struct QuantumGeometricTensor {
  CMatrix matrix;
  RMatrix real_part() const { return matrix.real(); }
  RMatrix berry_curvature() const { return matrix.imag(); }
};

QuantumGeometricTensor qgt(const StateVector& psi, const LieBasis& basis);

/// Eigendecomposition of a QFIM: eigenvalues descending, orthonormal
/// eigenvectors as columns, sign-fixed so the largest-magnitude coefficient
/// of each vector is positive, plus degeneracy groups.
struct QfimEigen {
  RVector eigenvalues;
  RMatrix eigenvectors;
  std::vector<std::vector<int>> degeneracy_groups;  ///< 0-based ranks per group

  int size() const { return static_cast<int>(eigenvalues.size()); }
  /// Degeneracy group containing the given 0-based rank.
  int group_of(int rank) const;
};

QfimEigen diagonalize(const Qfim& q, double degeneracy_rtol = 1e-6);

struct OptimalGenerator {
  HermitianOperator op;
  RVector coefficients;
  double eigenvalue;
};

/// The rank-th eigenvector (1 = largest eigenvalue) materialized as an
/// operator sum_mu O^mu G_mu.
OptimalGenerator optimal_generator(const QfimEigen& eig, const LieBasis& basis, int which = 1);

/// Quadratic form v^T F v = 4 Var_psi(sum_mu v^mu G_mu) for a unit
/// coefficient vector v.
double qfi_along(const StateVector& psi, const RVector& direction, const LieBasis& basis);

/// Alignment of one eigenframe to the previous one: greedy maximum-overlap
/// matching with sign fixes; within current degeneracy groups, the previous
/// vectors are projected onto the group eigenspace to resolve the rotation
/// ambiguity.
struct TrackAlignment {
  std::vector<int> permutation;  ///< previous rank i ~ current rank permutation[i]
  std::vector<double> overlaps;  ///< |<prev_i, cur_perm[i]>| after projection
  std::vector<int> signs;        ///< sign flip applied to the current vector
  /// Eigenvalues of `current` reordered to follow `previous`'s frame.
  RVector aligned_eigenvalues;
};

TrackAlignment track_eigenvectors(const QfimEigen& previous, const QfimEigen& current);

}  // namespace qfim
