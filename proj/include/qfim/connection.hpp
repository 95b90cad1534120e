#pragma once

#include "qfim/lie_basis.hpp"

namespace qfim {

/// True iff the sorted spectra agree elementwise within tol * max|eig|.
bool spectra_match(const HermitianOperator& g, const HermitianOperator& z, double tol = 1e-8);

/// Row-major stacking |O>> with vec(R)[a*D+b] = R(a,b), the convention under
/// which (I (x) G^T - G (x) I) vec(R) = vec([R, G]).
CVector vectorize(const CMatrix& op);
CMatrix devectorize(const CVector& vec);

/// Moore-Penrose pseudoinverse by SVD; singular values below
/// rank_rtol * sigma_max are treated as zero.
CMatrix pseudoinverse(const CMatrix& m, double rank_rtol = 1e-10);

struct ConnectionOptions {
  double accept_fidelity = 1e-6;   ///< caller-facing "connected" threshold
  int max_refinements = 100;       ///< fixed-point iterations after the direct solve
  Index dense_threshold = 64;      ///< build the D^2 x D^2 superoperator only up to this D
  double rank_rtol = 1e-10;        ///< pseudoinverse truncation
  double refine_tol = 1e-12;       ///< stop refining below this misalignment
};

struct ConnectionSolution {
  HermitianOperator r_operator;  ///< rotation generator R with U_c = exp(-i R pi/2)
  RVector r_coefficients;        ///< decomposition R = R^mu G_mu over the basis
  double coefficient_residual;   ///< part of R outside span{I, G_mu}
  double sylvester_residual;     ///< ||i[R, G] - Z||_F for the returned R
  double connection_fidelity;    ///< ||U_c' G U_c - Z||_F / ||Z||_F
  double hermitian_discard;      ///< anti-Hermitian leakage removed from the direct solve
  int refinement_steps;          ///< 0 when the direct pi/2 solve already connects
  Index pinv_rank;               ///< numerical rank kept by the pseudoinverse (-1 on the matrix-free path)
  Index pinv_truncated;          ///< singular values zeroed out (-1 on the matrix-free path)
};

/// Solve i[R, G] = Z for the rotation generator connecting G to Z.
///
/// Refuses (SpectrumMismatchError) unless spectra_match(g, z). The direct
/// route follows vec(R) = -i pinv(I (x) G^T - G (x) I) vec(Z) with the dense
/// superoperator up to dense_threshold and a matrix-free LSQR least-squares
/// solve above it. Since the Sylvester equation is only the first-order
/// condition, exp(-i R pi/2) need not map G to Z exactly; when it does not,
/// the solve is refined by composing pseudoinverse steps along the orbit and
/// taking the Hermitian logarithm of the accumulated unitary. Residual and
/// fidelity are reported for the returned R; the caller decides acceptance.
ConnectionSolution solve_connection(const HermitianOperator& g, const HermitianOperator& z,
                                    const LieBasis& basis, const ConnectionOptions& options = {});

}  // namespace qfim
