#pragma once

#include <vector>

#include "qfim/qfim.hpp"

namespace qfim {

struct CommuteResult {
  bool commute;
  double relative_norm;  ///< ||[A,B]||_F / (||A||_F ||B||_F)
};

/// Relative Frobenius commutator test.
CommuteResult commutes(const HermitianOperator& a, const HermitianOperator& b,
                       double commute_tol = 1e-8);

/// A set of mutually commuting QFIM eigenvectors. Member operators are kept
/// as coefficient vectors over the basis; materialize() builds the dense
/// operators on demand.
struct CommutingSet {
  std::vector<int> member_ranks;       ///< 1-based eigenvalue ranks
  std::vector<RVector> coefficients;   ///< one unit vector per member
  RVector qfis;                        ///< eigenvalues (QFI per member)
  double max_pairwise_commutator = 0;  ///< worst relative commutator norm
  double total_qfi = 0;
  bool exceeds_cartan = false;  ///< larger than the guaranteed n-1 members
  bool from_degenerate_rotation = false;

  std::vector<HermitianOperator> materialize(const LieBasis& basis) const;
};

struct CommutingSetOptions {
  double min_qfi = -1.0;      ///< threshold; negative means the SQL value N
  double commute_tol = 1e-8;  ///< relative commutator tolerance
  int degenerate_sweep_samples = 64;
};

/// Maximal cliques of the pairwise-commutation graph over eigenvectors with
/// eigenvalue >= min_qfi, sorted by total QFI descending. For each 2-dim
/// degeneracy group among the candidates a one-parameter rotation sweep is
/// also searched, since eigenvectors inside a degenerate block are only
/// defined up to rotation.
std::vector<CommutingSet> find_commuting_sets(const QfimEigen& eig, const LieBasis& basis,
                                              const CommutingSetOptions& options = {});

struct UhlmannMatrix {
  RMatrix matrix;  ///< antisymmetric; entry (mu, nu) = -i Tr[rho [L_mu, L_nu]] / 2
};

/// Pure-state Uhlmann curvature with L_mu = 2 drho_mu, drho_mu = -i[G_mu, |psi><psi|].
UhlmannMatrix uhlmann_curvature(const StateVector& psi,
                                const std::vector<HermitianOperator>& generators);

/// Mixed-state Uhlmann curvature from SLDs in the eigenbasis of rho.
UhlmannMatrix uhlmann_curvature(const DensityMatrix& rho,
                                const std::vector<HermitianOperator>& generators,
                                double support_threshold = 1e-12);

}  // namespace qfim
