#pragma once

#include <string>
#include <vector>

#include "qfim/operators.hpp"

namespace qfim {

/// Labeled catalog of su(4) operators for the four-mode system with mode
/// order (u, d, s, c).
///
/// Six su(2) sub-algebras come from the raising operators
///   Q+ = u'd, Sig+ = s'c, M+ = u'c, N+ = s'd, U+ = u's, V+ = c'd,
/// each contributing x/y/z components. On top the collective composites
///   J+ = (M+ + N+)/sqrt(2), K+ = (U+ + V+)/sqrt(2), E+ = (Q+ + Sig+)/sqrt(2)
/// define Jx/Jy, Kx/Ky, Ex/Ey, with Jz = (Qz + Sigz)/sqrt(2) and
/// Kz = (Qz - Sigz)/sqrt(2) the population-difference forms, and
/// Ez = [E+, E-]/2 = (Qz + Sigz)/2 the commutator closure of the E pair.
/// Pz = (Mz - Nz)/sqrt(2) completes the orthonormal basis.
///
/// Operators are built on demand; nothing dense is cached, so the catalog is
/// cheap to hold even at large dimension.
class Su4Catalog {
public:
  explicit Su4Catalog(SpacePtr space);

  const SpacePtr& space() const { return space_; }
  std::vector<std::string> names() const;
  bool has(const std::string& name) const;

  HermitianOperator get(const std::string& name) const;
  SparseCMatrix sparse(const std::string& name) const;

  /// Raising operator of one of the sub-algebras Q, Sig, M, N, U, V, J, K, E.
  SparseCMatrix raising(const std::string& algebra) const;

private:
  SpacePtr space_;
};

}  // namespace qfim
