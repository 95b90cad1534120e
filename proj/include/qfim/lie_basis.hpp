#pragma once

#include <string>
#include <vector>

#include "qfim/operators.hpp"

namespace qfim {

/// Orthogonal traceless Hermitian basis of su(n) on a symmetric space.
///
/// Construction order for generic n:
///   (a) for every mode pair i<j in lexicographic order, the x then y
///       component of the pair's su(2) sub-algebra (n(n-1) operators);
///   (b) the primary diagonal operators A^z_{12}, A^z_{34}, ... ;
///   (c) normalized alternating-index diagonal sums, with the terminal
///       all-pairs sum when n is odd.
/// For n = 4 the basis is instead ordered and labeled as the named set
/// {Qx, Qy, Qz, Sigx, Sigy, Sigz, Mx, My, Nx, Ny, Pz, Ux, Uy, Vx, Vy} so
/// that coefficient vectors line up with the conventional su(4) operators.
///
/// All generators share the trace norm Tr[G_mu G_nu] = C delta_{mu nu},
/// where C is defined operationally as Tr[(A^z_{12})^2].
class LieBasis {
public:
  const std::vector<HermitianOperator>& generators() const { return generators_; }
  const HermitianOperator& generator(int mu) const { return generators_.at(static_cast<std::size_t>(mu)); }
  const SparseCMatrix& sparse_generator(int mu) const { return sparse_.at(static_cast<std::size_t>(mu)); }

  int size() const { return static_cast<int>(generators_.size()); }
  double norm_c() const { return norm_c_; }
  int modes() const { return space_->modes(); }
  int particles() const { return space_->particles(); }
  const SpacePtr& space() const { return space_; }

  std::vector<std::string> labels() const;
  /// Index of the generator with the given label; -1 if absent.
  int label_index(const std::string& label) const;

  /// The closed-form norm prod_{j=1..n}(N+j) / (n+1)!. Kept as a cross-check
  /// only; it disagrees with the operational Tr[(A^z_{12})^2] except at N=2,
  /// and the numerical value is authoritative everywhere downstream.
  double killing_norm_closed_form() const;

  CVector apply_generator(int mu, const CVector& v) const;
  /// Image of v under sum_mu coeffs[mu] G_mu without materializing the sum.
  CVector apply_combination(const RVector& coeffs, const CVector& v) const;
  SparseCMatrix combination_sparse(const RVector& coeffs) const;
  HermitianOperator materialize(const RVector& coeffs, std::string label) const;

  friend LieBasis build_lie_basis(SpacePtr space);

private:
  explicit LieBasis(SpacePtr space) : space_(std::move(space)) {}

  SpacePtr space_;
  std::vector<HermitianOperator> generators_;
  std::vector<SparseCMatrix> sparse_;
  double norm_c_ = 0.0;
};

LieBasis build_lie_basis(SpacePtr space);

struct Decomposition {
  RVector coefficients;  ///< c_mu = Tr[G_mu op] / C
  double residual;       ///< Frobenius norm of op minus its span{I, G_mu} part
};

/// Projects op onto the basis. residual ~ 0 iff op lies in span{I, G_mu}.
Decomposition decompose_operator(const LieBasis& basis, const HermitianOperator& op);

}  // namespace qfim
