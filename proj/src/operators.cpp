#include "qfim/operators.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <vector>

namespace qfim {

void require_compatible(const SpacePtr& a, const SpacePtr& b, const char* what) {
  if (!a || !b || !a->compatible_with(*b)) {
    std::ostringstream msg;
    msg << what << ": operands live on different symmetric spaces";
    if (a && b) {
      msg << " (n=" << a->modes() << ",N=" << a->particles() << ") vs (n=" << b->modes()
          << ",N=" << b->particles() << ")";
    }
    throw SpaceMismatchError(msg.str());
  }
}

HermitianOperator::HermitianOperator(CMatrix matrix, std::string label, SpacePtr space)
    : matrix_(std::move(matrix)), label_(std::move(label)), space_(std::move(space)) {
  if (!space_) throw ValidationError("HermitianOperator requires a space");
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() != space_->dim()) {
    throw ValidationError("HermitianOperator: matrix dimension does not match the space");
  }
  const double scale = matrix_.norm();
  const double dev = (matrix_ - matrix_.adjoint()).norm();
  if (dev > 1e-12 * std::max(scale, 1.0)) {
    std::ostringstream msg;
    msg << "operator '" << label_ << "' is not Hermitian: relative deviation " << dev / std::max(scale, 1.0);
    throw ValidationError(msg.str());
  }
}

SparseCMatrix transition_operator_sparse(const SymmetricSpace& space, int i, int j) {
  if (i < 0 || j < 0 || i >= space.modes() || j >= space.modes()) {
    throw ValidationError("transition_operator: mode index out of range");
  }
  const Index dim = space.dim();
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim));
  for (Index col = 0; col < dim; ++col) {
    const OccupationState& occ = space.occupations(col);
    if (i == j) {
      if (occ[static_cast<std::size_t>(i)] > 0) {
        entries.emplace_back(col, col, Complex(occ[static_cast<std::size_t>(i)], 0.0));
      }
    } else if (occ[static_cast<std::size_t>(j)] > 0) {
      OccupationState target = occ;
      const double kj = target[static_cast<std::size_t>(j)]--;
      const double ki = target[static_cast<std::size_t>(i)]++;
      const Index row = space.index_of(target);
      entries.emplace_back(row, col, Complex(std::sqrt((ki + 1.0) * kj), 0.0));
    }
  }
  SparseCMatrix op(dim, dim);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

CMatrix transition_operator(const SymmetricSpace& space, int i, int j) {
  return CMatrix(transition_operator_sparse(space, i, j));
}

namespace {

double one_norm(const SparseCMatrix& a) {
  double best = 0.0;
  for (int col = 0; col < a.outerSize(); ++col) {
    double sum = 0.0;
    for (SparseCMatrix::InnerIterator it(a, col); it; ++it) sum += std::abs(it.value());
    best = std::max(best, sum);
  }
  return best;
}

}  // namespace

CVector apply_exponential(const SparseCMatrix& a, Complex factor, const CVector& v) {
  if (a.rows() != v.size()) throw ValidationError("apply_exponential: size mismatch");
  const double scaled_norm = one_norm(a) * std::abs(factor);
  const int segments = std::max(1, static_cast<int>(std::ceil(scaled_norm / 0.5)));
  const Complex f = factor / static_cast<double>(segments);

  CVector w = v;
  for (int seg = 0; seg < segments; ++seg) {
    CVector term = w;
    CVector acc = w;
    for (int k = 1; k <= 256; ++k) {
      term = (a * term).eval();
      term *= f / static_cast<double>(k);
      acc += term;
      if (term.norm() <= 1e-18 * acc.norm()) break;
    }
    w.swap(acc);
  }
  return w;
}

CMatrix hermitian_rotation(const CMatrix& h, double angle) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_rotation: eigendecomposition failed");
  }
  const RVector& lam = solver.eigenvalues();
  CVector phases(lam.size());
  for (Index k = 0; k < lam.size(); ++k) {
    phases[k] = std::exp(Complex(0.0, -angle * lam[k]));
  }
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace qfim
