#include "qfim/qfim.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qfim {

namespace {

/// Shared core: image vectors g_mu = G_mu |psi>, means m_mu = <psi|g_mu>,
/// and the complex covariance Q = Gram(g) - m m^T.
CMatrix covariance_tensor(const StateVector& psi, const LieBasis& basis) {
  require_compatible(psi.space(), basis.space(), "qfim");
  const int k = basis.size();
  std::vector<CVector> images(static_cast<std::size_t>(k));
  for (int mu = 0; mu < k; ++mu) {
    images[static_cast<std::size_t>(mu)] = basis.apply_generator(mu, psi.amplitudes());
  }
  RVector means(k);
  for (int mu = 0; mu < k; ++mu) {
    means[mu] = psi.amplitudes().dot(images[static_cast<std::size_t>(mu)]).real();
  }
  CMatrix q(k, k);
  for (int mu = 0; mu < k; ++mu) {
    q(mu, mu) = images[static_cast<std::size_t>(mu)].squaredNorm() - means[mu] * means[mu];
    for (int nu = mu + 1; nu < k; ++nu) {
      const Complex inner = images[static_cast<std::size_t>(mu)].dot(images[static_cast<std::size_t>(nu)]);
      q(mu, nu) = inner - means[mu] * means[nu];
      q(nu, mu) = std::conj(q(mu, nu));
    }
  }
  return q;
}

}  // namespace

Qfim qfim_pure(const StateVector& psi, const LieBasis& basis, std::string state_tag) {
  if (std::abs(psi.norm() - 1.0) > 1e-10) throw ValidationError("qfim_pure: state is not normalized");
  const CMatrix q = covariance_tensor(psi, basis);
  return {4.0 * q.real(), std::move(state_tag), basis.labels()};
}

QuantumGeometricTensor qgt(const StateVector& psi, const LieBasis& basis) {
  return {covariance_tensor(psi, basis)};
}

Qfim qfim_mixed(const DensityMatrix& rho, const LieBasis& basis, double support_threshold,
                std::string state_tag) {
  require_compatible(rho.space(), basis.space(), "qfim_mixed");
  const int k = basis.size();
  const Index dim = rho.dim();

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("qfim_mixed: eigensolver failed");
  const RVector& p = solver.eigenvalues();
  const CMatrix& v = solver.eigenvectors();

  // SLDs in the eigenbasis of rho: with drho = -i[G, rho],
  // (drho)_{jk} = -i G'_{jk} (p_k - p_j) and L_{jk} = 2 (drho)_{jk}/(p_j + p_k).
  std::vector<CMatrix> slds(static_cast<std::size_t>(k));
  for (int mu = 0; mu < k; ++mu) {
    const CMatrix g_eig = v.adjoint() * CMatrix(basis.sparse_generator(mu)) * v;
    CMatrix l(dim, dim);
    for (Index j = 0; j < dim; ++j) {
      for (Index m = 0; m < dim; ++m) {
        const double psum = p[j] + p[m];
        if (psum < support_threshold) {
          l(j, m) = 0.0;
        } else {
          const Complex drho = Complex(0.0, -1.0) * g_eig(j, m) * (p[m] - p[j]);
          l(j, m) = 2.0 * drho / psum;
        }
      }
    }
    slds[static_cast<std::size_t>(mu)] = std::move(l);
  }

  RMatrix f(k, k);
  for (int mu = 0; mu < k; ++mu) {
    for (int nu = mu; nu < k; ++nu) {
      // (1/2) Tr[rho {L_mu, L_nu}] = Re Tr[diag(p) L_mu L_nu]
      Complex tr = 0.0;
      const CMatrix prod = slds[static_cast<std::size_t>(mu)] * slds[static_cast<std::size_t>(nu)];
      for (Index j = 0; j < dim; ++j) tr += p[j] * prod(j, j);
      f(mu, nu) = tr.real();
      f(nu, mu) = f(mu, nu);
    }
  }
  return {std::move(f), std::move(state_tag), basis.labels()};
}

int QfimEigen::group_of(int rank) const {
  for (std::size_t g = 0; g < degeneracy_groups.size(); ++g) {
    for (int r : degeneracy_groups[g]) {
      if (r == rank) return static_cast<int>(g);
    }
  }
  return -1;
}

QfimEigen diagonalize(const Qfim& q, double degeneracy_rtol) {
  const Index k = q.matrix.rows();
  const double asym = (q.matrix - q.matrix.transpose()).norm();
  if (asym > 1e-10 * std::max(1.0, q.matrix.norm())) {
    throw ValidationError("diagonalize: QFIM is not symmetric");
  }
  const RMatrix sym = 0.5 * (q.matrix + q.matrix.transpose());
  Eigen::SelfAdjointEigenSolver<RMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw NumericalError("diagonalize: eigensolver failed");

  QfimEigen out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();

  // Deterministic sign: the largest-magnitude coefficient (first on ties)
  // is made positive.
  for (Index col = 0; col < k; ++col) {
    Index imax = 0;
    out.eigenvectors.col(col).cwiseAbs().maxCoeff(&imax);
    if (out.eigenvectors(imax, col) < 0.0) out.eigenvectors.col(col) = -out.eigenvectors.col(col);
  }

  const double tol = degeneracy_rtol * std::max(out.eigenvalues.size() ? out.eigenvalues[0] : 0.0, 1.0);
  std::vector<int> group;
  for (Index r = 0; r < k; ++r) {
    if (!group.empty() &&
        std::abs(out.eigenvalues[r] - out.eigenvalues[group.front()]) > tol) {
      out.degeneracy_groups.push_back(group);
      group.clear();
    }
    group.push_back(static_cast<int>(r));
  }
  if (!group.empty()) out.degeneracy_groups.push_back(group);
  return out;
}

OptimalGenerator optimal_generator(const QfimEigen& eig, const LieBasis& basis, int which) {
  if (which < 1 || which > eig.size()) throw ValidationError("optimal_generator: rank out of range");
  if (eig.size() != basis.size()) throw SpaceMismatchError("optimal_generator: basis size mismatch");
  RVector coeffs = eig.eigenvectors.col(which - 1);
  std::ostringstream label;
  label << "G_opt_" << which;
  return {basis.materialize(coeffs, label.str()), std::move(coeffs), eig.eigenvalues[which - 1]};
}

double qfi_along(const StateVector& psi, const RVector& direction, const LieBasis& basis) {
  if (direction.size() != basis.size()) throw ValidationError("qfi_along: direction has wrong length");
  if (std::abs(direction.norm() - 1.0) > 1e-8) {
    throw ValidationError("qfi_along: direction must be a unit coefficient vector");
  }
  const CVector image = basis.apply_combination(direction, psi.amplitudes());
  const double mean = psi.amplitudes().dot(image).real();
  return 4.0 * (image.squaredNorm() - mean * mean);
}

TrackAlignment track_eigenvectors(const QfimEigen& previous, const QfimEigen& current) {
  const int k = previous.size();
  if (current.size() != k) throw ValidationError("track_eigenvectors: frame sizes differ");

  // Within each degeneracy group of `current` the eigenvectors are only
  // defined up to rotation; project the previous vectors onto the group
  // eigenspace and re-orthonormalize to get comparable representatives.
  RMatrix cur = current.eigenvectors;
  for (const auto& group : current.degeneracy_groups) {
    if (group.size() < 2) continue;
    RMatrix span(k, group.size());
    for (std::size_t c = 0; c < group.size(); ++c) span.col(static_cast<Index>(c)) = cur.col(group[c]);

    // Candidates: previous vectors with the largest projection onto the span.
    std::vector<std::pair<double, int>> ranked;
    for (int r = 0; r < k; ++r) {
      const RVector proj = span * (span.transpose() * previous.eigenvectors.col(r));
      ranked.emplace_back(proj.norm(), r);
    }
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    RMatrix rotated(k, group.size());
    Index filled = 0;
    for (const auto& [score, r] : ranked) {
      if (filled == static_cast<Index>(group.size())) break;
      if (score < 1e-8) break;
      RVector cand = span * (span.transpose() * previous.eigenvectors.col(r));
      for (Index c = 0; c < filled; ++c) cand -= rotated.col(c).dot(cand) * rotated.col(c);
      const double norm = cand.norm();
      if (norm < 1e-8) continue;
      rotated.col(filled++) = cand / norm;
    }
    // Complete with directions orthogonal to what was matched.
    for (std::size_t c = 0; c < group.size() && filled < static_cast<Index>(group.size()); ++c) {
      RVector cand = span.col(static_cast<Index>(c));
      for (Index f = 0; f < filled; ++f) cand -= rotated.col(f).dot(cand) * rotated.col(f);
      const double norm = cand.norm();
      if (norm < 1e-8) continue;
      rotated.col(filled++) = cand / norm;
    }
    for (std::size_t c = 0; c < group.size(); ++c) cur.col(group[c]) = rotated.col(static_cast<Index>(c));
  }

  const RMatrix overlap = previous.eigenvectors.transpose() * cur;

  TrackAlignment out;
  out.permutation.assign(static_cast<std::size_t>(k), -1);
  out.overlaps.assign(static_cast<std::size_t>(k), 0.0);
  out.signs.assign(static_cast<std::size_t>(k), 1);
  std::vector<bool> row_used(static_cast<std::size_t>(k), false), col_used(static_cast<std::size_t>(k), false);

  for (int step = 0; step < k; ++step) {
    double best = -1.0;
    int bi = -1, bj = -1;
    for (int i = 0; i < k; ++i) {
      if (row_used[static_cast<std::size_t>(i)]) continue;
      for (int j = 0; j < k; ++j) {
        if (col_used[static_cast<std::size_t>(j)]) continue;
        if (std::abs(overlap(i, j)) > best) {
          best = std::abs(overlap(i, j));
          bi = i;
          bj = j;
        }
      }
    }
    row_used[static_cast<std::size_t>(bi)] = true;
    col_used[static_cast<std::size_t>(bj)] = true;
    out.permutation[static_cast<std::size_t>(bi)] = bj;
    out.overlaps[static_cast<std::size_t>(bi)] = best;
    out.signs[static_cast<std::size_t>(bi)] = overlap(bi, bj) >= 0.0 ? 1 : -1;
  }

  out.aligned_eigenvalues.resize(k);
  for (int i = 0; i < k; ++i) {
    out.aligned_eigenvalues[i] = current.eigenvalues[out.permutation[static_cast<std::size_t>(i)]];
  }
  return out;
}

}  // namespace qfim
