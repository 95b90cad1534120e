#include "qfim/multiparam.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

namespace qfim {

namespace {

double sparse_commutator_relative(const SparseCMatrix& a, const SparseCMatrix& b) {
  const SparseCMatrix comm = SparseCMatrix(a * b) - SparseCMatrix(b * a);
  const double denom = a.norm() * b.norm();
  if (denom == 0.0) return 0.0;
  return comm.norm() / denom;
}

/// Bron-Kerbosch with pivoting; fine for the <= n^2-1 vertices seen here.
void bron_kerbosch(std::vector<int>& r, std::set<int> p, std::set<int> x,
                   const std::vector<std::vector<bool>>& adj,
                   std::vector<std::vector<int>>& cliques) {
  if (p.empty() && x.empty()) {
    if (!r.empty()) cliques.push_back(r);
    return;
  }
  int pivot = -1;
  std::size_t best = 0;
  for (const auto& set : {p, x}) {
    for (int u : set) {
      std::size_t count = 0;
      for (int v : p) {
        if (adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]) ++count;
      }
      if (pivot < 0 || count > best) {
        pivot = u;
        best = count;
      }
    }
  }
  std::vector<int> candidates;
  for (int v : p) {
    if (pivot < 0 || !adj[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(v)]) {
      candidates.push_back(v);
    }
  }
  for (int v : candidates) {
    std::set<int> p2, x2;
    for (int w : p) {
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) p2.insert(w);
    }
    for (int w : x) {
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]) x2.insert(w);
    }
    r.push_back(v);
    bron_kerbosch(r, std::move(p2), std::move(x2), adj, cliques);
    r.pop_back();
    p.erase(v);
    x.insert(v);
  }
}

struct CandidateFrame {
  std::vector<int> ranks;             // 0-based eigen ranks
  std::vector<RVector> coefficients;  // possibly rotated within degenerate blocks
  bool rotated = false;
};

std::vector<CommutingSet> enumerate_sets(const CandidateFrame& frame, const QfimEigen& eig,
                                         const LieBasis& basis, double commute_tol, int cartan) {
  const int m = static_cast<int>(frame.ranks.size());
  std::vector<SparseCMatrix> ops(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    ops[static_cast<std::size_t>(i)] = basis.combination_sparse(frame.coefficients[static_cast<std::size_t>(i)]);
  }
  RMatrix comm_norms = RMatrix::Zero(m, m);
  std::vector<std::vector<bool>> adj(static_cast<std::size_t>(m), std::vector<bool>(static_cast<std::size_t>(m), false));
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double rel = sparse_commutator_relative(ops[static_cast<std::size_t>(i)], ops[static_cast<std::size_t>(j)]);
      comm_norms(i, j) = comm_norms(j, i) = rel;
      adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          rel <= commute_tol;
    }
  }

  std::vector<std::vector<int>> cliques;
  std::vector<int> r;
  std::set<int> p, x;
  for (int i = 0; i < m; ++i) p.insert(i);
  bron_kerbosch(r, std::move(p), std::move(x), adj, cliques);

  std::vector<CommutingSet> out;
  for (auto& clique : cliques) {
    std::sort(clique.begin(), clique.end());
    CommutingSet set;
    set.from_degenerate_rotation = frame.rotated;
    set.qfis.resize(static_cast<Index>(clique.size()));
    double worst = 0.0;
    for (std::size_t a = 0; a < clique.size(); ++a) {
      const int local = clique[a];
      const int rank = frame.ranks[static_cast<std::size_t>(local)];
      set.member_ranks.push_back(rank + 1);
      set.coefficients.push_back(frame.coefficients[static_cast<std::size_t>(local)]);
      set.qfis[static_cast<Index>(a)] = eig.eigenvalues[rank];
      for (std::size_t b = a + 1; b < clique.size(); ++b) {
        worst = std::max(worst, comm_norms(local, clique[b]));
      }
    }
    set.max_pairwise_commutator = worst;
    set.total_qfi = set.qfis.sum();
    set.exceeds_cartan = static_cast<int>(clique.size()) > cartan;
    out.push_back(std::move(set));
  }
  return out;
}

}  // namespace

CommuteResult commutes(const HermitianOperator& a, const HermitianOperator& b, double commute_tol) {
  require_compatible(a.space(), b.space(), "commutes");
  const CMatrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
  const double denom = a.frobenius_norm() * b.frobenius_norm();
  const double rel = denom == 0.0 ? 0.0 : comm.norm() / denom;
  return {rel <= commute_tol, rel};
}

std::vector<HermitianOperator> CommutingSet::materialize(const LieBasis& basis) const {
  std::vector<HermitianOperator> out;
  out.reserve(coefficients.size());
  for (std::size_t k = 0; k < coefficients.size(); ++k) {
    out.push_back(basis.materialize(coefficients[k], "G_rank_" + std::to_string(member_ranks[k])));
  }
  return out;
}

std::vector<CommutingSet> find_commuting_sets(const QfimEigen& eig, const LieBasis& basis,
                                              const CommutingSetOptions& options) {
  if (eig.size() != basis.size()) throw SpaceMismatchError("find_commuting_sets: basis size mismatch");
  const double min_qfi = options.min_qfi < 0.0 ? static_cast<double>(basis.particles()) : options.min_qfi;
  const int cartan = basis.modes() - 1;

  CandidateFrame base;
  for (int rankk = 0; rankk < eig.size(); ++rankk) {
    if (eig.eigenvalues[rankk] >= min_qfi) {
      base.ranks.push_back(rankk);
      base.coefficients.push_back(eig.eigenvectors.col(rankk));
    }
  }
  if (base.ranks.empty()) return {};

  // Keyed by member ranks; keep the variant with the smallest commutator.
  std::vector<CommutingSet> found = enumerate_sets(base, eig, basis, options.commute_tol, cartan);

  // One-parameter rotation sweep inside each 2-dim degeneracy group: the
  // reported generator pairs may be rotated combinations of the raw
  // eigenvectors (degenerate eigenspaces carry that freedom).
  for (const auto& group : eig.degeneracy_groups) {
    if (group.size() != 2) continue;
    const auto it0 = std::find(base.ranks.begin(), base.ranks.end(), group[0]);
    const auto it1 = std::find(base.ranks.begin(), base.ranks.end(), group[1]);
    if (it0 == base.ranks.end() || it1 == base.ranks.end()) continue;
    const std::size_t a = static_cast<std::size_t>(it0 - base.ranks.begin());
    const std::size_t b = static_cast<std::size_t>(it1 - base.ranks.begin());

    for (int s = 1; s < options.degenerate_sweep_samples; ++s) {
      const double theta = M_PI * s / options.degenerate_sweep_samples;
      CandidateFrame frame = base;
      frame.rotated = true;
      frame.coefficients[a] = std::cos(theta) * base.coefficients[a] + std::sin(theta) * base.coefficients[b];
      frame.coefficients[b] = -std::sin(theta) * base.coefficients[a] + std::cos(theta) * base.coefficients[b];
      for (auto& set : enumerate_sets(frame, eig, basis, options.commute_tol, cartan)) {
        found.push_back(std::move(set));
      }
    }
  }

  // Deduplicate by rank signature, keeping the best commutator diagnostic.
  std::sort(found.begin(), found.end(), [](const CommutingSet& u, const CommutingSet& v) {
    if (u.member_ranks != v.member_ranks) return u.member_ranks < v.member_ranks;
    return u.max_pairwise_commutator < v.max_pairwise_commutator;
  });
  std::vector<CommutingSet> unique;
  for (auto& set : found) {
    if (unique.empty() || unique.back().member_ranks != set.member_ranks) {
      unique.push_back(std::move(set));
    }
  }
  std::sort(unique.begin(), unique.end(),
            [](const CommutingSet& u, const CommutingSet& v) { return u.total_qfi > v.total_qfi; });
  return unique;
}

UhlmannMatrix uhlmann_curvature(const StateVector& psi,
                                const std::vector<HermitianOperator>& generators) {
  const int k = static_cast<int>(generators.size());
  // L_mu|psi> = -2i (G_mu - <G_mu>) |psi> for rho = |psi><psi|; the curvature
  // -i Tr[rho [L_mu, L_nu]]/2 reduces to Im <L_mu psi | L_nu psi>.
  std::vector<CVector> l_psi(static_cast<std::size_t>(k));
  for (int mu = 0; mu < k; ++mu) {
    require_compatible(psi.space(), generators[static_cast<std::size_t>(mu)].space(), "uhlmann_curvature");
    const CVector image = generators[static_cast<std::size_t>(mu)].matrix() * psi.amplitudes();
    const double mean = psi.amplitudes().dot(image).real();
    l_psi[static_cast<std::size_t>(mu)] = Complex(0.0, -2.0) * (image - mean * psi.amplitudes());
  }
  RMatrix u = RMatrix::Zero(k, k);
  for (int mu = 0; mu < k; ++mu) {
    for (int nu = mu + 1; nu < k; ++nu) {
      const Complex inner = l_psi[static_cast<std::size_t>(mu)].dot(l_psi[static_cast<std::size_t>(nu)]);
      u(mu, nu) = inner.imag();
      u(nu, mu) = -u(mu, nu);
    }
  }
  return {std::move(u)};
}

UhlmannMatrix uhlmann_curvature(const DensityMatrix& rho,
                                const std::vector<HermitianOperator>& generators,
                                double support_threshold) {
  const int k = static_cast<int>(generators.size());
  const Index dim = rho.dim();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("uhlmann_curvature: eigensolver failed");
  const RVector& p = solver.eigenvalues();
  const CMatrix& v = solver.eigenvectors();

  std::vector<CMatrix> slds(static_cast<std::size_t>(k));
  for (int mu = 0; mu < k; ++mu) {
    require_compatible(rho.space(), generators[static_cast<std::size_t>(mu)].space(), "uhlmann_curvature");
    const CMatrix g_eig = v.adjoint() * generators[static_cast<std::size_t>(mu)].matrix() * v;
    CMatrix l(dim, dim);
    for (Index j = 0; j < dim; ++j) {
      for (Index m = 0; m < dim; ++m) {
        const double psum = p[j] + p[m];
        l(j, m) = psum < support_threshold
                      ? Complex(0.0, 0.0)
                      : 2.0 * Complex(0.0, -1.0) * g_eig(j, m) * (p[m] - p[j]) / psum;
      }
    }
    slds[static_cast<std::size_t>(mu)] = std::move(l);
  }

  RMatrix u = RMatrix::Zero(k, k);
  for (int mu = 0; mu < k; ++mu) {
    for (int nu = mu + 1; nu < k; ++nu) {
      // -i Tr[rho [L_mu, L_nu]]/2 = Im Tr[diag(p) L_mu L_nu]
      const CMatrix prod = slds[static_cast<std::size_t>(mu)] * slds[static_cast<std::size_t>(nu)];
      Complex tr = 0.0;
      for (Index j = 0; j < dim; ++j) tr += p[j] * prod(j, j);
      u(mu, nu) = tr.imag();
      u(nu, mu) = -u(mu, nu);
    }
  }
  return {std::move(u)};
}

}  // namespace qfim
