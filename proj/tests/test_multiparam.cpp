#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qfim/dynamics.hpp"
#include "qfim/multiparam.hpp"
#include "qfim/su4.hpp"

using namespace qfim;

TEST_CASE("self-commutation and diagonal pairs") {
  const LieBasis basis = build_lie_basis(SymmetricSpace::create(2, 4));
  CHECK(commutes(basis.generator(2), basis.generator(2)).commute);

  Su4Catalog catalog(SymmetricSpace::create(4, 2));
  CHECK(commutes(catalog.get("Qz"), catalog.get("Sigz")).commute);
}

TEST_CASE("su(2) commutator diagnostic value") {
  // [Jx, Jy] = i Jz, so the relative norm is ||Jz|| / (||Jx|| ||Jy||) = 1/sqrt(C)
  for (int N : {1, 2, 5}) {
    const LieBasis basis = build_lie_basis(SymmetricSpace::create(2, N));
    const CommuteResult r = commutes(basis.generator(0), basis.generator(1));
    CHECK_FALSE(r.commute);
    CHECK(r.relative_norm == doctest::Approx(1.0 / std::sqrt(basis.norm_c())));
  }
}

TEST_CASE("cartan guarantee: diagonal generators form a commuting set of size n-1") {
  for (int n = 2; n <= 5; ++n) {
    CAPTURE(n);
    auto space = SymmetricSpace::create(n, 2);
    const LieBasis basis = build_lie_basis(space);
    std::vector<int> diagonal_indices;
    for (int mu = 0; mu < basis.size(); ++mu) {
      const CMatrix& m = basis.generator(mu).matrix();
      if ((m - CMatrix(m.diagonal().asDiagonal())).norm() < 1e-14) diagonal_indices.push_back(mu);
    }
    REQUIRE(static_cast<int>(diagonal_indices.size()) == n - 1);
    for (std::size_t a = 0; a < diagonal_indices.size(); ++a) {
      for (std::size_t b = a + 1; b < diagonal_indices.size(); ++b) {
        CHECK(commutes(basis.generator(diagonal_indices[a]), basis.generator(diagonal_indices[b])).commute);
      }
    }
  }
}

TEST_CASE("su(2) squeezing eigenvectors do not commute pairwise") {
  auto space = SymmetricSpace::create(2, 8);
  const LieBasis basis = build_lie_basis(space);
  const StateVector css = coherent_spin_state(space, M_PI / 2.0, 0.0);
  const HermitianOperator h = build_hamiltonian({HamiltonianKind::Oat, 1.0, {}}, space);
  const StateVector psi = evolve(h, css, {0.0, 0.21}).states.back();
  const QfimEigen eig = diagonalize(qfim_pure(psi, basis));

  CommutingSetOptions opts;
  opts.min_qfi = 0.5;  // everything nonzero qualifies
  const auto sets = find_commuting_sets(eig, basis, opts);
  REQUIRE_FALSE(sets.empty());
  for (const auto& set : sets) {
    CHECK(set.member_ranks.size() == 1);  // generic su(2) state: singletons only
  }
}

TEST_CASE("find_commuting_sets flags sets beyond the cartan dimension") {
  // At t=0 the su(4) probe state has a six-fold degenerate SQL block whose
  // members include larger mutually commuting families; they must be
  // reported but flagged.
  auto space = SymmetricSpace::create(4, 4);
  const LieBasis basis = build_lie_basis(space);
  const QfimEigen eig = diagonalize(qfim_pure(su4_initial_state(space), basis));
  CommutingSetOptions opts;
  opts.min_qfi = 1.0;
  const auto sets = find_commuting_sets(eig, basis, opts);
  REQUIRE_FALSE(sets.empty());
  for (const auto& set : sets) {
    const bool large = set.member_ranks.size() > 3;
    CHECK(set.exceeds_cartan == large);
    CHECK(set.max_pairwise_commutator <= opts.commute_tol);
  }
}

TEST_CASE("uhlmann curvature of identical generators vanishes") {
  auto space = SymmetricSpace::create(2, 3);
  const LieBasis basis = build_lie_basis(space);
  const StateVector css = coherent_spin_state(space, M_PI / 3.0, 0.4);
  const std::vector<HermitianOperator> gens = {basis.generator(2), basis.generator(2)};
  const UhlmannMatrix u = uhlmann_curvature(css, gens);
  CHECK(u.matrix.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("uhlmann curvature on a CSS along x, against the brute-force trace") {
  // Explicit 3x3 check of -i Tr[rho [L_a, L_b]]/2 with L = 2 drho. For this
  // state the (Jx, Jy) entry vanishes by parity (<Jz> = 0); the (Jy, Jz)
  // entry is the nonzero one, 4 Im Q_yz = 2 <Jx> = N.
  const int N = 2;
  auto space = SymmetricSpace::create(2, N);
  const LieBasis basis = build_lie_basis(space);
  const StateVector css = coherent_spin_state(space, M_PI / 2.0, 0.0);
  const std::vector<HermitianOperator> gens = {basis.generator(0), basis.generator(1),
                                               basis.generator(2)};
  const UhlmannMatrix u = uhlmann_curvature(css, gens);

  const CMatrix rho = css.amplitudes() * css.amplitudes().adjoint();
  std::vector<CMatrix> slds;
  for (const auto& g : gens) {
    const CMatrix drho = Complex(0.0, -1.0) * (g.matrix() * rho - rho * g.matrix());
    slds.push_back(2.0 * drho);
  }
  auto brute = [&](int a, int b) {
    const CMatrix comm = slds[static_cast<std::size_t>(a)] * slds[static_cast<std::size_t>(b)] -
                         slds[static_cast<std::size_t>(b)] * slds[static_cast<std::size_t>(a)];
    return (Complex(0.0, -0.5) * (rho * comm).trace()).real();
  };
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      CHECK(u.matrix(a, b) == doctest::Approx(brute(a, b)).epsilon(1e-10));
    }
  }
  CHECK(std::abs(u.matrix(0, 1)) < 1e-12);  // (Jx, Jy): zero by parity
  // (Jy, Jz): 4 Im Q_yz = 4 <Jx>/2 = N
  CHECK(u.matrix(1, 2) == doctest::Approx(static_cast<double>(N)));
  CHECK(u.matrix(2, 1) == doctest::Approx(-static_cast<double>(N)));
}

TEST_CASE("mixed-state uhlmann curvature matches the pure path on projectors") {
  auto space = SymmetricSpace::create(2, 3);
  const LieBasis basis = build_lie_basis(space);
  const StateVector css = coherent_spin_state(space, M_PI / 2.0, 0.7);
  const std::vector<HermitianOperator> gens = {basis.generator(0), basis.generator(1),
                                               basis.generator(2)};
  const UhlmannMatrix pure = uhlmann_curvature(css, gens);
  const UhlmannMatrix mixed = uhlmann_curvature(DensityMatrix::pure(css), gens);
  CHECK((pure.matrix - mixed.matrix).cwiseAbs().maxCoeff() < 1e-9);
  // antisymmetry
  CHECK((pure.matrix + pure.matrix.transpose()).norm() < 1e-10);
}

TEST_CASE("commuting sets have vanishing uhlmann curvature") {
  auto space = SymmetricSpace::create(4, 6);
  const LieBasis basis = build_lie_basis(space);
  const StateVector psi = su4_initial_state(space);
  const HermitianOperator h = build_hamiltonian({HamiltonianKind::Tat, 1.0, {}}, space);
  const StateVector evolved = evolve(h, psi, {0.0, M_PI / 4.0}).states.back();
  const QfimEigen eig = diagonalize(qfim_pure(evolved, basis));

  const auto sets = find_commuting_sets(eig, basis, {});
  REQUIRE_FALSE(sets.empty());
  const double lambda_max = eig.eigenvalues[0];
  for (const auto& set : sets) {
    if (set.member_ranks.size() < 2) continue;
    const UhlmannMatrix u = uhlmann_curvature(evolved, set.materialize(basis));
    CHECK(u.matrix.cwiseAbs().maxCoeff() <= 1e-6 * lambda_max);
  }
}
