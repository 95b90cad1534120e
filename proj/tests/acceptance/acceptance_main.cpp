// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Desk scale: N = 20, dims 21 and 1771.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <vector>

#include "../oracles.hpp"
#include "qfim/connection.hpp"
#include "qfim/dynamics.hpp"
#include "qfim/multiparam.hpp"
#include "qfim/qfim.hpp"
#include "qfim/scenario.hpp"
#include "qfim/su4.hpp"

using namespace qfim;

namespace {

// Frozen regression value for the TAT grid peak (criterion 5), recorded from
// the first verified run of this suite on the 401-point grid over [0, pi/2].
// Negative means "not yet frozen": the suite then prints the measured value.
constexpr double kTatGridPeakRegression = 146.448316443;
constexpr double kTatGridPeakRegressionTol = 1e-9;  // relative

struct Criterion {
  int id;
  std::string name;
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) {
      pass = false;
      detail = why;
    }
  }
};

std::vector<Criterion> g_results;

void report(Criterion c) {
  std::printf("%s criterion %2d: %s%s%s\n", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(),
              c.detail.empty() ? "" : " -- ", c.detail.c_str());
  std::fflush(stdout);
  g_results.push_back(std::move(c));
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(12);
  out << x;
  return out.str();
}

// ---------------------------------------------------------------------------
// Shared OAT fixture (n=2, N=20)
struct OatFixture {
  int particles = 20;
  SpacePtr space;
  LieBasis basis;
  StateVector css;
  std::vector<double> times;
  std::vector<StateVector> states;

  OatFixture()
      : space(SymmetricSpace::create(2, particles)),
        basis(build_lie_basis(space)),
        css(coherent_spin_state(space, M_PI / 2.0, 0.0)) {
    const double sqrt_n = std::sqrt(static_cast<double>(particles));
    std::vector<double> grid;
    for (int k = 0; k <= 100; ++k) grid.push_back(k / (100.0 * sqrt_n));  // criterion 1
    for (int k = 0; k <= 48; ++k) {
      grid.push_back((0.01 + k * (0.49 / 48.0)) / sqrt_n);  // criterion 3 window
    }
    grid.push_back(M_PI / 2.0);  // criterion 2
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    times = grid;
    const HermitianOperator h = build_hamiltonian({HamiltonianKind::Oat, 1.0, {}}, space);
    states = evolve(h, css, times).states;
  }

  const StateVector& at(double t) const {
    const auto it = std::lower_bound(times.begin(), times.end(), t - 1e-15);
    return states[static_cast<std::size_t>(it - times.begin())];
  }
};

// Shared TAT fixture (n=4, N=20)
struct TatFixture {
  int particles = 20;
  SpacePtr space;
  LieBasis basis;
  StateVector psi0;
  std::vector<double> times;
  std::vector<StateVector> states;
  std::size_t quarter_pi_index = 0;

  TatFixture()
      : space(SymmetricSpace::create(4, particles)),
        basis(build_lie_basis(space)),
        psi0(su4_initial_state(space)) {
    for (int k = 0; k <= 400; ++k) times.push_back(M_PI / 2.0 * k / 400.0);  // criterion 5 grid
    times.push_back(M_PI / 4.0);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    quarter_pi_index = static_cast<std::size_t>(
        std::lower_bound(times.begin(), times.end(), M_PI / 4.0 - 1e-15) - times.begin());
    const HermitianOperator h = build_hamiltonian({HamiltonianKind::Tat, 1.0, {}}, space);
    states = evolve(h, psi0, times).states;
  }
};

// ---------------------------------------------------------------------------

void criterion_1_oat_analytic(const OatFixture& oat) {
  Criterion c{1, "OAT analytic agreement on [0, 1/(chi sqrt(N))]"};
  const double sqrt_n = std::sqrt(20.0);
  double worst = 0.0;
  for (int k = 0; k <= 100; ++k) {
    const double t = k / (100.0 * sqrt_n);
    const QfimEigen eig = diagonalize(qfim_pure(oat.at(t), oat.basis));
    const double analytic = oat_analytic_qfi(20, 1.0, t);
    worst = std::max(worst, std::abs(eig.eigenvalues[0] - analytic) / analytic);
  }
  c.require(worst <= 1e-8, "max relative error " + fmt(worst));
  if (c.pass) c.detail = "max relative error " + fmt(worst);
  report(std::move(c));
}

void criterion_2_oat_boundaries(const OatFixture& oat) {
  Criterion c{2, "OAT boundary spectra (N,N,0) and (N^2,N,N)"};
  const QfimEigen start = diagonalize(qfim_pure(oat.at(0.0), oat.basis));
  c.require(std::abs(start.eigenvalues[0] - 20.0) <= 1e-8 &&
                std::abs(start.eigenvalues[1] - 20.0) <= 1e-8 &&
                std::abs(start.eigenvalues[2]) <= 1e-8,
            "t=0 spectrum (" + fmt(start.eigenvalues[0]) + ", " + fmt(start.eigenvalues[1]) + ", " +
                fmt(start.eigenvalues[2]) + ")");
  const QfimEigen end = diagonalize(qfim_pure(oat.at(M_PI / 2.0), oat.basis));
  const double expected[3] = {400.0, 20.0, 20.0};
  for (int r = 0; r < 3; ++r) {
    c.require(std::abs(end.eigenvalues[r] - expected[r]) <= 1e-6 * expected[r],
              "t=pi/2 rank " + std::to_string(r + 1) + " is " + fmt(end.eigenvalues[r]));
  }
  report(std::move(c));
}

void criterion_3_oat_angle(const OatFixture& oat) {
  Criterion c{3, "OAT optimal axis angle arctan(B/A)/2 in the Jy-Jz plane"};
  const double sqrt_n = std::sqrt(20.0);
  double worst_coeff = 0.0, worst_angle = 0.0;
  for (int k = 0; k <= 48; ++k) {
    const double t = (0.01 + k * (0.49 / 48.0)) / sqrt_n;
    const QfimEigen eig = diagonalize(qfim_pure(oat.at(t), oat.basis));
    const RVector lead = eig.eigenvectors.col(0);
    worst_coeff = std::max(worst_coeff, std::abs(lead[0]));
    const double angle = std::atan2(lead[2], lead[1]);
    worst_angle = std::max(worst_angle, std::abs(angle - oat_analytic_angle(20, 1.0, t)));
  }
  c.require(worst_coeff < 1e-6, "max |Jx coefficient| " + fmt(worst_coeff));
  c.require(worst_angle <= 1e-6, "max angle error " + fmt(worst_angle));
  if (c.pass) c.detail = "max angle error " + fmt(worst_angle);
  report(std::move(c));
}

void criterion_4_tat_degeneracy(const TatFixture& tat, const QfimEigen& eig0) {
  Criterion c{4, "TAT t=0: six-fold SQL degeneracy, rest below 1e-8 N^2"};
  for (int r = 0; r < 6; ++r) {
    c.require(std::abs(eig0.eigenvalues[r] - 20.0) <= 1e-8,
              "rank " + std::to_string(r + 1) + " is " + fmt(eig0.eigenvalues[r]));
  }
  for (int r = 6; r < 15; ++r) {
    c.require(std::abs(eig0.eigenvalues[r]) < 1e-8 * 400.0,
              "rank " + std::to_string(r + 1) + " is " + fmt(eig0.eigenvalues[r]));
  }
  c.require(!eig0.degeneracy_groups.empty() && eig0.degeneracy_groups[0].size() == 6,
            "leading degeneracy group has size " +
                std::to_string(eig0.degeneracy_groups.empty() ? 0 : eig0.degeneracy_groups[0].size()));
  (void)tat;
  report(std::move(c));
}

void criterion_5_tat_peak(const TatFixture& tat, const std::vector<double>& lambda_max) {
  Criterion c{5, "TAT peak ~146 near t = 1/(chi sqrt(N))"};
  double peak = 0.0;
  double peak_time = 0.0;
  for (std::size_t k = 0; k < tat.times.size(); ++k) {
    if (lambda_max[k] > peak) {
      peak = lambda_max[k];
      peak_time = tat.times[k];
    }
  }
  const double sqrt_n = std::sqrt(20.0);
  c.require(std::abs(peak - 146.0) <= 0.02 * 146.0, "grid peak " + fmt(peak));
  c.require(peak_time >= 0.5 / sqrt_n && peak_time <= 1.5 / sqrt_n,
            "peak time " + fmt(peak_time) + " outside [0.5, 1.5]/sqrt(N)");
  if (kTatGridPeakRegression > 0.0) {
    c.require(std::abs(peak - kTatGridPeakRegression) <= kTatGridPeakRegressionTol * kTatGridPeakRegression,
              "regression drift: grid peak " + fmt(peak) + " vs frozen " + fmt(kTatGridPeakRegression));
  }
  if (c.pass) {
    c.detail = "grid peak " + fmt(peak) + " at t = " + fmt(peak_time);
    if (kTatGridPeakRegression < 0.0) c.detail += " (freeze this value)";
  }
  report(std::move(c));
}

void criterion_6_tat_multiparameter(const TatFixture& tat, const QfimEigen& eig_quarter) {
  Criterion c{6, "TAT t=pi/4: ranks 1,3,8 values, commuting set, uhlmann"};
  const double nn = 400.0;
  const double expected[3] = {0.307 * nn, 0.189 * nn, 0.117 * nn};
  const int ranks[3] = {1, 3, 8};
  for (int k = 0; k < 3; ++k) {
    const double value = eig_quarter.eigenvalues[ranks[k] - 1];
    c.require(std::abs(value - expected[k]) <= 0.005 * expected[k],
              "rank " + std::to_string(ranks[k]) + " is " + fmt(value) + ", expected " + fmt(expected[k]));
  }

  CommutingSetOptions opts;  // min_qfi defaults to N
  const auto sets = find_commuting_sets(eig_quarter, tat.basis, opts);
  const CommutingSet* hit = nullptr;
  for (const auto& set : sets) {
    const auto has = [&](int r) {
      return std::find(set.member_ranks.begin(), set.member_ranks.end(), r) != set.member_ranks.end();
    };
    if (has(1) && has(3) && has(8)) {
      hit = &set;
      break;
    }
  }
  c.require(hit != nullptr, "no commuting set containing ranks {1,3,8} found");
  if (hit) {
    c.require(hit->max_pairwise_commutator < 1e-8,
              "commutator diagnostic " + fmt(hit->max_pairwise_commutator));
    const UhlmannMatrix u =
        uhlmann_curvature(tat.states[tat.quarter_pi_index], hit->materialize(tat.basis));
    const double umax = u.matrix.cwiseAbs().maxCoeff();
    c.require(umax < 1e-6 * eig_quarter.eigenvalues[0], "uhlmann max entry " + fmt(umax));
    if (c.pass) c.detail = "set members span ranks, uhlmann max " + fmt(umax);
  }
  report(std::move(c));
}

void criterion_7_physical_directions(const TatFixture& tat, const QfimEigen& eig_quarter) {
  Criterion c{7, "TAT t=pi/4: QFIs along (Mx+My)/sqrt2, Kz, rank-8 generator"};
  const StateVector& psi = tat.states[tat.quarter_pi_index];
  const double nn = 400.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  RVector dir_m = RVector::Zero(15);
  dir_m[tat.basis.label_index("Mx")] = inv_sqrt2;
  dir_m[tat.basis.label_index("My")] = inv_sqrt2;
  const double qfi_m = qfi_along(psi, dir_m, tat.basis);
  c.require(std::abs(qfi_m - 0.300 * nn) <= 0.005 * 0.300 * nn, "(Mx+My)/sqrt2 gives " + fmt(qfi_m));

  RVector dir_k = RVector::Zero(15);  // Kz = (Qz - Sigz)/sqrt(2)
  dir_k[tat.basis.label_index("Qz")] = inv_sqrt2;
  dir_k[tat.basis.label_index("Sigz")] = -inv_sqrt2;
  const double qfi_k = qfi_along(psi, dir_k, tat.basis);
  c.require(std::abs(qfi_k - 0.195 * nn) <= 0.005 * 0.195 * nn, "Kz gives " + fmt(qfi_k));

  const double qfi_8 = qfi_along(psi, eig_quarter.eigenvectors.col(7), tat.basis);
  c.require(std::abs(qfi_8 - 0.117 * nn) <= 0.005 * 0.117 * nn, "rank-8 generator gives " + fmt(qfi_8));
  if (c.pass) {
    c.detail = fmt(qfi_m / nn) + " N^2, " + fmt(qfi_k / nn) + " N^2, " + fmt(qfi_8 / nn) + " N^2";
  }
  report(std::move(c));
}

void criterion_8_basis_properties() {
  Criterion c{8, "basis property suite over n in {2..5}, N in {1..8}"};
  std::printf("  killing-norm table: (n, N) -> numeric C | closed form | agrees\n");
  std::string spectrum_offenders;
  for (int n = 2; n <= 5; ++n) {
    for (int N = 1; N <= 8; ++N) {
      const LieBasis basis = build_lie_basis(SymmetricSpace::create(n, N));
      c.require(basis.size() == n * n - 1, "generator count");
      const double dim = static_cast<double>(basis.space()->dim());
      RMatrix gram(basis.size(), basis.size());
      for (int a = 0; a < basis.size(); ++a) {
        c.require(std::abs(basis.generator(a).trace()) < 1e-10 * dim,
                  "trace of " + basis.generator(a).label());
        for (int b = 0; b < basis.size(); ++b) {
          gram(a, b) =
              (basis.generator(a).matrix().adjoint() * basis.generator(b).matrix()).trace().real();
        }
      }
      const RMatrix target = basis.norm_c() * RMatrix::Identity(basis.size(), basis.size());
      const double gram_err = (gram - target).norm() / gram.norm();
      c.require(gram_err <= 1e-10, "gram deviation " + fmt(gram_err) + " at n=" + std::to_string(n) +
                                       ", N=" + std::to_string(N));

      // spectrum comparison against A^z_12
      const int ref = basis.label_index(n == 2 ? "Jz" : (n == 4 ? "Qz" : "Az_1_2"));
      Eigen::SelfAdjointEigenSolver<CMatrix> ref_solver(basis.generator(ref).matrix(),
                                                        Eigen::EigenvaluesOnly);
      for (int a = 0; a < basis.size(); ++a) {
        Eigen::SelfAdjointEigenSolver<CMatrix> solver(basis.generator(a).matrix(),
                                                      Eigen::EigenvaluesOnly);
        const double dev = (solver.eigenvalues() - ref_solver.eigenvalues()).cwiseAbs().maxCoeff();
        if (dev > 1e-9) {
          c.require(false, "spectrum of " + basis.generator(a).label() + " deviates by " + fmt(dev) +
                               " at n=" + std::to_string(n) + ", N=" + std::to_string(N));
          if (spectrum_offenders.find(basis.generator(a).label()) == std::string::npos) {
            spectrum_offenders += basis.generator(a).label() + " ";
          }
        }
      }

      const double closed = basis.killing_norm_closed_form();
      const bool agrees = std::abs(basis.norm_c() - closed) <= 1e-9 * closed;
      std::printf("    (%d, %d) -> %.10g | %.10g | %s\n", n, N, basis.norm_c(), closed,
                  agrees ? "yes" : "no");
    }
  }
  if (!spectrum_offenders.empty()) {
    std::printf(
        "  note: the same-spectrum property holds for all su(2) pair components but not for the\n"
        "  normalized diagonal sums (%s); equal trace norm does not force equal spectra there.\n",
        spectrum_offenders.c_str());
  }
  report(std::move(c));
}

void criterion_9_geometry_consistency() {
  Criterion c{9, "qfim_pure equals 4 Re(qgt) on random states"};
  std::mt19937_64 rng(4242);
  double worst = 0.0;
  for (auto [n, N] : {std::pair{2, 6}, {4, 4}}) {
    auto space = SymmetricSpace::create(n, N);
    const LieBasis basis = build_lie_basis(space);
    for (int trial = 0; trial < 50; ++trial) {
      const StateVector psi(oracles::random_state(space->dim(), rng), space);
      const Qfim f = qfim_pure(psi, basis);
      const QuantumGeometricTensor q = qgt(psi, basis);
      worst = std::max(worst, (f.matrix - 4.0 * q.real_part()).cwiseAbs().maxCoeff());
    }
  }
  c.require(worst <= 1e-9, "max elementwise deviation " + fmt(worst));
  if (c.pass) c.detail = "max elementwise deviation " + fmt(worst);
  report(std::move(c));
}

void criterion_10_connection_suite() {
  Criterion c{10, "connection suite: 100 su(2) pairs, penrose residuals, G=Z"};
  const int N = 6;
  auto space = SymmetricSpace::create(2, N);
  const LieBasis basis = build_lie_basis(space);
  std::mt19937_64 rng(9001);
  double worst_fidelity = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const RVector a = oracles::random_unit_vector(3, rng);
    const RVector b = oracles::random_unit_vector(3, rng);
    const ConnectionSolution sol =
        solve_connection(basis.materialize(a, "G"), basis.materialize(b, "Z"), basis);
    worst_fidelity = std::max(worst_fidelity, sol.connection_fidelity);
  }
  c.require(worst_fidelity < 1e-6, "worst fidelity " + fmt(worst_fidelity));

  // penrose conditions on random rectangular matrices
  std::normal_distribution<double> gauss;
  double worst_penrose = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    CMatrix m(5, 8);
    for (Index r = 0; r < 5; ++r) {
      for (Index col = 0; col < 8; ++col) m(r, col) = Complex(gauss(rng), gauss(rng));
    }
    const CMatrix mp = pseudoinverse(m);
    worst_penrose = std::max({worst_penrose, (m * mp * m - m).norm() / m.norm(),
                              (mp * m * mp - mp).norm() / mp.norm(),
                              ((m * mp) - (m * mp).adjoint()).norm(),
                              ((mp * m) - (mp * m).adjoint()).norm()});
  }
  c.require(worst_penrose < 1e-8, "worst penrose residual " + fmt(worst_penrose));

  const ConnectionSolution self = solve_connection(basis.generator(2), basis.generator(2), basis);
  c.require(self.sylvester_residual > 0.5 * basis.generator(2).frobenius_norm(),
            "G=Z sylvester residual " + fmt(self.sylvester_residual) + " not clearly nonzero");
  if (c.pass) {
    c.detail = "worst fidelity " + fmt(worst_fidelity) + ", worst penrose " + fmt(worst_penrose);
  }
  report(std::move(c));
}

void criterion_11_witness_calibration(const OatFixture& oat) {
  Criterion c{11, "witness calibration: CSS at SQL, NOON at HL, nothing above HL"};
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  double hl_ceiling = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = std::acos(1.0 - 2.0 * uni(rng));
    const double phi = 2.0 * M_PI * uni(rng);
    const QfimEigen eig =
        diagonalize(qfim_pure(coherent_spin_state(oat.space, theta, phi), oat.basis));
    c.require(std::abs(eig.eigenvalues[0] - 20.0) <= 1e-8 * 20.0,
              "CSS lambda_max " + fmt(eig.eigenvalues[0]));
    hl_ceiling = std::max(hl_ceiling, eig.eigenvalues[0]);
  }
  const QfimEigen noon = diagonalize(qfim_pure(noon_state(oat.space), oat.basis));
  c.require(std::abs(noon.eigenvalues[0] - 400.0) <= 1e-8 * 400.0,
            "NOON lambda_max " + fmt(noon.eigenvalues[0]));
  hl_ceiling = std::max(hl_ceiling, noon.eigenvalues[0]);
  for (int trial = 0; trial < 50; ++trial) {
    const StateVector psi(oracles::random_state(oat.space->dim(), rng), oat.space);
    hl_ceiling = std::max(hl_ceiling, diagonalize(qfim_pure(psi, oat.basis)).eigenvalues[0]);
  }
  c.require(hl_ceiling <= 400.0 * (1.0 + 1e-6), "a state exceeded the HL: " + fmt(hl_ceiling));
  report(std::move(c));
}

void criterion_12_oracle_equivalence() {
  Criterion c{12, "oracle equivalence: brute-force QFIM and Bures finite differences"};
  std::mt19937_64 rng(515151);
  double worst_pure = 0.0;
  for (int N = 1; N <= 3; ++N) {
    auto space = SymmetricSpace::create(2, N);
    const LieBasis basis = build_lie_basis(space);
    const auto spin = oracles::spin_matrices(N);
    const std::vector<CMatrix> ops = {spin.jx, spin.jy, spin.jz};
    for (int trial = 0; trial < 8; ++trial) {
      const CVector amp = oracles::random_state(space->dim(), rng);
      const RMatrix expected = oracles::bruteforce_qfim(amp, ops);
      const Qfim f = qfim_pure(StateVector(amp, space), basis);
      worst_pure = std::max(worst_pure, (f.matrix - expected).cwiseAbs().maxCoeff());
    }
  }
  c.require(worst_pure <= 1e-10, "pure oracle deviation " + fmt(worst_pure));

  const int N = 4;
  auto space = SymmetricSpace::create(2, N);
  const LieBasis basis = build_lie_basis(space);
  const StateVector css = coherent_spin_state(space, M_PI / 2.0, 0.0);
  const double eps = 0.01;
  const CMatrix rho =
      (1.0 - eps) * (css.amplitudes() * css.amplitudes().adjoint()) +
      eps * CMatrix::Identity(space->dim(), space->dim()) / static_cast<double>(space->dim());
  const Qfim f = qfim_mixed(DensityMatrix(rho, space), basis);
  std::vector<CMatrix> ops;
  for (const auto& g : basis.generators()) ops.push_back(g.matrix());
  const RMatrix fd = oracles::bures_fd_qfim(rho, ops, 0.02);
  const double mixed_dev = (f.matrix - fd).cwiseAbs().maxCoeff();
  c.require(mixed_dev <= 1e-5, "bures finite-difference deviation " + fmt(mixed_dev));
  if (c.pass) c.detail = "pure " + fmt(worst_pure) + ", mixed " + fmt(mixed_dev);
  report(std::move(c));
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  std::printf("acceptance suite: N = 20 desk scale\n");

  {
    OatFixture oat;
    criterion_1_oat_analytic(oat);
    criterion_2_oat_boundaries(oat);
    criterion_3_oat_angle(oat);
    criterion_11_witness_calibration(oat);
  }

  {
    TatFixture tat;
    std::vector<double> lambda_max(tat.times.size());
    std::vector<QfimEigen> eigens(tat.times.size());
    for (std::size_t k = 0; k < tat.times.size(); ++k) {
      eigens[k] = diagonalize(qfim_pure(tat.states[k], tat.basis));
      lambda_max[k] = eigens[k].eigenvalues[0];
    }
    criterion_4_tat_degeneracy(tat, eigens[0]);
    criterion_5_tat_peak(tat, lambda_max);
    criterion_6_tat_multiparameter(tat, eigens[tat.quarter_pi_index]);
    criterion_7_physical_directions(tat, eigens[tat.quarter_pi_index]);
  }

  criterion_8_basis_properties();
  criterion_9_geometry_consistency();
  criterion_10_connection_suite();
  criterion_12_oracle_equivalence();

  int failures = 0;
  for (const auto& c : g_results) failures += c.pass ? 0 : 1;
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", static_cast<int>(g_results.size()) - failures,
              g_results.size(), seconds);
  return failures == 0 ? 0 : 1;
}
