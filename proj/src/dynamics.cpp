#include "qfim/dynamics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>

#include "qfim/su4.hpp"

namespace qfim {

namespace {

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

StateVector coherent_spin_state(const SpacePtr& space, double theta, double phi) {
  if (!space) throw ValidationError("coherent_spin_state requires a space");
  if (space->modes() != 2) throw ValidationError("coherent_spin_state requires a two-mode space");
  const int n_particles = space->particles();
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);

  CVector amp = CVector::Zero(space->dim());
  for (int k = 0; k <= n_particles; ++k) {
    // |c|,|s| can vanish; assemble in log magnitude to stay finite for all N
    const int m = n_particles - k;
    double magnitude = 0.0;
    if ((c != 0.0 || k == 0) && (s != 0.0 || m == 0)) {
      magnitude = std::exp(0.5 * log_binomial(n_particles, k)) * std::pow(c, k) * std::pow(s, m);
    }
    const Complex phase = std::exp(Complex(0.0, phi * m));
    amp[space->index_of({k, m})] = magnitude * phase;
  }
  amp.normalize();
  return StateVector(std::move(amp), space);
}

StateVector noon_state(const SpacePtr& space) {
  if (!space) throw ValidationError("noon_state requires a space");
  if (space->modes() != 2) throw ValidationError("noon_state requires a two-mode space");
  const int n_particles = space->particles();
  CVector amp = CVector::Zero(space->dim());
  amp[space->index_of({n_particles, 0})] = 1.0 / std::sqrt(2.0);
  amp[space->index_of({0, n_particles})] = 1.0 / std::sqrt(2.0);
  return StateVector(std::move(amp), space);
}

StateVector su4_initial_state(const SpacePtr& space) {
  if (!space) throw ValidationError("su4_initial_state requires a space");
  if (space->modes() != 4) throw ValidationError("su4_initial_state requires a four-mode space");
  Su4Catalog catalog(space);
  const SparseCMatrix jy = catalog.sparse("Jy");

  CVector all_u = CVector::Zero(space->dim());
  all_u[space->index_of({space->particles(), 0, 0, 0})] = 1.0;

  CVector amp = apply_exponential(jy, Complex(0.0, -M_PI / std::sqrt(2.0)), all_u);
  amp.normalize();
  return StateVector(std::move(amp), space);
}

HermitianOperator build_hamiltonian(const HamiltonianSpec& spec, const SpacePtr& space) {
  if (!space) throw ValidationError("build_hamiltonian requires a space");
  switch (spec.kind) {
    case HamiltonianKind::Oat: {
      if (space->modes() != 2) throw ValidationError("OAT requires a two-mode space");
      // chi Jz^2 is diagonal in the occupation basis
      CMatrix h = CMatrix::Zero(space->dim(), space->dim());
      for (Index i = 0; i < space->dim(); ++i) {
        const OccupationState& occ = space->occupations(i);
        const double m = 0.5 * (occ[0] - occ[1]);
        h(i, i) = spec.chi * m * m;
      }
      return HermitianOperator(std::move(h), "H_OAT", space);
    }
    case HamiltonianKind::Tat: {
      if (space->modes() != 4) throw ValidationError("TAT requires a four-mode space");
      Su4Catalog catalog(space);
      const SparseCMatrix e_up = catalog.raising("E");
      const SparseCMatrix e_dn = e_up.adjoint();
      SparseCMatrix h = (Complex(2.0 * spec.chi, 0.0) * SparseCMatrix(e_up * e_dn)).pruned();

      // Internal consistency: 2 chi E+E- == 2 chi (E^2 - Ez^2 + Ez) with
      // Ez = [E+,E-]/2 and E^2 = Ex^2 + Ey^2 + Ez^2. Holds identically; a
      // violation signals broken operator assembly.
      const SparseCMatrix ex = ((e_up + e_dn) * Complex(0.5, 0.0)).eval();
      const SparseCMatrix ey = ((e_up - e_dn) * Complex(0.0, -0.5)).eval();
      const SparseCMatrix ez = ((SparseCMatrix(e_up * e_dn) - SparseCMatrix(e_dn * e_up)) * Complex(0.5, 0.0)).eval();
      SparseCMatrix alt = (Complex(2.0 * spec.chi, 0.0) *
                           (SparseCMatrix(ex * ex) + SparseCMatrix(ey * ey) + ez))
                              .pruned();
      const double dev = SparseCMatrix(h - alt).norm();
      if (dev > 1e-10 * std::max(1.0, h.norm())) {
        std::ostringstream msg;
        msg << "TAT Hamiltonian forms disagree by " << dev;
        throw NumericalError(msg.str());
      }
      return HermitianOperator(CMatrix(h), "H_TAT", space);
    }
    case HamiltonianKind::Custom: {
      if (!spec.custom_matrix) throw ValidationError("custom Hamiltonian requires a matrix");
      return HermitianOperator(*spec.custom_matrix, "H_custom", space);
    }
  }
  throw ValidationError("unknown Hamiltonian kind");
}

EvolutionResult evolve(const HermitianOperator& h, const StateVector& psi0,
                       const std::vector<double>& times) {
  require_compatible(h.space(), psi0.space(), "evolve");
  if (times.empty()) throw ValidationError("evolve: empty time grid");
  if (times.front() != 0.0) throw ValidationError("evolve: time grid must start at 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (times[k] < times[k - 1]) throw ValidationError("evolve: times must be sorted ascending");
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "evolve: eigendecomposition of '" << h.label() << "' failed (dim " << h.dim()
        << ", frobenius norm " << h.matrix().norm() << ", max |diag| "
        << h.matrix().diagonal().cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  }
  const RVector& lam = solver.eigenvalues();
  const CMatrix& v = solver.eigenvectors();
  const CVector coeffs = v.adjoint() * psi0.amplitudes();

  EvolutionResult result;
  result.times = times;
  result.states.reserve(times.size());
  for (double t : times) {
    if (t == 0.0) {
      result.states.push_back(psi0);
      continue;
    }
    CVector phased(coeffs.size());
    for (Index k = 0; k < coeffs.size(); ++k) {
      phased[k] = coeffs[k] * std::exp(Complex(0.0, -lam[k] * t));
    }
    CVector amp = v * phased;
    const double norm = amp.norm();
    if (std::abs(norm - 1.0) > 1e-10) {
      throw NumericalError("evolve: norm drift exceeded 1e-10");
    }
    amp /= norm;
    result.states.emplace_back(std::move(amp), psi0.space());
  }
  return result;
}

StateVector apply_rotation(const SparseCMatrix& generator, double angle, const StateVector& psi) {
  if (generator.rows() != psi.dim()) throw ValidationError("apply_rotation: size mismatch");
  CVector amp = apply_exponential(generator, Complex(0.0, -angle), psi.amplitudes());
  amp.normalize();
  return StateVector(std::move(amp), psi.space());
}

}  // namespace qfim
