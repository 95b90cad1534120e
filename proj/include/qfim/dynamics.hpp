#pragma once

#include <optional>
#include <vector>

#include "qfim/state.hpp"

namespace qfim {

enum class HamiltonianKind { Oat, Tat, Custom };

/// Squeezing Hamiltonian description. hbar = 1 throughout; chi has units of
/// inverse time, and all library times are expressed in units of 1/chi.
struct HamiltonianSpec {
  HamiltonianKind kind = HamiltonianKind::Oat;
  double chi = 1.0;
  std::optional<CMatrix> custom_matrix;  ///< required for Custom
};

/// Coherent spin state |theta, phi> for two modes: amplitude on (k, N-k) is
/// sqrt(binom(N,k)) cos(theta/2)^k (sin(theta/2) e^{i phi})^{N-k}.
StateVector coherent_spin_state(const SpacePtr& space, double theta, double phi);

/// (|N,0> + |0,N>)/sqrt(2) for two modes.
StateVector noon_state(const SpacePtr& space);

/// Four-mode probe state exp(-i Jy pi/sqrt(2)) |N,0,0,0>, computed by
/// applying the matrix exponential of the collective Jy to the all-u state.
/// Simultaneous eigenstate of Jx and Kz with eigenvalue N/(2 sqrt(2)).
StateVector su4_initial_state(const SpacePtr& space);

/// OAT: chi Jz^2 (two modes). TAT: chi (Q+ + Sig+)(Q- + Sig-) = 2 chi E+E-
/// (four modes); construction cross-checks the product form against
/// 2 chi (E^2 - Ez^2 + Ez) with Ez = [E+,E-]/2 to 1e-10.
HermitianOperator build_hamiltonian(const HamiltonianSpec& spec, const SpacePtr& space);

struct EvolutionResult {
  std::vector<double> times;
  std::vector<StateVector> states;
};

/// exp(-i H t_k) psi0 for each grid time, sharing one Hermitian
/// eigendecomposition of H. Times must be sorted ascending and start at 0.
EvolutionResult evolve(const HermitianOperator& h, const StateVector& psi0,
                       const std::vector<double>& times);

/// exp(-i angle G) |psi> without forming the dense exponential.
StateVector apply_rotation(const SparseCMatrix& generator, double angle, const StateVector& psi);

}  // namespace qfim
