"""Quantum Fisher information diagnostics for symmetric SU(n) probe states.

The heavy lifting lives in the compiled extension; this package re-exports
its surface. Matrices and state vectors cross the boundary as numpy arrays.
"""

from ._core import (
    LieBasis,
    NumericalError,
    ResourceError,
    Su4Catalog,
    SymmetricSpace,
    ValidationError,
    build_hamiltonian,
    build_lie_basis,
    coherent_spin_state,
    decompose_operator,
    diagonalize,
    enumerate_space,
    evolve,
    find_commuting_sets,
    noon_state,
    oat_analytic_angle,
    oat_analytic_qfi,
    pseudoinverse,
    qfi_along,
    qfim_mixed,
    qfim_pure,
    qgt,
    run_scenario,
    solve_connection,
    spectra_match,
    su4_initial_state,
    transition_operator,
    uhlmann_curvature,
)

__all__ = [
    "LieBasis",
    "NumericalError",
    "ResourceError",
    "Su4Catalog",
    "SymmetricSpace",
    "ValidationError",
    "build_hamiltonian",
    "build_lie_basis",
    "coherent_spin_state",
    "decompose_operator",
    "diagonalize",
    "enumerate_space",
    "evolve",
    "find_commuting_sets",
    "noon_state",
    "oat_analytic_angle",
    "oat_analytic_qfi",
    "pseudoinverse",
    "qfi_along",
    "qfim_mixed",
    "qfim_pure",
    "qgt",
    "run_scenario",
    "solve_connection",
    "spectra_match",
    "su4_initial_state",
    "transition_operator",
    "uhlmann_curvature",
]

__version__ = "0.1.0"
