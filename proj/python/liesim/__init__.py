"""Lie-algebraic simulation of polynomial-DLA quantum circuits.

Thin wrapper over the C++ core: symmetry-adapted operator bases (Pauli
strings, cycles, orbits, MGGM sector elements), their bracket primitives,
Lie closure / structure constants, and adjoint-space expectation values and
gradients.
"""

from ._liesim import (
    Engine,
    cycle_bracket,
    cycle_canonicalize,
    hw_algebra_dim,
    mggm_bracket,
    orbit_bracket_full,
    orbit_bracket_targeted,
    orbit_norm_sq,
    orbit_term_count,
    pauli_bracket,
    pauli_commute,
    pauli_weight,
    pi_algebra_dim,
    restrict_generator,
    sector_states,
    tfim_exact_energy,
)

__all__ = [
    "Engine",
    "cycle_bracket",
    "cycle_canonicalize",
    "hw_algebra_dim",
    "mggm_bracket",
    "orbit_bracket_full",
    "orbit_bracket_targeted",
    "orbit_norm_sq",
    "orbit_term_count",
    "pauli_bracket",
    "pauli_commute",
    "pauli_weight",
    "pi_algebra_dim",
    "restrict_generator",
    "sector_states",
    "tfim_exact_energy",
]
