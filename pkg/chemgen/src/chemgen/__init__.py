"""Molecular fixture generation: Gaussian integrals, RHF, active-space
reduction and Jordan-Wigner export to the qubit-Hamiltonian interchange
format."""

from .export import ExportResult, export, solve_molecule
from .molecules import FIXTURES, MoleculeSpec, h2o_631gd, h4_chain, n2_cas66

__all__ = [
    "ExportResult",
    "FIXTURES",
    "MoleculeSpec",
    "export",
    "h2o_631gd",
    "h4_chain",
    "n2_cas66",
    "solve_molecule",
]
