"""Molecular fixture definitions."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from scipy.constants import value as _codata

ANGSTROM_TO_BOHR = 1e-10 / _codata("Bohr radius")


@dataclass
class MoleculeSpec:
    name: str
    geometry: list[tuple[str, tuple[float, float, float]]]  # element, xyz in Angstrom
    basis: str
    n_active_electrons: int | None = None   # None: no reduction
    n_active_orbitals: int | None = None
    frozen_orbitals: list[int] = field(default_factory=list)
    charge: int = 0
    multiplicity: int = 1

    def __post_init__(self):
        if self.charge != 0 or self.multiplicity != 1:
            raise ValueError("only neutral closed-shell systems are supported")
        if (self.n_active_electrons is None) != (self.n_active_orbitals is None):
            raise ValueError("active space needs both electron and orbital counts")
        if self.n_active_electrons is not None and self.frozen_orbitals:
            raise ValueError("give either a CAS window or a frozen-orbital list")


def h4_chain(spacing: float = 1.5) -> MoleculeSpec:
    """Equidistant linear H4 chain in the minimal basis, no reduction."""
    return MoleculeSpec(
        name=f"h4_sto3g_r{spacing:g}",
        geometry=[("H", (0.0, 0.0, spacing * k)) for k in range(4)],
        basis="sto-3g",
    )


def n2_cas66(bond: float = 1.5) -> MoleculeSpec:
    """N2 with a (6e, 6o) valence CAS in cc-pVDZ."""
    return MoleculeSpec(
        name=f"n2_ccpvdz_cas66_r{bond:g}",
        geometry=[("N", (0.0, 0.0, 0.0)), ("N", (0.0, 0.0, bond))],
        basis="cc-pvdz",
        n_active_electrons=6,
        n_active_orbitals=6,
    )


def h2o_631gd(bond: float = 1.5, angle_deg: float = 107.60) -> MoleculeSpec:
    """Symmetric H2O in 6-31G(d) with the oxygen 1s orbital frozen."""
    half = math.radians(angle_deg) / 2.0
    return MoleculeSpec(
        name=f"h2o_631gd_fc_r{bond:g}",
        geometry=[
            ("O", (0.0, 0.0, 0.0)),
            ("H", (bond * math.sin(half), 0.0, bond * math.cos(half))),
            ("H", (-bond * math.sin(half), 0.0, bond * math.cos(half))),
        ],
        basis="6-31g(d)",
        frozen_orbitals=[0],
    )


FIXTURES = {
    "h4": h4_chain,
    "n2": n2_cas66,
    "h2o": h2o_631gd,
}
