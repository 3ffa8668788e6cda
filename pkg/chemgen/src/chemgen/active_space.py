"""MO transformation and active-space (frozen-core / CAS) reduction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class ActiveHamiltonian:
    """Spatial-orbital integrals of the active space, chemist notation."""

    n_orbitals: int
    n_electrons: int
    core_energy: float       # nuclear repulsion + frozen-core contribution
    one_body: np.ndarray     # h'_pq over active MOs
    two_body: np.ndarray     # (pq|rs) over active MOs


def mo_transform(h_ao: np.ndarray, eri_ao: np.ndarray, c: np.ndarray):
    h_mo = c.T @ h_ao @ c
    eri_mo = np.einsum("pi,qj,rk,sl,pqrs->ijkl", c, c, c, c, eri_ao, optimize=True)
    return h_mo, eri_mo


def build_active_hamiltonian(
    h_mo: np.ndarray,
    eri_mo: np.ndarray,
    e_nuc: float,
    n_electrons: int,
    core_orbitals: list[int],
    active_orbitals: list[int],
) -> ActiveHamiltonian:
    """Fold doubly-occupied core orbitals into an effective one-body term
    and a constant; slice the active block."""
    core = list(core_orbitals)
    act = list(active_orbitals)
    if set(core) & set(act):
        raise ValueError("core and active orbitals overlap")
    n_active_electrons = n_electrons - 2 * len(core)
    if n_active_electrons < 0:
        raise ValueError("more core electrons than electrons")
    e_core = e_nuc
    for c1 in core:
        e_core += 2.0 * h_mo[c1, c1]
        for c2 in core:
            e_core += 2.0 * eri_mo[c1, c1, c2, c2] - eri_mo[c1, c2, c2, c1]
    h_eff = h_mo[np.ix_(act, act)].copy()
    for i, p in enumerate(act):
        for j, q in enumerate(act):
            for c1 in core:
                h_eff[i, j] += 2.0 * eri_mo[p, q, c1, c1] - eri_mo[p, c1, c1, q]
    two = eri_mo[np.ix_(act, act, act, act)].copy()
    return ActiveHamiltonian(
        n_orbitals=len(act),
        n_electrons=n_active_electrons,
        core_energy=float(e_core),
        one_body=h_eff,
        two_body=two,
    )


def cas_orbital_split(n_occupied: int, n_mo: int, n_active_electrons: int, n_active_orbitals: int):
    """Core/active lists for a CAS window around the Fermi level: the
    n_active_electrons/2 highest occupied and the remaining lowest virtual
    MOs (by energy order)."""
    if n_active_electrons % 2:
        raise ValueError("active electron count must be even for an RHF reference")
    act_occ = n_active_electrons // 2
    if act_occ > n_occupied:
        raise ValueError("active space has more occupied orbitals than the RHF state")
    act_virt = n_active_orbitals - act_occ
    if n_occupied + act_virt > n_mo:
        raise ValueError("active space exceeds the MO count")
    core = list(range(n_occupied - act_occ))
    active = list(range(n_occupied - act_occ, n_occupied + act_virt))
    return core, active
