"""Drive integrals -> RHF -> active space -> Jordan-Wigner -> interchange file."""

from __future__ import annotations

import gzip
import json
from dataclasses import dataclass

import numpy as np

from .active_space import build_active_hamiltonian, cas_orbital_split, mo_transform
from .basis import ATOMIC_NUMBERS, SPHERICAL_BASIS, build_functions, build_shells, cart_to_spherical
from .integrals import build_eri, build_matrices
from .jordan_wigner import jordan_wigner
from .molecules import ANGSTROM_TO_BOHR, MoleculeSpec
from .scf import (
    align_degenerate_orbitals,
    apply_spherical,
    find_rhf_ground,
    purify_orbital_classes,
)

PRUNE_EPS = 1e-8


@dataclass
class ExportResult:
    n_qubits: int
    term_count: int
    constant: float
    scf_energy: float
    reference: str
    max_imag_residue: float
    path: str


def _pauli_string(x: int, z: int, n_qubits: int) -> str:
    return "".join(
        "IXZY"[((x >> q) & 1) + 2 * ((z >> q) & 1)] for q in range(n_qubits)
    )


def _class_labels(shells, spherical: bool) -> np.ndarray:
    """Angular-class label per AO: 0 = sigma-like, 1 = x, 2 = y,
    3 = xy, 4 = x2-y2 (classes are exact irrep carriers for a linear
    molecule on the z axis)."""
    labels: list[int] = []
    for sh in shells:
        if sh.l == 0:
            labels += [0]
        elif sh.l == 1:
            labels += [1, 2, 0]
        elif spherical:  # order: xy, yz, z2, xz, x2-y2
            labels += [3, 2, 0, 1, 4]
        else:  # order: xx, xy, xz, yy, yz, zz
            labels += [0, 3, 1, 0, 2, 0]
    return np.asarray(labels)


def _angular_splitters(labels: np.ndarray):
    """Diagonal AO weights separating x- from y-character (pi pairs) and
    xy- from (x2-y2)-character (delta pairs) in degenerate MO blocks."""
    w_pi = (labels == 1).astype(float) - (labels == 2).astype(float)
    w_delta = (labels == 3).astype(float) - (labels == 4).astype(float)
    return [w_pi, w_delta]


def _inversion_symmetrizer(symbols, coords, shells, spherical: bool):
    """Signed AO permutation of inversion about the nuclear centroid, or
    None when the geometry is not centrosymmetric.

    Converging the SCF density inside this symmetry keeps homonuclear
    references on the symmetry-adapted solution, whose exact integral
    zeros the reported qubit-term counts rely on.
    """
    coords = np.asarray(coords)
    center = coords.mean(axis=0)
    partner = []
    for i in range(len(symbols)):
        target = 2.0 * center - coords[i]
        match = [
            j
            for j in range(len(symbols))
            if symbols[j] == symbols[i] and np.linalg.norm(coords[j] - target) < 1e-8
        ]
        if not match:
            return None
        partner.append(match[0])
    # function offsets per shell in the final (cartesian or spherical) basis
    sizes = [
        (2 * sh.l + 1) if (spherical and sh.l == 2) else len(sh.cartesian_powers)
        for sh in shells
    ]
    offsets = np.concatenate(([0], np.cumsum(sizes)))
    shells_of_atom: dict[int, list[int]] = {}
    for k, sh in enumerate(shells):
        shells_of_atom.setdefault(sh.atom_index, []).append(k)
    n = int(offsets[-1])
    p = np.zeros((n, n))
    for k, sh in enumerate(shells):
        rank = shells_of_atom[sh.atom_index].index(k)
        k2 = shells_of_atom[partner[sh.atom_index]][rank]
        if spherical and sh.l == 2:
            parities = [1.0] * 5  # solid harmonics of even l are inversion-even
        else:
            parities = [(-1.0) ** sum(lmn) for lmn in sh.cartesian_powers]
        for c, sign in enumerate(parities):
            p[offsets[k2] + c, offsets[k] + c] = sign
    return p


def solve_molecule(spec: MoleculeSpec):
    """AO integrals + RHF for a molecule spec.  Returns (scf, h_core_mo,
    eri_mo, n_electrons)."""
    symbols = [sym for sym, _ in spec.geometry]
    coords = np.array([xyz for _, xyz in spec.geometry]) * ANGSTROM_TO_BOHR
    charges = np.array([ATOMIC_NUMBERS[s] for s in symbols], dtype=float)
    n_electrons = int(charges.sum()) - spec.charge
    e_nuc = 0.0
    for i in range(len(symbols)):
        for j in range(i):
            e_nuc += charges[i] * charges[j] / np.linalg.norm(coords[i] - coords[j])
    shells = build_shells(symbols, coords, spec.basis)
    functions = build_functions(shells)
    s, t, v = build_matrices(functions, charges, coords)
    eri = build_eri(functions)
    spherical = SPHERICAL_BASIS[spec.basis.lower()]
    if spherical:
        trans = cart_to_spherical(shells)
        s, t, v, eri = apply_spherical(trans, s, t, v, eri)
    sym_op = _inversion_symmetrizer(symbols, coords, shells, spherical)
    scf = find_rhf_ground(s, t + v, eri, n_electrons, e_nuc, symmetrizer=sym_op)
    if not scf.converged:
        raise RuntimeError(f"SCF failed to converge for {spec.name}")
    labels = _class_labels(shells, spherical)
    aligned = align_degenerate_orbitals(
        scf.mo_coeffs, scf.mo_energies, _angular_splitters(labels)
    )
    purified = purify_orbital_classes(aligned, s, labels)
    scf.mo_coeffs = purified
    # determinant energy of the purified orbitals (the exported reference)
    h_core = t + v
    occ = purified[:, : scf.n_occupied]
    d = occ @ occ.T
    j = np.einsum("pqrs,rs->pq", eri, d, optimize=True)
    k = np.einsum("prqs,rs->pq", eri, d, optimize=True)
    scf.energy = float(np.sum(d * (2.0 * h_core + 2.0 * j - k))) + e_nuc
    h_mo, eri_mo = mo_transform(h_core, eri, purified)
    return scf, h_mo, eri_mo, n_electrons


def export(spec: MoleculeSpec, out_path: str, prune_eps: float = PRUNE_EPS) -> ExportResult:
    scf, h_mo, eri_mo, n_electrons = solve_molecule(spec)
    n_mo = h_mo.shape[0]
    if spec.n_active_electrons is not None:
        core, active = cas_orbital_split(
            scf.n_occupied, n_mo, spec.n_active_electrons, spec.n_active_orbitals
        )
    else:
        core = list(spec.frozen_orbitals)
        active = [p for p in range(n_mo) if p not in core]
    active_h = build_active_hamiltonian(
        h_mo, eri_mo, scf.nuclear_repulsion, n_electrons, core, active
    )
    terms, constant, max_imag = jordan_wigner(active_h)
    n_qubits = 2 * active_h.n_orbitals
    reference = "1" * active_h.n_electrons + "0" * (n_qubits - active_h.n_electrons)
    kept = sorted(
        ((x, z, c) for (x, z), c in terms.items() if abs(c) >= prune_eps),
        key=lambda t: (t[0], t[1]),
    )
    metadata = {
        "system": spec.name,
        "basis": spec.basis,
        "geometry_angstrom": [[sym, list(xyz)] for sym, xyz in spec.geometry],
        "scf_energy": scf.energy,
        "nuclear_repulsion": scf.nuclear_repulsion,
        "core_energy": active_h.core_energy,
        "active_electrons": active_h.n_electrons,
        "active_orbitals": active_h.n_orbitals,
        "prune_eps": prune_eps,
        "spin_orbital_order": "interleaved (qubit 2p alpha, 2p+1 beta)",
    }
    lines = ["{"]
    lines.append(f'  "n_qubits": {n_qubits},')
    lines.append(f'  "reference": "{reference}",')
    lines.append('  "terms": [')
    rows = [
        f'    {{"pauli": "{_pauli_string(x, z, n_qubits)}", "coeff": {format(c, ".17g")}}}'
        for x, z, c in kept
    ]
    lines.append(",\n".join(rows))
    lines.append("  ],")
    lines.append(f'  "constant": {format(constant, ".17g")},')
    lines.append(f'  "metadata": {json.dumps(metadata, sort_keys=True)}')
    lines.append("}")
    text = "\n".join(lines) + "\n"
    if out_path.endswith(".gz"):
        with gzip.open(out_path, "wt", encoding="utf-8") as fh:
            fh.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return ExportResult(
        n_qubits=n_qubits,
        term_count=len(kept),
        constant=constant,
        scf_energy=scf.energy,
        reference=reference,
        max_imag_residue=max_imag,
        path=out_path,
    )
