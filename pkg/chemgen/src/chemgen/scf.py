"""Restricted Hartree-Fock with DIIS over the AO integral matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass
class ScfResult:
    energy: float            # total RHF energy incl. nuclear repulsion
    mo_energies: np.ndarray
    mo_coeffs: np.ndarray    # AO x MO
    n_occupied: int
    nuclear_repulsion: float
    converged: bool


def apply_spherical(t: np.ndarray, s, tt, v, eri):
    """Project Cartesian AO integrals into the spherical basis and
    renormalize each spherical function to unit overlap."""
    s1 = t @ s @ t.T
    scale = 1.0 / np.sqrt(np.diag(s1))
    t = t * scale[:, np.newaxis]
    s1 = t @ s @ t.T
    tt1 = t @ tt @ t.T
    v1 = t @ v @ t.T
    eri1 = np.einsum("pi,qj,rk,sl,ijkl->pqrs", t, t, t, t, eri, optimize=True)
    return s1, tt1, v1, eri1


def restricted_hartree_fock(
    s: np.ndarray,
    h_core: np.ndarray,
    eri: np.ndarray,
    n_electrons: int,
    e_nuc: float,
    max_cycles: int = 300,
    conv_tol: float = 1e-11,
    diis_size: int = 8,
    level_shift: float = 0.0,
    dm0: np.ndarray | None = None,
    symmetrizer: np.ndarray | None = None,
) -> ScfResult:
    """Closed-shell SCF; density built from the n_electrons/2 lowest MOs.

    A positive level_shift raises the virtual block (in the orthonormal
    basis) during the DIIS iterations, which keeps aufbau occupations
    stable on stretched geometries; the shift is released once the
    commutator is small so converged orbital energies are unshifted.

    ``symmetrizer`` is an AO-space point-group operation (signed
    permutation) under which the density is averaged every cycle, pinning
    the iteration to the symmetry-adapted stationary point even when a
    slightly broken solution exists nearby.
    """
    if n_electrons % 2:
        raise ValueError("restricted SCF needs an even electron count")
    n_occ = n_electrons // 2
    # symmetric orthogonalization
    s_eval, s_evec = np.linalg.eigh(s)
    if np.min(s_eval) < 1e-10:
        raise ValueError("near-singular overlap matrix")
    x = s_evec @ np.diag(s_eval**-0.5) @ s_evec.T
    x_inv = s_evec @ np.diag(s_eval**0.5) @ s_evec.T

    def symmetrize(d):
        if symmetrizer is not None:
            d = 0.5 * (d + symmetrizer @ d @ symmetrizer.T)
        return d

    def density(fock, shift, d_prev):
        f_ortho = x.T @ fock @ x
        if shift > 0.0 and d_prev is not None:
            p_occ = x_inv @ d_prev @ x_inv.T
            f_ortho = f_ortho + shift * (np.eye(f_ortho.shape[0]) - p_occ)
        e_mo, c_ortho = np.linalg.eigh(f_ortho)
        c = x @ c_ortho
        occ = c[:, :n_occ]
        return symmetrize(occ @ occ.T), e_mo, c

    d, _, _ = density(h_core, 0.0, None)
    energy = 0.0
    shift = level_shift
    fock_list: list[np.ndarray] = []
    err_list: list[np.ndarray] = []
    converged = False
    if dm0 is not None:
        d = symmetrize(dm0)
    for _ in range(max_cycles):
        j = np.einsum("pqrs,rs->pq", eri, d, optimize=True)
        k = np.einsum("prqs,rs->pq", eri, d, optimize=True)
        fock = h_core + 2.0 * j - k
        err = fock @ d @ s - s @ d @ fock
        err_norm = float(np.max(np.abs(err)))
        if shift > 0.0 and err_norm < 1e-5:
            shift = 0.0  # release the shift for the final refinement
            fock_list.clear()
            err_list.clear()
        fock_list.append(fock)
        err_list.append(err)
        if len(fock_list) > diis_size:
            fock_list.pop(0)
            err_list.pop(0)
        if len(fock_list) > 1:
            m = len(fock_list)
            b = -np.ones((m + 1, m + 1))
            b[m, m] = 0.0
            for i in range(m):
                for jj in range(m):
                    b[i, jj] = np.sum(err_list[i] * err_list[jj])
            rhs = np.zeros(m + 1)
            rhs[m] = -1.0
            try:
                coeffs = np.linalg.solve(b, rhs)[:m]
                fock = sum(c * f for c, f in zip(coeffs, fock_list))
            except np.linalg.LinAlgError:
                pass
        d, e_mo, c = density(fock, shift, d)
        new_energy = float(np.sum(d * (2.0 * h_core + 2.0 * j - k))) + e_nuc
        if abs(new_energy - energy) < conv_tol and err_norm < 1e-7 and shift == 0.0:
            energy = new_energy
            converged = True
            break
        energy = new_energy
    # final energy from the converged density
    j = np.einsum("pqrs,rs->pq", eri, d, optimize=True)
    k = np.einsum("prqs,rs->pq", eri, d, optimize=True)
    energy = float(np.sum(d * (2.0 * h_core + 2.0 * j - k))) + e_nuc
    return ScfResult(energy, e_mo, c, n_occ, e_nuc, converged)


def align_degenerate_orbitals(
    c: np.ndarray,
    mo_energies: np.ndarray,
    splitters: list[np.ndarray],
    tol: float = 1e-6,
) -> np.ndarray:
    """Rotate within degenerate MO blocks to symmetry-aligned components.

    Degenerate eigenvectors come out of the diagonalizer in arbitrary
    mixtures (e.g. pi_x/pi_y of a linear molecule), which destroys the
    integral sparsity the qubit-term counts rely on.  Each splitter is a
    diagonal AO weight vector distinguishing an angular character (x vs y);
    diagonalizing it inside a degenerate block recovers aligned orbitals.
    Finally every orbital's sign is fixed by its largest coefficient.
    """
    c = c.copy()
    n = c.shape[1]
    i = 0
    while i < n:
        j = i + 1
        while j < n and abs(mo_energies[j] - mo_energies[j - 1]) < tol:
            j += 1
        if j - i > 1:
            for w in splitters:
                block = c[:, i:j]
                m = block.T @ (w[:, np.newaxis] * block)
                m = 0.5 * (m + m.T)
                evals, evecs = np.linalg.eigh(m)
                if np.ptp(evals) > 1e-8:
                    c[:, i:j] = block @ evecs
        i = j
    for k in range(n):
        lead = int(np.argmax(np.abs(c[:, k])))
        if c[lead, k] < 0:
            c[:, k] = -c[:, k]
    return c


def purify_orbital_classes(
    c: np.ndarray,
    s: np.ndarray,
    class_labels: np.ndarray,
    purity: float = 0.999,
) -> np.ndarray:
    """Zero out symmetry-contamination coefficients left by finite SCF
    convergence.

    Each AO carries an angular-class label; an MO whose relative weight on
    one class exceeds ``purity`` is projected onto that class (orbitals
    that genuinely mix classes are left untouched).  The full set is then
    Loewdin-reorthonormalized in the S metric.  Restores the exact
    integral sparsity of symmetry-adapted orbitals on linear molecules.
    """
    c = c.copy()
    labels = np.asarray(class_labels)
    for k in range(c.shape[1]):
        weights = np.array(
            [np.sum(c[labels == cls, k] ** 2) for cls in np.unique(labels)]
        )
        total = float(weights.sum())
        if total == 0.0:
            continue
        rel = weights / total
        top = int(np.argmax(rel))
        if rel[top] >= purity and rel[top] < 1.0:
            cls = np.unique(labels)[top]
            c[labels != cls, k] = 0.0
    m = c.T @ s @ c
    evals, evecs = np.linalg.eigh(m)
    return c @ evecs @ np.diag(evals**-0.5) @ evecs.T


def find_rhf_ground(
    s: np.ndarray,
    h_core: np.ndarray,
    eri: np.ndarray,
    n_electrons: int,
    e_nuc: float,
    n_restarts: int = 6,
    seed: int = 0,
    symmetrizer: np.ndarray | None = None,
) -> ScfResult:
    """SCF with seeded perturbed restarts.

    Stretched geometries can trap plain core-guess DIIS in saddle points
    of the RHF functional; restarting from a few random occupied-virtual
    rotations of the first solution and keeping the lowest converged
    energy reliably recovers the ground solution, deterministically for a
    fixed seed.  With a symmetrizer, restarts stay inside the symmetric
    subspace, so the search targets the symmetry-adapted solution.
    """
    best = restricted_hartree_fock(
        s, h_core, eri, n_electrons, e_nuc, symmetrizer=symmetrizer
    )
    n_occ = n_electrons // 2
    rng = np.random.default_rng(seed)
    for _ in range(n_restarts):
        c = best.mo_coeffs
        theta = rng.normal(scale=0.35, size=(n_occ, c.shape[1] - n_occ))
        c_occ = c[:, :n_occ] + c[:, n_occ:] @ theta.T
        m = c_occ.T @ s @ c_occ
        evals, evecs = np.linalg.eigh(m)
        c_occ = c_occ @ evecs @ np.diag(evals**-0.5) @ evecs.T
        trial = restricted_hartree_fock(
            s,
            h_core,
            eri,
            n_electrons,
            e_nuc,
            dm0=c_occ @ c_occ.T,
            level_shift=0.5,
            symmetrizer=symmetrizer,
        )
        if trial.converged and trial.energy < best.energy - 1e-9:
            best = trial
    if not best.converged:
        raise RuntimeError("no converged SCF solution found")
    return best
