"""Dense-matrix oracles for small qubit counts.

Everything here is built directly from Kronecker products of single-qubit
matrices (qubit 0 = leftmost tensor factor) and deliberately avoids the
grouping, screening and search code it is used to validate.
"""

from __future__ import annotations

import numpy as np

from .errors import DataError, DimensionMismatchError, GuardError
from .hamiltonian import PauliHamiltonian, ReferenceState
from .pauli import PauliProduct, commutator_label

MAX_DENSE_QUBITS = 14
MAX_SPECTRUM_QUBITS = 12
MAX_SWEEP_QUBITS = 6

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_SINGLE = {(0, 0): _I, (1, 0): _X, (1, 1): _Y, (0, 1): _Z}


def pauli_matrix(p: PauliProduct) -> np.ndarray:
    """Dense matrix of a Hermitian Pauli product."""
    if p.n_qubits > MAX_DENSE_QUBITS:
        raise GuardError(f"{p.n_qubits} qubits exceeds dense guard {MAX_DENSE_QUBITS}")
    m = np.ones((1, 1), dtype=complex)
    for q in range(p.n_qubits):
        m = np.kron(m, _SINGLE[(p.x >> q) & 1, (p.z >> q) & 1])
    return m


def to_matrix(h: PauliHamiltonian) -> np.ndarray:
    """Dense matrix of the Hamiltonian, constant included."""
    if h.n_qubits > MAX_DENSE_QUBITS:
        raise GuardError(f"{h.n_qubits} qubits exceeds dense guard {MAX_DENSE_QUBITS}")
    dim = 1 << h.n_qubits
    m = np.zeros((dim, dim), dtype=complex)
    for p, c in h:
        m += c * pauli_matrix(p)
    m += h.constant * np.eye(dim)
    return m


def basis_index(ref: ReferenceState) -> int:
    """Row index of |ref> with qubit 0 as the most significant bit."""
    return sum(
        ((ref.bits >> q) & 1) << (ref.n_qubits - 1 - q) for q in range(ref.n_qubits)
    )


def basis_vector(ref: ReferenceState) -> np.ndarray:
    v = np.zeros(1 << ref.n_qubits, dtype=complex)
    v[basis_index(ref)] = 1.0
    return v


def eigenvalues(h: PauliHamiltonian) -> np.ndarray:
    if h.n_qubits > MAX_DENSE_QUBITS:
        raise GuardError(f"{h.n_qubits} qubits exceeds dense guard {MAX_DENSE_QUBITS}")
    return np.linalg.eigvalsh(to_matrix(h))


def ground_energy(h: PauliHamiltonian) -> float:
    """Lowest eigenvalue via dense symmetric diagonalization."""
    return float(eigenvalues(h)[0])


def spectra_match(a: PauliHamiltonian, b: PauliHamiltonian, tol: float) -> bool:
    """Elementwise comparison of the sorted spectra of two Hamiltonians."""
    if a.n_qubits != b.n_qubits:
        raise DimensionMismatchError(
            f"qubit counts differ: {a.n_qubits} vs {b.n_qubits}"
        )
    if a.n_qubits > MAX_SPECTRUM_QUBITS:
        raise GuardError(
            f"{a.n_qubits} qubits exceeds spectrum guard {MAX_SPECTRUM_QUBITS}"
        )
    return bool(np.max(np.abs(eigenvalues(a) - eigenvalues(b))) <= tol)


def brute_force_gradients(
    h: PauliHamiltonian, ref: ReferenceState
) -> dict[PauliProduct, float]:
    """|<ref|[H, P]|ref>| / 2 for every non-identity Pauli product.

    Literal dense evaluation over all 4^N - 1 pool elements; the inner
    product uses <v|[H,P]|v> = 2i Im((Hv)^dag (Pv)).
    """
    if h.n_qubits != ref.n_qubits:
        raise DimensionMismatchError(
            f"reference has {ref.n_qubits} qubits, Hamiltonian has {h.n_qubits}"
        )
    if h.n_qubits > MAX_SWEEP_QUBITS:
        raise GuardError(f"{h.n_qubits} qubits exceeds sweep guard {MAX_SWEEP_QUBITS}")
    v = basis_vector(ref)
    hv = to_matrix(h) @ v
    out: dict[PauliProduct, float] = {}
    n = h.n_qubits
    for x in range(1 << n):
        for z in range(1 << n):
            if x == 0 and z == 0:
                continue
            p = PauliProduct(n, x, z)
            pv = pauli_matrix(p) @ v
            out[p] = abs(np.imag(np.vdot(hv, pv)))
    return out


def brute_force_growth(h: PauliHamiltonian, p: PauliProduct) -> tuple[int, int]:
    """(|H_A|, gamma) computed with object-level Pauli algebra and sets.

    Independent of the packed-array kernels: iterates the term list,
    collects the labels of nonzero commutators and counts the distinct
    ones absent from the term set.
    """
    if p.is_identity:
        raise DataError("growth is undefined for the identity")
    term_set = {(q.x, q.z) for q, _ in h}
    new_labels = set()
    n_anti = 0
    for q, _ in h:
        c = commutator_label(q, p)
        if c is None:
            continue
        n_anti += 1
        key = (c.label.x, c.label.z)
        if key not in term_set:
            new_labels.add(key)
    return n_anti, len(new_labels)
