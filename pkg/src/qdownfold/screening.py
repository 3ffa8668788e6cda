"""Classical gradient screening of the full Pauli-product pool.

For a real-valued Hamiltonian in the grouped z*x form, every pool element
with an odd y count and x-string mu shares one gradient magnitude
|sum_j c_j lambda_j| computed from the mu group alone, so the 4^N - 1 pool
collapses into at most one partition per Hamiltonian x-string.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, DimensionMismatchError
from .hamiltonian import PauliHamiltonian, ReferenceState
from .pauli import PauliProduct, y_parity

DEFAULT_GRADIENT_FLOOR = 1e-10


@dataclass(frozen=True)
class GradientPartition:
    """Equal-gradient family of pool elements: all odd-y Paulis whose x bits
    equal ``x_string``."""

    x_string: int
    gradient: float


@dataclass(frozen=True)
class PartitionTable:
    """Nonzero-gradient partitions, sorted by descending gradient with ties
    broken by ascending x-string integer value."""

    n_qubits: int
    partitions: tuple[GradientPartition, ...]

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self):
        return iter(self.partitions)

    def __getitem__(self, k: int) -> GradientPartition:
        return self.partitions[k]

    @property
    def grad_norm(self) -> float:
        """Sum of the emitted partition gradients (convergence measure)."""
        return float(sum(p.gradient for p in self.partitions))

    def top(self, count: int) -> tuple[GradientPartition, ...]:
        return self.partitions[:count]


def _require_real_valued(h: PauliHamiltonian):
    if not h.is_real_valued():
        raise DataError(
            "gradient screening requires a real-valued Hamiltonian "
            "(a stored term has an odd y count, so its z*x coefficient is imaginary)"
        )


def group_gradient_sums(h: PauliHamiltonian, ref: ReferenceState) -> tuple[np.ndarray, np.ndarray]:
    """Signed per-group sums sum_j c_j lambda_j over the grouped form.

    The sign folded into c_j is the Hermitian-label phase (-1)^(y/2) of each
    even-y term; lambda_j is the z-string eigenvalue on the reference.
    """
    if h.n_qubits != ref.n_qubits:
        raise DimensionMismatchError(
            f"reference has {ref.n_qubits} qubits, Hamiltonian has {h.n_qubits}"
        )
    _require_real_valued(h)
    mus, offsets = h.group_structure()
    if h.term_count == 0:
        return mus, np.empty(0, dtype=np.float64)
    y_counts = np.bitwise_count(h.xs & h.zs)
    ising_sign = 1.0 - 2.0 * ((y_counts >> 1) & 1).astype(np.float64)
    lam = 1.0 - 2.0 * (np.bitwise_count(h.zs & np.uint64(ref.bits)) & 1).astype(np.float64)
    sums = np.add.reduceat(h.cs * ising_sign * lam, offsets[:-1])
    return mus, sums


def screen(
    h: PauliHamiltonian,
    ref: ReferenceState,
    gradient_floor: float = DEFAULT_GRADIENT_FLOOR,
) -> PartitionTable:
    """Characterize every nonzero-gradient partition of the pool.

    Cost is O(M) after grouping.  Partitions with gradient <= gradient_floor
    are dropped, as is the zero x-string (it cannot host odd y parity).
    """
    mus, sums = group_gradient_sums(h, ref)
    parts = []
    for g in range(mus.shape[0]):
        mu = int(mus[g])
        if mu == 0:
            continue
        grad = abs(float(sums[g]))
        if grad > gradient_floor:
            parts.append(GradientPartition(mu, grad))
    parts.sort(key=lambda p: (-p.gradient, p.x_string))
    return PartitionTable(h.n_qubits, tuple(parts))


def gradient_of(h: PauliHamiltonian, ref: ReferenceState, p: PauliProduct) -> float:
    """Gradient magnitude of one pool element via the partition rule.

    Zero when p has even y parity or its x bits match no Hamiltonian
    x-string; otherwise the shared group gradient.
    """
    if p.is_identity:
        raise DataError("the identity has no gradient")
    if p.n_qubits != h.n_qubits:
        raise DimensionMismatchError(
            f"element has {p.n_qubits} qubits, Hamiltonian has {h.n_qubits}"
        )
    if y_parity(p) == 0:
        _require_real_valued(h)
        return 0.0
    mus, sums = group_gradient_sums(h, ref)
    g = int(np.searchsorted(mus, np.uint64(p.x)))
    if g == mus.shape[0] or mus[g] != p.x:
        return 0.0
    return abs(float(sums[g]))


def canonical_element(x_string: int, n_qubits: int) -> PauliProduct:
    """Partition member with y on the lowest set bit of the x-string and x
    on every other set bit (the minimum-weight odd-y choice)."""
    if x_string == 0:
        raise DataError("canonical element is undefined for a zero x-string")
    return PauliProduct(n_qubits, x_string, x_string & -x_string)
