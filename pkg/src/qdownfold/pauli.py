"""Bit-level symplectic algebra for N-qubit Pauli products.

A Pauli product is stored as a pair of packed bit vectors (Python ints):
bit q of ``x`` is set iff qubit q carries an x or y factor, bit q of ``z``
is set iff qubit q carries a z or y factor.  The stored label always
denotes the Hermitian product

    P(x, z) = (-i)^{|x & z|} * Z(z) * X(x),

so any i^k prefactor produced by multiplication is returned separately and
never stored.  Text form uses one character per qubit from {I, X, Y, Z}
with character index 0 = qubit 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataError, DimensionMismatchError

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True)
class PauliProduct:
    """Hermitian N-qubit Pauli product in symplectic (x, z) form."""

    n_qubits: int
    x: int
    z: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DataError(f"n_qubits must be positive, got {self.n_qubits}")
        bound = 1 << self.n_qubits
        if not (0 <= self.x < bound and 0 <= self.z < bound):
            raise DataError(
                f"bit vectors out of range for {self.n_qubits} qubits: x={self.x}, z={self.z}"
            )

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliProduct":
        return cls(n_qubits, 0, 0)

    @classmethod
    def from_string(cls, label: str) -> "PauliProduct":
        """Parse a text label like ``"YXXX"`` (character 0 = qubit 0)."""
        if not label:
            raise DataError("empty Pauli string")
        x = z = 0
        for q, ch in enumerate(label):
            try:
                xb, zb = _CHAR_TO_BITS[ch]
            except KeyError:
                raise DataError(f"invalid Pauli character {ch!r} in {label!r}") from None
            x |= xb << q
            z |= zb << q
        return cls(len(label), x, z)

    def to_string(self) -> str:
        return "".join(
            _BITS_TO_CHAR[(self.x >> q) & 1, (self.z >> q) & 1] for q in range(self.n_qubits)
        )

    def __str__(self) -> str:
        return self.to_string()

    @property
    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    @property
    def weight(self) -> int:
        """Number of non-identity qubit factors."""
        return (self.x | self.z).bit_count()


@dataclass(frozen=True)
class PhasedPauli:
    """A Hermitian label together with a multiplicative i^k prefactor."""

    label: PauliProduct
    phase_exponent: int

    def __post_init__(self):
        object.__setattr__(self, "phase_exponent", self.phase_exponent % 4)

    @property
    def phase(self) -> complex:
        return (1, 1j, -1, -1j)[self.phase_exponent]


def _check_dims(p: PauliProduct, q: PauliProduct):
    if p.n_qubits != q.n_qubits:
        raise DimensionMismatchError(
            f"qubit counts differ: {p.n_qubits} vs {q.n_qubits}"
        )


def y_parity(p: PauliProduct) -> int:
    """Parity of the number of y factors: popcount(x & z) mod 2."""
    return (p.x & p.z).bit_count() & 1


def multiply(p: PauliProduct, q: PauliProduct) -> PhasedPauli:
    """Product pq as a Hermitian label and exact phase i^k.

    The phase exponent follows from commuting the Z(z_p) X(x_p) Z(z_q) X(x_q)
    factors into canonical order and restoring the Hermitian prefactors.
    """
    _check_dims(p, q)
    x = p.x ^ q.x
    z = p.z ^ q.z
    k = (
        -(p.x & p.z).bit_count()
        - (q.x & q.z).bit_count()
        + 2 * (p.x & q.z).bit_count()
        + (x & z).bit_count()
    ) % 4
    return PhasedPauli(PauliProduct(p.n_qubits, x, z), k)


def commutes(p: PauliProduct, q: PauliProduct) -> bool:
    """True iff the symplectic form x_p.z_q + x_q.z_p vanishes mod 2."""
    _check_dims(p, q)
    return (((p.x & q.z).bit_count() + (q.x & p.z).bit_count()) & 1) == 0


def commutator_label(p: PauliProduct, q: PauliProduct) -> PhasedPauli | None:
    """Hermitian label of [p, q], or None when p and q commute.

    The scalar 2 and the coefficient are dropped on purpose: callers that
    accumulate commutator multisets only consume the label.  The returned
    phase is the one of the product pq.
    """
    if commutes(p, q):
        return None
    return multiply(p, q)
