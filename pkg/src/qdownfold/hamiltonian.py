"""Sparse qubit-Hamiltonian container with exact single-generator dressing.

Terms are held as parallel packed arrays (x bits, z bits, coefficient),
sorted lexicographically by (x, z) so that terms sharing an x-string are
contiguous; the identity/constant part is tracked separately and is never
pruned or screened.  All coefficients are real; conjugation by
exp(-i tau P/2) (``dress``) keeps them real for Hermitian labels.
"""

from __future__ import annotations

import gzip
import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from . import kernels
from .errors import DataError, DimensionMismatchError, GuardError
from .pauli import PauliProduct

DEFAULT_PRUNE_EPS = 1e-8

MAX_PACKED_QUBITS = 64


@dataclass(frozen=True)
class ReferenceState:
    """Computational basis state; bit q is the occupation of qubit q."""

    n_qubits: int
    bits: int

    def __post_init__(self):
        if self.n_qubits < 1:
            raise DataError(f"n_qubits must be positive, got {self.n_qubits}")
        if not 0 <= self.bits < (1 << self.n_qubits):
            raise DataError(f"occupation bits out of range for {self.n_qubits} qubits")

    @classmethod
    def from_string(cls, s: str) -> "ReferenceState":
        """Parse a bit string; character 0 = qubit 0."""
        if not s or set(s) - {"0", "1"}:
            raise DataError(f"invalid reference bit string {s!r}")
        bits = 0
        for q, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << q
        return cls(len(s), bits)

    def to_string(self) -> str:
        return "".join("1" if (self.bits >> q) & 1 else "0" for q in range(self.n_qubits))

    def __str__(self) -> str:
        return self.to_string()


def _merge_sorted_terms(xs, zs, cs, prune_eps):
    """Lexsort by (x, z), sum duplicate keys in stable order, prune."""
    order = np.lexsort((zs, xs))
    xs = xs[order]
    zs = zs[order]
    cs = cs[order]
    if xs.shape[0]:
        new_run = np.empty(xs.shape[0], dtype=bool)
        new_run[0] = True
        np.logical_or(xs[1:] != xs[:-1], zs[1:] != zs[:-1], out=new_run[1:])
        starts = np.flatnonzero(new_run)
        cs = np.add.reduceat(cs, starts)
        xs = xs[starts]
        zs = zs[starts]
    keep = np.abs(cs) >= prune_eps
    return xs[keep], zs[keep], cs[keep]


class PauliHamiltonian:
    """Immutable map from Hermitian Pauli products to real coefficients."""

    __slots__ = ("n_qubits", "xs", "zs", "cs", "constant", "prune_eps", "_groups")

    def __init__(self, n_qubits, xs, zs, cs, constant=0.0, prune_eps=DEFAULT_PRUNE_EPS):
        if n_qubits < 1:
            raise DataError(f"n_qubits must be positive, got {n_qubits}")
        if n_qubits > MAX_PACKED_QUBITS:
            raise GuardError(
                f"{n_qubits} qubits exceeds the packed-word limit of {MAX_PACKED_QUBITS}"
            )
        if prune_eps < 0:
            raise DataError("prune_eps must be non-negative")
        xs = np.ascontiguousarray(xs, dtype=np.uint64)
        zs = np.ascontiguousarray(zs, dtype=np.uint64)
        cs = np.ascontiguousarray(cs, dtype=np.float64)
        if not (xs.shape == zs.shape == cs.shape) or xs.ndim != 1:
            raise DataError("term arrays must be 1-d and of equal length")
        for a in (xs, zs, cs):
            a.setflags(write=False)
        self.n_qubits = int(n_qubits)
        self.xs = xs
        self.zs = zs
        self.cs = cs
        self.constant = float(constant)
        self.prune_eps = float(prune_eps)
        self._groups = None

    @classmethod
    def from_terms(
        cls,
        n_qubits: int,
        terms: Mapping[PauliProduct, float] | Iterable[tuple[PauliProduct, float]],
        constant: float = 0.0,
        prune_eps: float = DEFAULT_PRUNE_EPS,
    ) -> "PauliHamiltonian":
        """Build from (PauliProduct, coefficient) pairs.

        Duplicate labels are summed, identity labels are folded into the
        constant, and coefficients with magnitude below prune_eps are
        dropped.  Complex coefficients are rejected.
        """
        items = terms.items() if isinstance(terms, Mapping) else terms
        xs_l: list[int] = []
        zs_l: list[int] = []
        cs_l: list[float] = []
        constant = float(constant)
        for p, c in items:
            if isinstance(c, complex):
                if c.imag != 0.0:
                    raise DataError(f"complex coefficient {c} for term {p}")
                c = c.real
            if p.n_qubits != n_qubits:
                raise DimensionMismatchError(
                    f"term {p} has {p.n_qubits} qubits, expected {n_qubits}"
                )
            if p.is_identity:
                constant += float(c)
            else:
                xs_l.append(p.x)
                zs_l.append(p.z)
                cs_l.append(float(c))
        xs, zs, cs = _merge_sorted_terms(
            np.asarray(xs_l, dtype=np.uint64),
            np.asarray(zs_l, dtype=np.uint64),
            np.asarray(cs_l, dtype=np.float64),
            prune_eps,
        )
        return cls(n_qubits, xs, zs, cs, constant, prune_eps)

    # -- mapping-style access ------------------------------------------------

    @property
    def term_count(self) -> int:
        """Number of stored non-identity Pauli products."""
        return int(self.xs.shape[0])

    def __len__(self) -> int:
        return self.term_count

    def term(self, i: int) -> tuple[PauliProduct, float]:
        return PauliProduct(self.n_qubits, int(self.xs[i]), int(self.zs[i])), float(self.cs[i])

    def __iter__(self) -> Iterator[tuple[PauliProduct, float]]:
        for i in range(self.term_count):
            yield self.term(i)

    def _find(self, p: PauliProduct) -> int:
        lo = int(np.searchsorted(self.xs, np.uint64(p.x), side="left"))
        hi = int(np.searchsorted(self.xs, np.uint64(p.x), side="right"))
        if lo == hi:
            return -1
        k = lo + int(np.searchsorted(self.zs[lo:hi], np.uint64(p.z)))
        if k < hi and self.zs[k] == p.z:
            return k
        return -1

    def coefficient(self, p: PauliProduct) -> float:
        """Stored coefficient of p (identity returns the constant; absent -> 0)."""
        if p.n_qubits != self.n_qubits:
            raise DimensionMismatchError(
                f"term has {p.n_qubits} qubits, Hamiltonian has {self.n_qubits}"
            )
        if p.is_identity:
            return self.constant
        k = self._find(p)
        return float(self.cs[k]) if k >= 0 else 0.0

    def __contains__(self, p: PauliProduct) -> bool:
        return not p.is_identity and self._find(p) >= 0

    def terms_dict(self) -> dict[PauliProduct, float]:
        return {p: c for p, c in self}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliHamiltonian):
            return NotImplemented
        return (
            self.n_qubits == other.n_qubits
            and self.constant == other.constant
            and np.array_equal(self.xs, other.xs)
            and np.array_equal(self.zs, other.zs)
            and np.array_equal(self.cs, other.cs)
        )

    def __repr__(self) -> str:
        return (
            f"PauliHamiltonian(n_qubits={self.n_qubits}, terms={self.term_count}, "
            f"constant={self.constant:.6g})"
        )

    # -- structure -----------------------------------------------------------

    @property
    def y_parities(self) -> np.ndarray:
        return (np.bitwise_count(self.xs & self.zs) & 1).astype(np.uint8)

    def is_real_valued(self) -> bool:
        """True iff every term has an even number of y factors, i.e. the
        Hamiltonian matrix is purely real."""
        return not bool(np.any(self.y_parities))

    def group_structure(self) -> tuple[np.ndarray, np.ndarray]:
        """Unique x-strings (ascending) and their slice offsets into the
        term arrays; group g spans [offsets[g], offsets[g+1])."""
        if self._groups is None:
            if self.term_count == 0:
                mus = np.empty(0, dtype=np.uint64)
                offsets = np.zeros(1, dtype=np.int64)
            else:
                mus, starts = np.unique(self.xs, return_index=True)
                offsets = np.empty(mus.shape[0] + 1, dtype=np.int64)
                offsets[:-1] = starts
                offsets[-1] = self.term_count
            self._groups = (mus, offsets)
        return self._groups


@dataclass(frozen=True)
class IsingGrouping:
    """Grouped factorization H = sum_i (sum_j c_j^(i) Z_j^(i)) X_i.

    ``groups`` maps each x-string to its [(z-string, coefficient)] list,
    where the coefficient multiplies the bare Z(z) X(x) operator product,
    i.e. the Hermitian-label phase (-i)^{#y} is folded in.  For terms with
    an even y count the folded coefficient is a signed real; odd-y terms
    fold a +/-i factor and are kept complex so the round trip stays exact.
    """

    n_qubits: int
    groups: dict[int, list[tuple[int, complex]]]
    constant: float = 0.0
    prune_eps: float = DEFAULT_PRUNE_EPS

    def to_hamiltonian(self) -> PauliHamiltonian:
        """Rebuild the term map; inverse of :func:`ising_grouping`."""
        terms = []
        for x, entries in self.groups.items():
            for z, c in entries:
                y = (x & z).bit_count()
                coeff = complex(c) * (1, 1j, -1, -1j)[y % 4]
                if abs(coeff.imag) > 1e-14 * max(1.0, abs(coeff.real)):
                    raise DataError(f"grouping entry ({x}, {z}) rebuilds to complex {coeff}")
                terms.append((PauliProduct(self.n_qubits, x, z), coeff.real))
        return PauliHamiltonian.from_terms(
            self.n_qubits, terms, constant=self.constant, prune_eps=self.prune_eps
        )


def ising_grouping(h: PauliHamiltonian) -> IsingGrouping:
    """Group terms by x-string with Z*X-factorized coefficients."""
    groups: dict[int, list[tuple[int, complex]]] = {}
    mus, offsets = h.group_structure()
    for g in range(mus.shape[0]):
        entries = []
        for i in range(int(offsets[g]), int(offsets[g + 1])):
            x = int(h.xs[i])
            z = int(h.zs[i])
            y = (x & z).bit_count()
            phase = (1, -1j, -1, 1j)[y % 4]  # label = (-i)^y Z(z) X(x)
            c = float(h.cs[i]) * phase
            entries.append((z, c.real if c.imag == 0.0 else c))
        groups[int(mus[g])] = entries
    return IsingGrouping(h.n_qubits, groups, h.constant, h.prune_eps)


def _check_state(h: PauliHamiltonian, ref: ReferenceState):
    if h.n_qubits != ref.n_qubits:
        raise DimensionMismatchError(
            f"reference has {ref.n_qubits} qubits, Hamiltonian has {h.n_qubits}"
        )


def _diag_slice(h: PauliHamiltonian) -> int:
    """Terms are sorted by (x, z), so x == 0 terms form a prefix."""
    return int(np.searchsorted(h.xs, np.uint64(0), side="right"))


def expectation(h: PauliHamiltonian, ref: ReferenceState) -> float:
    """<ref|H|ref>: only all-z terms contribute, with eigenvalue signs
    (-1)^(popcount(z & occupation))."""
    _check_state(h, ref)
    n0 = _diag_slice(h)
    if n0 == 0:
        return h.constant
    signs = 1.0 - 2.0 * (np.bitwise_count(h.zs[:n0] & np.uint64(ref.bits)) & 1).astype(np.float64)
    return float(np.dot(h.cs[:n0], signs)) + h.constant


def term_phase_exponents(h: PauliHamiltonian, gen: PauliProduct) -> np.ndarray:
    """Phase exponent k of multiply(term_i, gen) = i^k . label, per term."""
    xg = np.uint64(gen.x)
    zg = np.uint64(gen.z)
    y_terms = np.bitwise_count(h.xs & h.zs).astype(np.int64)
    y_gen = (gen.x & gen.z).bit_count()
    cross = np.bitwise_count(h.xs & zg).astype(np.int64)
    y_lab = np.bitwise_count((h.xs ^ xg) & (h.zs ^ zg)).astype(np.int64)
    return (-(y_terms + y_gen) + 2 * cross + y_lab) % 4


def dress(h: PauliHamiltonian, gen: PauliProduct, tau: float) -> PauliHamiltonian:
    """Exact conjugation exp(i tau gen/2) H exp(-i tau gen/2).

    Commuting terms pass through; each anticommuting term c*P contributes
    c*cos(tau)*P plus c*sin(tau)*sigma*R where R is the Hermitian label of
    P*gen and sigma the sign that keeps the coefficient real.  The merged
    map is pruned at h.prune_eps; the term count obeys
    |out| <= |in| + gamma(gen).
    """
    if gen.is_identity:
        raise DataError("dressing generator must be non-identity")
    if gen.n_qubits != h.n_qubits:
        raise DimensionMismatchError(
            f"generator has {gen.n_qubits} qubits, Hamiltonian has {h.n_qubits}"
        )
    if h.term_count == 0 or tau == 0.0:
        return h
    anti = kernels.anticommute_mask(h.xs, h.zs, gen.x, gen.z)
    if not np.any(anti):
        return h
    comm = ~anti
    cos_t = math.cos(tau)
    sin_t = math.sin(tau)
    k = term_phase_exponents(h, gen)[anti]
    # anticommuting products have odd phase exponent; i^(k+3) is +/-1
    sigma = np.where(k == 1, 1.0, -1.0)
    xs = np.concatenate((h.xs[comm], h.xs[anti], h.xs[anti] ^ np.uint64(gen.x)))
    zs = np.concatenate((h.zs[comm], h.zs[anti], h.zs[anti] ^ np.uint64(gen.z)))
    cs = np.concatenate((h.cs[comm], h.cs[anti] * cos_t, h.cs[anti] * sin_t * sigma))
    xs, zs, cs = _merge_sorted_terms(xs, zs, cs, h.prune_eps)
    return PauliHamiltonian(h.n_qubits, xs, zs, cs, h.constant, h.prune_eps)


# -- interchange files --------------------------------------------------------


@dataclass(frozen=True)
class Interchange:
    hamiltonian: PauliHamiltonian
    reference: ReferenceState
    metadata: dict


_ALLOWED_KEYS = {"n_qubits", "reference", "terms", "constant", "metadata"}


def _reject_json_constant(token: str):
    raise DataError(f"non-finite number {token!r} in Hamiltonian file")


def _open_text(path: str, mode: str):
    if str(path).endswith(".gz"):
        return gzip.open(path, mode + "t", encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def load_interchange(path: str, prune_eps: float = DEFAULT_PRUNE_EPS) -> Interchange:
    """Read a Hamiltonian interchange JSON document (optionally gzipped)."""
    with _open_text(path, "r") as fh:
        try:
            doc = json.load(fh, parse_constant=_reject_json_constant)
        except json.JSONDecodeError as exc:
            raise DataError(f"invalid JSON in {path}: {exc}") from None
    if not isinstance(doc, dict):
        raise DataError("Hamiltonian file must contain a JSON object")
    unknown = set(doc) - _ALLOWED_KEYS
    if unknown:
        raise DataError(f"unknown keys in Hamiltonian file: {sorted(unknown)}")
    for key in ("n_qubits", "reference", "terms"):
        if key not in doc:
            raise DataError(f"Hamiltonian file missing required key {key!r}")
    n = doc["n_qubits"]
    if not isinstance(n, int) or n < 1:
        raise DataError(f"n_qubits must be a positive integer, got {n!r}")
    ref = ReferenceState.from_string(str(doc["reference"]))
    if ref.n_qubits != n:
        raise DataError(
            f"reference length {ref.n_qubits} does not match n_qubits={n}"
        )
    if not isinstance(doc["terms"], list):
        raise DataError("'terms' must be an array")
    terms = []
    for entry in doc["terms"]:
        if not isinstance(entry, dict) or set(entry) != {"pauli", "coeff"}:
            raise DataError(f"malformed term entry {entry!r}")
        coeff = entry["coeff"]
        if isinstance(coeff, bool) or not isinstance(coeff, (int, float)):
            raise DataError(f"coefficient must be a real number, got {coeff!r}")
        p = PauliProduct.from_string(str(entry["pauli"]))
        if p.n_qubits != n:
            raise DataError(
                f"term {entry['pauli']!r} has {p.n_qubits} qubits, expected {n}"
            )
        terms.append((p, float(coeff)))
    constant = doc.get("constant", 0.0)
    if isinstance(constant, bool) or not isinstance(constant, (int, float)):
        raise DataError(f"constant must be a real number, got {constant!r}")
    metadata = doc.get("metadata", {})
    if not isinstance(metadata, dict):
        raise DataError("metadata must be an object")
    h = PauliHamiltonian.from_terms(n, terms, constant=float(constant), prune_eps=prune_eps)
    return Interchange(h, ref, metadata)


def _format_coeff(c: float) -> str:
    return format(float(c), ".17g")


def interchange_text(
    h: PauliHamiltonian, ref: ReferenceState, metadata: dict | None = None
) -> str:
    """Interchange JSON text: coefficients at 17 significant digits, terms
    in sorted (x, z) order."""
    _check_state(h, ref)
    lines = ["{"]
    lines.append(f'  "n_qubits": {h.n_qubits},')
    lines.append(f'  "reference": "{ref.to_string()}",')
    lines.append('  "terms": [')
    rows = []
    for p, c in h:
        rows.append(f'    {{"pauli": "{p.to_string()}", "coeff": {_format_coeff(c)}}}')
    lines.append(",\n".join(rows))
    lines.append("  ],")
    lines.append(f'  "constant": {_format_coeff(h.constant)}' + ("," if metadata else ""))
    if metadata:
        lines.append(f'  "metadata": {json.dumps(metadata, sort_keys=True)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def save_interchange(
    path: str,
    h: PauliHamiltonian,
    ref: ReferenceState,
    metadata: dict | None = None,
) -> None:
    """Write the interchange JSON document (gzipped when the path ends in .gz)."""
    with _open_text(path, "w") as fh:
        fh.write(interchange_text(h, ref, metadata))
