"""Growth accounting and growth-minimizing partition-member search.

The growth gamma of a candidate generator is the number of distinct
commutator labels [H_i, P] absent from the current term set: an exact upper
bound on the term-count increase of a dressing step.  Candidates inside a
gradient partition are discovered by factorizing the partition x-string
over pairs of Hamiltonian x-strings and accumulating the multiset of
nonzero cross-group commutator labels; multiplicity m in that multiset
relates to growth via gamma = |H_A| - 2 m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import (
    DataError,
    DimensionMismatchError,
    EmptyCandidateSetError,
    GuardError,
)
from .hamiltonian import PauliHamiltonian
from .pauli import PauliProduct

MAX_PROFILE_MEMBERS = 1 << 24
_PROFILE_CHUNK = 1 << 16


@dataclass(frozen=True)
class GrowthReport:
    """Growth diagnostics for one candidate generator."""

    candidate: PauliProduct
    multiplicity: int
    anticommuting_count: int
    growth: int


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for the growth-minimizing search.

    ``r`` is the number of top-multiplicity candidates whose |H_A| is
    evaluated (default ceil(log2 M)); ``r_fallback``, when set, widens the
    candidate window to that value if the first pass finds no normalizer.
    ``n_samples`` (default M) and ``rng_seed`` drive the probabilistic
    variant; ``method`` selects it ("det" or "prob").
    """

    r: int | None = None
    n_samples: int | None = None
    rng_seed: int = 0
    method: str = "det"
    r_fallback: int | None = None

    def __post_init__(self):
        if self.r is not None and self.r < 1:
            raise DataError("r must be >= 1")
        if self.n_samples is not None and self.n_samples < 1:
            raise DataError("n_samples must be >= 1")
        if self.method not in ("det", "prob"):
            raise DataError(f"unknown search method {self.method!r}")


def default_r(term_count: int) -> int:
    """ceil(log2 M), at least 1."""
    return max(1, math.ceil(math.log2(max(2, term_count))))


def growth_exact(h: PauliHamiltonian, p: PauliProduct) -> GrowthReport:
    """Direct O(M) growth count for one candidate.

    The commutator labels of distinct anticommuting terms are distinct, so
    gamma is the number of anticommuting terms whose label falls outside
    the term set; the exhaustive-multiset multiplicity follows exactly as
    (|H_A| - gamma) / 2.
    """
    if p.is_identity:
        raise DataError("growth is undefined for the identity generator")
    if p.n_qubits != h.n_qubits:
        raise DimensionMismatchError(
            f"candidate has {p.n_qubits} qubits, Hamiltonian has {h.n_qubits}"
        )
    n_anti, gamma = kernels.growth_stats(h.xs, h.zs, p.x, p.z)
    return GrowthReport(p, (n_anti - gamma) // 2, n_anti, gamma)


def _validate_x_string(h: PauliHamiltonian, x_string: int):
    if not 0 < x_string < (1 << h.n_qubits):
        raise DataError(f"x-string {x_string} out of range for {h.n_qubits} qubits")


def _valid_pairs(h: PauliHamiltonian, x_string: int):
    """Unordered pairs (i < j) of distinct Hamiltonian x-string groups whose
    XOR equals the target x-string."""
    mus, offsets = h.group_structure()
    if mus.shape[0] < 2:
        return mus, offsets, np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64)
    partners = mus ^ np.uint64(x_string)
    idx = np.searchsorted(mus, partners)
    idx_c = np.minimum(idx, mus.shape[0] - 1)
    found = (mus[idx_c] == partners) & (idx < mus.shape[0])
    i_arr = np.flatnonzero(found & (idx_c > np.arange(mus.shape[0])))
    return mus, offsets, i_arr.astype(np.int64), idx_c[i_arr].astype(np.int64)


def _select_winner(gammas, multiplicities, z_labels):
    """Smallest gamma, ties by higher multiplicity then ascending z."""
    order = np.lexsort((z_labels, -multiplicities, gammas))
    return int(order[0])


def find_min_growth_deterministic(
    h: PauliHamiltonian, x_string: int, cfg: SearchConfig
) -> tuple[GrowthReport, int]:
    """Exhaustive pair-factorization search for the lowest-growth member of
    the partition labelled ``x_string``.

    Builds the full cross-group commutator multiset for every valid
    x-string pair, then evaluates |H_A| for the r highest-multiplicity
    labels; gamma follows from the multiplicity identity.  Returns the
    winning report and the number of commutator queries spent building the
    multiset.
    """
    _validate_x_string(h, x_string)
    mus, offsets, pi, pj = _valid_pairs(h, x_string)
    if pi.shape[0] == 0:
        raise EmptyCandidateSetError(
            f"no pair of Hamiltonian x-strings factorizes x-string {x_string}"
        )
    uniq_z, counts, n_query = kernels.commutator_multiset(h.zs, offsets, mus, pi, pj)
    if uniq_z.shape[0] == 0:
        raise EmptyCandidateSetError(
            f"all cross-group pairs for x-string {x_string} commute"
        )
    report = _evaluate_candidates(h, x_string, uniq_z, counts, cfg.r)
    if report.growth > 0 and cfg.r_fallback is not None:
        wider = _evaluate_candidates(h, x_string, uniq_z, counts, cfg.r_fallback)
        if wider.growth < report.growth:
            report = wider
    return report, int(n_query)


def _evaluate_candidates(h, x_string, uniq_z, counts, r):
    if r is None:
        r = default_r(h.term_count)
    if r < 1:
        raise DataError("r must be >= 1")
    order = np.lexsort((uniq_z, -counts))[: min(r, uniq_z.shape[0])]
    top_z = uniq_z[order]
    top_m = counts[order]
    n_anti = kernels.anticommute_counts(h.xs, h.zs, x_string, top_z)
    gammas = n_anti - 2 * top_m
    w = _select_winner(gammas, top_m, top_z)
    return GrowthReport(
        PauliProduct(h.n_qubits, x_string, int(top_z[w])),
        int(top_m[w]),
        int(n_anti[w]),
        int(gammas[w]),
    )


def find_min_growth_probabilistic(
    h: PauliHamiltonian, x_string: int, cfg: SearchConfig
) -> tuple[GrowthReport, int]:
    """Sampled variant: draws a valid x-string pair uniformly, then one
    z-term from each side, recording nonzero commutator labels.

    After n_samples draws (exactly n_samples commutator queries) the r
    most-sampled labels are ranked by growth computed directly as
    |[P, H] \\ H|.  Reproducible for a fixed rng_seed.
    """
    _validate_x_string(h, x_string)
    mus, offsets, pi, pj = _valid_pairs(h, x_string)
    if pi.shape[0] == 0:
        raise EmptyCandidateSetError(
            f"no pair of Hamiltonian x-strings factorizes x-string {x_string}"
        )
    n_samples = cfg.n_samples if cfg.n_samples is not None else max(1, h.term_count)
    rng = np.random.Generator(np.random.PCG64(cfg.rng_seed))
    k = rng.integers(0, pi.shape[0], size=n_samples)
    gi = pi[k]
    gj = pj[k]
    size_i = (offsets[gi + 1] - offsets[gi]).astype(np.int64)
    size_j = (offsets[gj + 1] - offsets[gj]).astype(np.int64)
    a = offsets[gi] + rng.integers(0, size_i)
    b = offsets[gj] + rng.integers(0, size_j)
    za = h.zs[a]
    zb = h.zs[b]
    anti = (
        (np.bitwise_count(zb & mus[gi]) + np.bitwise_count(za & mus[gj])) & 1
    ).astype(bool)
    labels = (za ^ zb)[anti]
    if labels.shape[0] == 0:
        raise EmptyCandidateSetError(
            f"all {n_samples} sampled commutators for x-string {x_string} were zero"
        )
    uniq_z, sampled = np.unique(labels, return_counts=True)
    r = cfg.r if cfg.r is not None else default_r(h.term_count)
    order = np.lexsort((uniq_z, -sampled))[: min(r, uniq_z.shape[0])]
    top_z = uniq_z[order]
    top_s = sampled[order]
    gammas = np.empty(top_z.shape[0], dtype=np.int64)
    n_anti = np.empty(top_z.shape[0], dtype=np.int64)
    for i in range(top_z.shape[0]):
        na, ga = kernels.growth_stats(h.xs, h.zs, x_string, int(top_z[i]))
        n_anti[i] = na
        gammas[i] = ga
    w = _select_winner(gammas, top_s, top_z)
    return (
        GrowthReport(
            PauliProduct(h.n_qubits, x_string, int(top_z[w])),
            int((n_anti[w] - gammas[w]) // 2),
            int(n_anti[w]),
            int(gammas[w]),
        ),
        int(n_samples),
    )


def find_min_growth(
    h: PauliHamiltonian, x_string: int, cfg: SearchConfig
) -> tuple[GrowthReport, int]:
    """Dispatch on cfg.method."""
    if cfg.method == "prob":
        return find_min_growth_probabilistic(h, x_string, cfg)
    return find_min_growth_deterministic(h, x_string, cfg)


def partition_members(x_string: int, n_qubits: int) -> np.ndarray:
    """z bit vectors of all 2^(N-1) odd-y members of a partition, ascending."""
    if x_string == 0:
        raise DataError("a zero x-string labels no gradient partition")
    if 1 << (n_qubits - 1) > MAX_PROFILE_MEMBERS:
        raise GuardError(
            f"partition of 2^{n_qubits - 1} members exceeds the enumeration guard"
        )
    out = []
    mu = np.uint64(x_string)
    for start in range(0, 1 << n_qubits, _PROFILE_CHUNK):
        stop = min(start + _PROFILE_CHUNK, 1 << n_qubits)
        zs = np.arange(start, stop, dtype=np.uint64)
        odd = (np.bitwise_count(zs & mu) & 1).astype(bool)
        out.append(zs[odd])
    return np.concatenate(out)


def partition_growth_profile(
    h: PauliHamiltonian, x_string: int
) -> list[tuple[int, int]]:
    """Exhaustive (multiplicity, growth) sweep over one whole partition,
    in ascending member z order (scatter data for anticorrelation
    diagnostics)."""
    _validate_x_string(h, x_string)
    members = partition_members(x_string, h.n_qubits)
    n_anti, gammas = kernels.profile_sweep(h.xs, h.zs, x_string, members)
    mult = (n_anti - gammas) // 2
    return list(zip(mult.tolist(), gammas.tolist()))
