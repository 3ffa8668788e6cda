"""Partition ranking and per-iteration generator selection.

The hybrid score s = a*g_norm - (1-a)*gamma_norm ranks the top-P gradient
partitions; the growth-mitigated policy returns the growth-minimizing
element of the top-scoring partition, while the canonical baseline always
takes the canonical element of the highest-gradient partition (its growth
is evaluated for reporting only and never influences the choice).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import DataError, EmptyCandidateSetError
from .growth import GrowthReport, SearchConfig, find_min_growth, growth_exact
from .hamiltonian import PauliHamiltonian, ReferenceState
from .pauli import PauliProduct
from .screening import GradientPartition, PartitionTable, canonical_element, screen

POLICIES = ("canonical", "gm")


@dataclass(frozen=True)
class ScoringConfig:
    """Gradient bias a in [0, 1], scoring window size P, and policy."""

    bias_a: float = 1.0
    top_p: int = 10
    policy: str = "gm"

    def __post_init__(self):
        if not 0.0 <= self.bias_a <= 1.0:
            raise DataError(f"bias must lie in [0, 1], got {self.bias_a}")
        if self.top_p < 1:
            raise DataError("top_p must be >= 1")
        if self.policy not in POLICIES:
            raise DataError(f"unknown policy {self.policy!r} (use one of {POLICIES})")


@dataclass(frozen=True)
class PartitionScore:
    """One scored partition of the ranking window."""

    partition: GradientPartition
    min_growth: int
    normalized_gradient: float
    normalized_growth: float
    score: float
    min_growth_element: PauliProduct | None = None


def score_table(
    partitions: list[GradientPartition] | tuple[GradientPartition, ...],
    growths: list[int],
    bias_a: float,
    elements: list[PauliProduct] | None = None,
) -> list[PartitionScore]:
    """Normalize gradients and growths over the window and rank by score.

    Normalization divides by the window mean, so s = a*g_norm -
    (1-a)*gamma_norm; when every window growth is zero the growth term
    cannot discriminate and is defined as zero for all entries.  Sorted by
    descending score, ties broken by higher gradient then ascending
    x-string.
    """
    if len(partitions) != len(growths):
        raise DataError("partitions and growths must have equal length")
    if not partitions:
        raise DataError("cannot score an empty window")
    if elements is not None and len(elements) != len(partitions):
        raise DataError("elements and partitions must have equal length")
    p = len(partitions)
    sum_g = float(sum(part.gradient for part in partitions))
    sum_gamma = float(sum(growths))
    scores = []
    for k, part in enumerate(partitions):
        g_norm = part.gradient * p / sum_g
        gamma_norm = growths[k] * p / sum_gamma if sum_gamma > 0 else 0.0
        s = bias_a * g_norm - (1.0 - bias_a) * gamma_norm
        scores.append(
            PartitionScore(
                partition=part,
                min_growth=int(growths[k]),
                normalized_gradient=g_norm,
                normalized_growth=gamma_norm,
                score=s,
                min_growth_element=None if elements is None else elements[k],
            )
        )
    scores.sort(key=lambda e: (-e.score, -e.partition.gradient, e.partition.x_string))
    return scores


def _partition_search(h, part, search: SearchConfig) -> tuple[GrowthReport, int]:
    """Growth search for one partition, falling back to the canonical
    element when pair factorization yields no candidates."""
    try:
        return find_min_growth(h, part.x_string, search)
    except EmptyCandidateSetError:
        elem = canonical_element(part.x_string, h.n_qubits)
        return growth_exact(h, elem), 0


def select_generator(
    h: PauliHamiltonian,
    ref: ReferenceState,
    cfg: ScoringConfig,
    search: SearchConfig,
    table: PartitionTable | None = None,
    threads: int = 1,
) -> tuple[PauliProduct, PartitionScore, int]:
    """Choose the iteration's generator under the configured policy.

    Returns (generator, its PartitionScore, commutator queries spent).
    The probabilistic search derives one child seed per window slot from
    search.rng_seed, so a run is reproducible for a fixed root seed.
    """
    if table is None:
        table = screen(h, ref)
    if len(table) == 0:
        raise DataError("empty partition table: gradient norm is zero (converged)")
    window = table.top(cfg.top_p)
    p = len(window)

    if cfg.policy == "canonical":
        part = window[0]
        elem = canonical_element(part.x_string, h.n_qubits)
        rep = growth_exact(h, elem)
        sum_g = float(sum(w.gradient for w in window))
        g_norm = part.gradient * p / sum_g
        score = PartitionScore(
            partition=part,
            min_growth=rep.growth,
            normalized_gradient=g_norm,
            normalized_growth=0.0,
            score=g_norm,
            min_growth_element=elem,
        )
        return elem, score, 0

    searches = [
        replace(search, rng_seed=derive_seed(search.rng_seed, k)) for k in range(p)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_partition_search, [h] * p, window, searches))
    else:
        results = [_partition_search(h, window[k], searches[k]) for k in range(p)]
    reports = [r for r, _ in results]
    n_query = int(sum(nq for _, nq in results))
    scored = score_table(
        list(window),
        [rep.growth for rep in reports],
        cfg.bias_a,
        elements=[rep.candidate for rep in reports],
    )
    best = scored[0]
    return best.min_growth_element, best, n_query


def derive_seed(root_seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for (root, keys...)."""
    ss = np.random.SeedSequence((int(root_seed) & 0xFFFFFFFFFFFFFFFF, *keys))
    return int(ss.generate_state(2, np.uint32).view(np.uint64)[0])
