"""Outer iteration loop: select a generator, minimize the one-parameter
energy in closed form, dress the Hamiltonian, record the trajectory.

The single-generator energy is an exact sinusoid
E(tau) = A + C + B sin(tau) - C cos(tau) with A = <H>, B the signed
gradient dE/dtau at 0 and C = (<PHP> - <H>)/2, so the step optimum is
computed in closed form rather than with an iterative optimizer.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import DataError, InternalInconsistencyError
from .growth import SearchConfig
from .hamiltonian import (
    DEFAULT_PRUNE_EPS,
    PauliHamiltonian,
    ReferenceState,
    dress,
    expectation,
)
from .pauli import PauliProduct
from .screening import DEFAULT_GRADIENT_FLOOR, screen
from .selection import ScoringConfig, derive_seed, select_generator


@dataclass(frozen=True)
class RunConfig:
    scoring: ScoringConfig = field(default_factory=ScoringConfig)
    search: SearchConfig = field(default_factory=SearchConfig)
    max_iterations: int = 20
    grad_norm_eps: float = 0.0
    energy_tol: float = 0.0
    prune_eps: float = DEFAULT_PRUNE_EPS
    gradient_floor: float = DEFAULT_GRADIENT_FLOOR
    threads: int = 1

    def __post_init__(self):
        if self.max_iterations < 1:
            raise DataError("max_iterations must be >= 1")
        if self.grad_norm_eps < 0 or self.energy_tol < 0 or self.prune_eps < 0:
            raise DataError("tolerances must be non-negative")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    generator: PauliProduct
    gradient: float
    growth_bound: int
    tau_opt: float
    energy: float
    term_count: int
    grad_norm: float
    wall_time: float
    n_query: int


@dataclass(frozen=True)
class RunResult:
    records: list[IterationRecord]
    status: str
    initial_energy: float
    initial_term_count: int
    final_hamiltonian: PauliHamiltonian
    reference: ReferenceState


def _signed_gradient(h: PauliHamiltonian, ref: ReferenceState, gen: PauliProduct) -> float:
    """dE/dtau at tau = 0, i.e. Im<ref|H gen|ref>, sign included.

    Only terms sharing gen's x bits contribute; each term's product with
    gen is diagonal, with phase i^k picking out the imaginary part.
    """
    lo = int(np.searchsorted(h.xs, np.uint64(gen.x), side="left"))
    hi = int(np.searchsorted(h.xs, np.uint64(gen.x), side="right"))
    if lo == hi:
        return 0.0
    xs = h.xs[lo:hi]
    zs = h.zs[lo:hi]
    y_terms = np.bitwise_count(xs & zs).astype(np.int64)
    y_gen = (gen.x & gen.z).bit_count()
    cross = np.bitwise_count(xs & np.uint64(gen.z)).astype(np.int64)
    k = (-(y_terms + y_gen) + 2 * cross) % 4
    imag = np.where(k == 1, 1.0, 0.0) - np.where(k == 3, 1.0, 0.0)
    lam = 1.0 - 2.0 * (
        np.bitwise_count((zs ^ np.uint64(gen.z)) & np.uint64(ref.bits)) & 1
    ).astype(np.float64)
    return float(np.dot(h.cs[lo:hi] * imag, lam))


def _conjugated_expectation(h: PauliHamiltonian, ref: ReferenceState, gen: PauliProduct) -> float:
    """<ref|gen H gen|ref>: diagonal terms flip sign when they anticommute
    with the generator."""
    n0 = int(np.searchsorted(h.xs, np.uint64(0), side="right"))
    if n0 == 0:
        return h.constant
    zs = h.zs[:n0]
    theta = 1.0 - 2.0 * (np.bitwise_count(zs & np.uint64(gen.x)) & 1).astype(np.float64)
    lam = 1.0 - 2.0 * (np.bitwise_count(zs & np.uint64(ref.bits)) & 1).astype(np.float64)
    return float(np.dot(h.cs[:n0] * theta, lam)) + h.constant


def minimize_tau(
    h: PauliHamiltonian, ref: ReferenceState, gen: PauliProduct
) -> tuple[float, float]:
    """Global minimizer of E(tau) = <ref| e^{i tau gen/2} H e^{-i tau gen/2} |ref>.

    E(tau) = (A + C) + B sin(tau) - C cos(tau) is an exact sinusoid, so the
    optimum is tau' with E(tau') = A + C - sqrt(B^2 + C^2).
    """
    if gen.is_identity:
        raise DataError("generator must be non-identity")
    a_val = expectation(h, ref)
    b_val = _signed_gradient(h, ref, gen)
    c_val = 0.5 * (_conjugated_expectation(h, ref, gen) - a_val)
    if b_val == 0.0 and c_val == 0.0:
        raise InternalInconsistencyError(
            f"flat energy curve for generator {gen}: inconsistent with a nonzero gradient"
        )
    tau = -0.5 * math.pi - math.atan2(-c_val, b_val)
    if tau <= -math.pi:
        tau += 2.0 * math.pi
    return tau, a_val + c_val - math.hypot(b_val, c_val)


def run(h0: PauliHamiltonian, ref: ReferenceState, cfg: RunConfig) -> RunResult:
    """Iterate selection -> closed-form amplitude -> dressing until the
    gradient norm, an energy plateau, or the iteration cap stops the loop."""
    h = h0
    if h.prune_eps != cfg.prune_eps:
        keep = np.abs(h.cs) >= cfg.prune_eps
        h = PauliHamiltonian(
            h.n_qubits, h.xs[keep], h.zs[keep], h.cs[keep], h.constant, cfg.prune_eps
        )
    initial_energy = expectation(h, ref)
    initial_terms = h.term_count
    e_prev = initial_energy
    records: list[IterationRecord] = []
    status = "max_iterations"
    for k in range(1, cfg.max_iterations + 1):
        t0 = time.perf_counter()
        table = screen(h, ref, cfg.gradient_floor)
        grad_norm = table.grad_norm
        if len(table) == 0 or grad_norm <= cfg.grad_norm_eps:
            status = "converged_grad_norm"
            break
        search_k = replace(cfg.search, rng_seed=derive_seed(cfg.search.rng_seed, k))
        gen, pscore, n_query = select_generator(
            h, ref, cfg.scoring, search_k, table=table, threads=cfg.threads
        )
        tau, _ = minimize_tau(h, ref, gen)
        h = dress(h, gen, tau)
        energy = expectation(h, ref)
        records.append(
            IterationRecord(
                iteration=k,
                generator=gen,
                gradient=pscore.partition.gradient,
                growth_bound=pscore.min_growth,
                tau_opt=tau,
                energy=energy,
                term_count=h.term_count,
                grad_norm=grad_norm,
                wall_time=time.perf_counter() - t0,
                n_query=n_query,
            )
        )
        if cfg.energy_tol > 0 and abs(energy - e_prev) < cfg.energy_tol:
            status = "converged_energy"
            break
        e_prev = energy
    return RunResult(records, status, initial_energy, initial_terms, h, ref)


def trajectory_document(result: RunResult, cfg: RunConfig) -> dict:
    """JSON-ready trajectory: config echo, per-iteration records, status.

    Wall-clock times are deliberately left out so that identical runs
    produce byte-identical documents.
    """
    return {
        "config": {
            "policy": cfg.scoring.policy,
            "bias_a": cfg.scoring.bias_a,
            "top_p": cfg.scoring.top_p,
            "search_method": cfg.search.method,
            "r": cfg.search.r,
            "r_fallback": cfg.search.r_fallback,
            "n_samples": cfg.search.n_samples,
            "rng_seed": cfg.search.rng_seed,
            "max_iterations": cfg.max_iterations,
            "grad_norm_eps": cfg.grad_norm_eps,
            "energy_tol": cfg.energy_tol,
            "prune_eps": cfg.prune_eps,
            "gradient_floor": cfg.gradient_floor,
        },
        "initial": {
            "energy": result.initial_energy,
            "term_count": result.initial_term_count,
        },
        "iterations": [
            {
                "iteration": r.iteration,
                "generator": r.generator.to_string(),
                "gradient": r.gradient,
                "growth_bound": r.growth_bound,
                "tau_opt": r.tau_opt,
                "energy": r.energy,
                "term_count": r.term_count,
                "grad_norm": r.grad_norm,
                "n_query": r.n_query,
            }
            for r in result.records
        ],
        "status": result.status,
    }


def trajectory_json(result: RunResult, cfg: RunConfig) -> str:
    return json.dumps(trajectory_document(result, cfg), indent=2, sort_keys=True)
