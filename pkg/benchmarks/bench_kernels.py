"""Benchmark the compiled kernels against the pure-NumPy fallback.

Usage: python benchmarks/bench_kernels.py [--fixture tests/fixtures/n2_ccpvdz_cas66_r1p5.json]

Times the three loop-bound kernels on the fixture Hamiltonian (or a random
one when no fixture is available) and prints per-backend timings.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from qdownfold import _kernels_py  # noqa: E402
from qdownfold.growth import _valid_pairs, default_r  # noqa: E402
from qdownfold.hamiltonian import PauliHamiltonian, load_interchange  # noqa: E402
from qdownfold.pauli import PauliProduct  # noqa: E402
from qdownfold.screening import screen  # noqa: E402

try:
    from qdownfold import _kernels as _kernels_cy
except ImportError:
    _kernels_cy = None


def random_hamiltonian(rng, n, m):
    seen = set()
    terms = []
    while len(terms) < m:
        x = int(rng.integers(0, 1 << n))
        z = int(rng.integers(0, 1 << n))
        if (x == 0 and z == 0) or (x & z).bit_count() % 2 or (x, z) in seen:
            continue
        seen.add((x, z))
        terms.append((PauliProduct(n, x, z), float(rng.uniform(0.05, 1.0))))
    return PauliHamiltonian.from_terms(n, terms, prune_eps=1e-12)


def timeit(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument(
        "--fixture",
        default=os.path.join(
            os.path.dirname(__file__), "..", "tests", "fixtures",
            "n2_ccpvdz_cas66_r1p5.json",
        ),
    )
    args = parser.parse_args()

    if os.path.exists(args.fixture):
        inter = load_interchange(args.fixture)
        h, ref = inter.hamiltonian, inter.reference
        print(f"fixture: {args.fixture}  (N = {h.n_qubits}, M = {h.term_count})")
    else:
        rng = np.random.default_rng(0)
        h = random_hamiltonian(rng, 12, 250)
        from qdownfold.hamiltonian import ReferenceState

        ref = ReferenceState(12, 0b111111)
        print(f"random Hamiltonian (N = {h.n_qubits}, M = {h.term_count})")

    table = screen(h, ref)
    mu = table[0].x_string
    mus, offsets, pi, pj = _valid_pairs(h, mu)
    cand = PauliProduct(h.n_qubits, mu, mu & -mu)
    members_z = np.arange(1 << h.n_qubits, dtype=np.uint64)
    members_z = members_z[(np.bitwise_count(members_z & np.uint64(mu)) & 1).astype(bool)]
    if members_z.shape[0] > 2048:
        members_z = members_z[:2048]

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("cython", _kernels_cy))
    else:
        print("compiled extension unavailable; showing fallback only")

    rows = []
    for name, mod in backends:
        t_growth, _ = timeit(lambda: mod.growth_stats(h.xs, h.zs, cand.x, cand.z))
        t_multiset, out = timeit(
            lambda: mod.commutator_multiset(h.zs, offsets, mus, pi, pj)
        )
        t_profile, _ = timeit(
            lambda: mod.profile_sweep(h.xs, h.zs, mu, members_z), repeats=2
        )
        zcs = out[0][: default_r(h.term_count)]
        if zcs.shape[0] == 0:
            zcs = np.array([cand.z], dtype=np.uint64)
        t_counts, _ = timeit(lambda: mod.anticommute_counts(h.xs, h.zs, mu, zcs))
        rows.append((name, t_growth, t_multiset, t_profile, t_counts))

    print(f"\n{'backend':<10} {'growth_stats':>14} {'multiset':>14} "
          f"{'profile_sweep':>14} {'hA_counts':>14}")
    for name, *times in rows:
        print(f"{name:<10} " + " ".join(f"{t * 1e3:>13.3f}ms" for t in times))
    if len(rows) == 2:
        speedups = [rows[0][k] / rows[1][k] for k in range(1, 5)]
        print(f"{'speedup':<10} " + " ".join(f"{s:>13.1f}x " for s in speedups))


if __name__ == "__main__":
    main()
