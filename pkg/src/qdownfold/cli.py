"""Batch command-line front end.

Subcommands: screen, growth, profile, iqcc, exact, transform.  Exit codes:
0 success, 1 usage error, 2 data error, 3 numerical-guard violation.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys

from . import exact as exact_mod
from .engine import RunConfig, run, trajectory_json
from .errors import DataError, GuardError, QdownfoldError
from .growth import SearchConfig, find_min_growth, partition_growth_profile
from .hamiltonian import (
    dress,
    expectation,
    interchange_text,
    load_interchange,
    save_interchange,
)
from .pauli import PauliProduct
from .screening import canonical_element, screen
from .selection import ScoringConfig, derive_seed

USAGE_EXIT = 1
DATA_EXIT = 2
GUARD_EXIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _x_string_bits(s: str) -> int:
    if not s or set(s) - {"0", "1"}:
        raise DataError(f"invalid x-string bit string {s!r}")
    bits = 0
    for q, ch in enumerate(s):
        if ch == "1":
            bits |= 1 << q
    return bits


def _x_string_text(x: int, n_qubits: int) -> str:
    return "".join("1" if (x >> q) & 1 else "0" for q in range(n_qubits))


def _out_stream(path: str | None):
    if path:
        return open(path, "w", encoding="utf-8")
    return contextlib.nullcontext(sys.stdout)


def _add_search_flags(p: argparse.ArgumentParser):
    p.add_argument("--search", choices=("det", "prob"), default="det",
                   help="growth search variant")
    p.add_argument("--r", type=int, default=None,
                   help="candidates ranked by multiplicity (default ceil(log2 M))")
    p.add_argument("--r-fallback", type=int, default=None,
                   help="widened candidate window used when no normalizer is found")
    p.add_argument("--samples", type=int, default=None,
                   help="probabilistic sample count (default M)")
    p.add_argument("--seed", type=int, default=0, help="search RNG seed")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="qdownfold",
                  description="Growth-mitigated downfolding of qubit Hamiltonians")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("screen", help="rank nonzero-gradient partitions")
    p.add_argument("input")
    p.add_argument("--top-p", type=int, default=10)
    p.add_argument("--out", default=None)

    p = sub.add_parser("growth", help="growth-minimizing search inside partitions")
    p.add_argument("input")
    p.add_argument("--x-string", default=None,
                   help="partition bit string (default: top gradient partitions)")
    p.add_argument("--top", type=int, default=1,
                   help="number of top-gradient partitions searched")
    _add_search_flags(p)
    p.add_argument("--out", default=None)

    p = sub.add_parser("profile", help="exhaustive multiplicity/growth sweep of a partition")
    p.add_argument("input")
    p.add_argument("--x-string", default=None,
                   help="partition bit string (default: top gradient partition)")
    p.add_argument("--out", default=None)

    p = sub.add_parser("iqcc", help="run the iterative downfolding loop")
    p.add_argument("input")
    p.add_argument("--policy", choices=("canonical", "gm"), default="gm")
    p.add_argument("--bias", type=float, default=1.0, help="gradient bias a in [0, 1]")
    p.add_argument("--top-p", type=int, default=10)
    _add_search_flags(p)
    p.add_argument("--max-iter", type=int, default=20)
    p.add_argument("--grad-norm-eps", type=float, default=0.0)
    p.add_argument("--energy-tol", type=float, default=0.0)
    p.add_argument("--prune-eps", type=float, default=1e-8)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="trajectory JSON path (default stdout)")
    p.add_argument("--save-hamiltonian", default=None,
                   help="write the final Hamiltonian in interchange format")

    p = sub.add_parser("exact", help="dense-diagonalization reference values")
    p.add_argument("input")
    p.add_argument("--k", type=int, default=None, help="print the k lowest eigenvalues")
    p.add_argument("--expectation", action="store_true",
                   help="also print the reference-state expectation")

    p = sub.add_parser("transform", help="apply an explicit generator/angle list")
    p.add_argument("input")
    p.add_argument("--gen", action="append", default=[],
                   help="generator Pauli string (repeatable, paired with --tau)")
    p.add_argument("--tau", action="append", type=float, default=[],
                   help="rotation angle in radians (repeatable)")
    p.add_argument("--replay", default=None,
                   help="trajectory JSON whose generators and angles are replayed")
    p.add_argument("--out", default=None, help="output Hamiltonian path (default stdout)")
    return top


def _cmd_screen(args) -> int:
    inter = load_interchange(args.input)
    table = screen(inter.hamiltonian, inter.reference)
    with _out_stream(args.out) as out:
        print("rank\tgradient\tx_string\tcanonical", file=out)
        for rank, part in enumerate(table.top(args.top_p), start=1):
            elem = canonical_element(part.x_string, inter.hamiltonian.n_qubits)
            print(
                f"{rank}\t{part.gradient:.17g}\t"
                f"{_x_string_text(part.x_string, inter.hamiltonian.n_qubits)}\t"
                f"{elem.to_string()}",
                file=out,
            )
    return 0


def _search_config(args) -> SearchConfig:
    return SearchConfig(
        r=args.r,
        n_samples=args.samples,
        rng_seed=args.seed,
        method=args.search,
        r_fallback=args.r_fallback,
    )


def _cmd_growth(args) -> int:
    inter = load_interchange(args.input)
    h = inter.hamiltonian
    if args.x_string is not None:
        targets = [_x_string_bits(args.x_string)]
    else:
        table = screen(h, inter.reference)
        if len(table) == 0:
            raise DataError("no nonzero-gradient partitions to search")
        targets = [p.x_string for p in table.top(args.top)]
    base = _search_config(args)
    with _out_stream(args.out) as out:
        print(
            "x_string\tcandidate\tmultiplicity\tanticommuting\tgrowth\tn_query",
            file=out,
        )
        for i, x_string in enumerate(targets):
            cfg = SearchConfig(
                r=base.r,
                n_samples=base.n_samples,
                rng_seed=derive_seed(base.rng_seed, i),
                method=base.method,
                r_fallback=base.r_fallback,
            )
            rep, n_query = find_min_growth(h, x_string, cfg)
            print(
                f"{_x_string_text(x_string, h.n_qubits)}\t{rep.candidate.to_string()}\t"
                f"{rep.multiplicity}\t{rep.anticommuting_count}\t{rep.growth}\t{n_query}",
                file=out,
            )
    return 0


def _cmd_profile(args) -> int:
    inter = load_interchange(args.input)
    h = inter.hamiltonian
    if args.x_string is not None:
        x_string = _x_string_bits(args.x_string)
    else:
        table = screen(h, inter.reference)
        if len(table) == 0:
            raise DataError("no nonzero-gradient partitions to profile")
        x_string = table[0].x_string
    rows = partition_growth_profile(h, x_string)
    with _out_stream(args.out) as out:
        print("multiplicity,growth", file=out)
        for m, g in rows:
            print(f"{m},{g}", file=out)
    return 0


def _cmd_iqcc(args) -> int:
    inter = load_interchange(args.input, prune_eps=args.prune_eps)
    cfg = RunConfig(
        scoring=ScoringConfig(bias_a=args.bias, top_p=args.top_p, policy=args.policy),
        search=_search_config(args),
        max_iterations=args.max_iter,
        grad_norm_eps=args.grad_norm_eps,
        energy_tol=args.energy_tol,
        prune_eps=args.prune_eps,
        threads=args.threads,
    )
    result = run(inter.hamiltonian, inter.reference, cfg)
    text = trajectory_json(result, cfg)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if args.save_hamiltonian:
        save_interchange(
            args.save_hamiltonian,
            result.final_hamiltonian,
            result.reference,
            metadata={"status": result.status, "iterations": len(result.records)},
        )
    return 0


def _cmd_exact(args) -> int:
    inter = load_interchange(args.input)
    energy = exact_mod.ground_energy(inter.hamiltonian)
    print(f"ground_energy\t{energy:.17g}")
    if args.expectation:
        print(f"reference_expectation\t{expectation(inter.hamiltonian, inter.reference):.17g}")
    if args.k is not None:
        if args.k < 1:
            raise DataError("--k must be >= 1")
        for ev in exact_mod.eigenvalues(inter.hamiltonian)[: args.k]:
            print(f"{ev:.17g}")
    return 0


def _cmd_transform(args) -> int:
    inter = load_interchange(args.input)
    steps: list[tuple[str, float]] = []
    if args.replay:
        with open(args.replay, encoding="utf-8") as fh:
            doc = json.load(fh)
        try:
            for rec in doc["iterations"]:
                steps.append((rec["generator"], float(rec["tau_opt"])))
        except (KeyError, TypeError) as exc:
            raise DataError(f"malformed trajectory file {args.replay}: {exc}") from None
    if len(args.gen) != len(args.tau):
        raise DataError(
            f"--gen and --tau must be paired, got {len(args.gen)} and {len(args.tau)}"
        )
    steps.extend(zip(args.gen, args.tau))
    if not steps:
        raise DataError("nothing to apply: provide --gen/--tau pairs or --replay")
    h = inter.hamiltonian
    for gen_str, tau in steps:
        gen = PauliProduct.from_string(gen_str)
        h = dress(h, gen, tau)
    if args.out:
        save_interchange(args.out, h, inter.reference)
    else:
        sys.stdout.write(interchange_text(h, inter.reference))
    return 0


_COMMANDS = {
    "screen": _cmd_screen,
    "growth": _cmd_growth,
    "profile": _cmd_profile,
    "iqcc": _cmd_iqcc,
    "exact": _cmd_exact,
    "transform": _cmd_transform,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except GuardError as exc:
        print(f"qdownfold: guard violation: {exc}", file=sys.stderr)
        return GUARD_EXIT
    except QdownfoldError as exc:
        print(f"qdownfold: error: {exc}", file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(f"qdownfold: error: {exc}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
