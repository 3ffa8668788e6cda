"""Fixture-generation command line: `chemgen <h4|n2|h2o> --out FILE`."""

from __future__ import annotations

import argparse
import sys

from .export import export
from .molecules import FIXTURES


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="chemgen",
        description="Generate qubit-Hamiltonian interchange files for the "
        "benchmark molecules",
    )
    parser.add_argument("molecule", choices=sorted(FIXTURES))
    parser.add_argument("--out", required=True, help="output path (.json or .json.gz)")
    parser.add_argument(
        "--bond", type=float, default=1.5,
        help="bond length / chain spacing in Angstrom (default 1.5)",
    )
    parser.add_argument("--prune-eps", type=float, default=1e-8)
    args = parser.parse_args(argv)
    spec = FIXTURES[args.molecule](args.bond)
    result = export(spec, args.out, prune_eps=args.prune_eps)
    print(
        f"{spec.name}: {result.n_qubits} qubits, {result.term_count} terms, "
        f"E_SCF = {result.scf_energy:.10f} Ha, reference {result.reference}, "
        f"max imag residue {result.max_imag_residue:.2e}",
        file=sys.stderr,
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
