"""Turn CLI report files into the standard diagnostic figures.

Usage:
  python docs/plot_results.py trajectory traj1.json [traj2.json ...] --exact -1.9961503
  python docs/plot_results.py profile scatter.csv

`trajectory` plots energy error and term count per iteration for one or
more trajectory JSON files; `profile` renders the multiplicity-vs-growth
scatter of a `qdownfold profile` CSV.
"""

import argparse
import csv
import json

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def plot_trajectories(paths, exact, out):
    fig, (ax_e, ax_m) = plt.subplots(1, 2, figsize=(9, 3.5))
    for path in paths:
        doc = json.load(open(path))
        its = [rec["iteration"] for rec in doc["iterations"]]
        label = f"{doc['config']['policy']}(a={doc['config']['bias_a']:g})"
        if exact is not None:
            errs = [(rec["energy"] - exact) * 1000 for rec in doc["iterations"]]
            ax_e.semilogy(its, errs, marker=".", label=label)
        ax_m.plot(its, [rec["term_count"] for rec in doc["iterations"]],
                  marker=".", label=label)
    if exact is not None:
        ax_e.axhline(1.6, color="grey", ls="--", lw=0.8)
        ax_e.set_xlabel("iteration")
        ax_e.set_ylabel("energy error / mHa")
        ax_e.legend(fontsize=8)
    ax_m.set_xlabel("iteration")
    ax_m.set_ylabel("Hamiltonian terms")
    ax_m.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def plot_profile(path, out):
    rows = list(csv.DictReader(open(path)))
    m = [int(r["multiplicity"]) for r in rows]
    g = [int(r["growth"]) for r in rows]
    fig, ax = plt.subplots(figsize=(4.2, 3.5))
    ax.scatter(m, g, s=12, alpha=0.4)
    ax.set_xlabel("multiplicity in the commutator multiset")
    ax.set_ylabel("growth")
    fig.tight_layout()
    fig.savefig(out, dpi=150)
    print(f"wrote {out}")


def main():
    parser = argparse.ArgumentParser()
    sub = parser.add_subparsers(dest="kind", required=True)
    p = sub.add_parser("trajectory")
    p.add_argument("paths", nargs="+")
    p.add_argument("--exact", type=float, default=None,
                   help="exact ground energy for the error panel")
    p.add_argument("--out", default="trajectories.png")
    p = sub.add_parser("profile")
    p.add_argument("path")
    p.add_argument("--out", default="profile.png")
    args = parser.parse_args()
    if args.kind == "trajectory":
        plot_trajectories(args.paths, args.exact, args.out)
    else:
        plot_profile(args.path, args.out)


if __name__ == "__main__":
    main()
