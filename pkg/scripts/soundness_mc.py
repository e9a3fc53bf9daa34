"""Monte-Carlo soundness sweep: random separable states never violate a criterion.

Runs every partition type on the requested dims and checks the partition
plus all of its coarsenings.
"""

import argparse
import time

import numpy as np

from blochsep.bloch import all_tensors
from blochsep.criteria import evaluate_tensors
from blochsep.states import random_separable, set_partitions


def sweep(dims, samples, terms, seed, tol=1e-8):
    parts = set_partitions(len(dims))
    rows = []
    for i, part in enumerate(parts):
        targets = [q for q in parts if q == part or part.is_refinement_of(q)]
        worst, bad = -np.inf, 0
        for s in range(samples):
            ts = all_tensors(random_separable(dims, part, terms, seed + 100_003 * i + s))
            for q in targets:
                for r in evaluate_tensors(ts, q, tol):
                    worst = max(worst, r.margin)
                    bad += r.violated
        rows.append((part.label(), len(targets), worst, bad))
    return rows


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dims", nargs="+", default=["2,2,2", "2,2,3", "2,2,2,2"])
    ap.add_argument("--samples", type=int, default=500)
    ap.add_argument("--terms", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    total = 0
    for spec in args.dims:
        dims = tuple(int(d) for d in spec.split(","))
        t0 = time.perf_counter()
        rows = sweep(dims, args.samples, args.terms, args.seed)
        print(f"dims {dims}  ({time.perf_counter() - t0:.1f} s)")
        for label, n_targets, worst, bad in rows:
            print(f"  {label:<10} targets={n_targets:<2} max margin={worst:+.3e} violations={bad}")
            total += bad
    print("total violations:", total)
    return 1 if total else 0


if __name__ == "__main__":
    raise SystemExit(main())
