#!/usr/bin/env python3
"""Reproduce every desk-scale claim about the built-in counterexample family.

Human-readable counterpart of ``addbasis verify-counterexample``: prints the
order bracket, the two-fold gap family, both density subsequences, the merged
window extrema, and the randomized stability sweep as tables.
"""

import argparse
import sys
import time

from addbasis import verify_counterexample


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--bound", type=int, default=210000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    started = time.perf_counter()
    outcome = verify_counterexample(args.bound, seed=args.seed)
    elapsed = time.perf_counter() - started

    print(f"counterexample family at bound {args.bound} (seed {args.seed})")
    print("=" * 64)
    for claim in outcome.claims:
        status = "PASS" if claim.passed else "FAIL"
        print(f"[{status}] {claim.name}")
        if claim.name == "order-three":
            d = claim.detail
            print(f"       upper {d['upper']} / lower {d['lower']}, witness {d['witness']} "
                  f"missing from the {d['witness_fold']}-fold sumset")
        elif claim.name == "pair-gap-family":
            print(f"       2-fold gaps up to {claim.detail['bound']}: {claim.detail['got']}")
        elif claim.name == "density-oscillation":
            d = claim.detail
            for label, rows in (("2*10^k+1", d["low_rows"]), ("10^k", d["high_rows"])):
                print(f"       along {label}:")
                for r in rows:
                    print(f"         k={r['k']:<2} n={r['n']:<8} count={r['count']:<7} "
                          f"ratio={r['ratio_decimal']}")
        elif claim.name == "window-nonconvergence":
            d = claim.detail
            print(f"       tail min {d['tail_min']}  max {d['tail_max']}  "
                  f"gap {d['gap_decimal']}  -> {d['verdict']}")
        elif claim.name == "stability-sweep":
            d = claim.detail
            print(f"       {d['runs']} random augmentations from [0, {d['element_ceiling']}], "
                  f"witnesses {d['witnesses']} survived every run: {d['all_runs_survived']}")
    print("=" * 64)
    print(f"overall: {'PASS' if outcome.passed else 'FAIL'} in {elapsed:.1f}s")
    return 0 if outcome.passed else 3


if __name__ == "__main__":
    sys.exit(main())
