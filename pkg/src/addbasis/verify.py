"""End-to-end check of the counterexample family at a chosen bound.

Composes only public library operations: order bracketing, two-fold gap
listing, density rows along both index subsequences with an independent
membership recount, window extrema over the merged tails, and a seeded
random stability sweep.  Each claim reports PASS/FAIL with enough detail to
re-derive the verdict.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .analysis import (
    DensityReport,
    SubseqSpec,
    density_sequence,
    window_extrema,
)
from .order import SweepConfig, order_bounds, random_stability_sweep
from .report import density_rows_payload, frac_decimal, frac_str
from .setexpr import COUNTEREXAMPLE, contains
from .sumset import complement_witnesses, representation_count

MIN_VERIFY_BOUND = 21000
GAP_SCAN_BOUND = 21000
EXPECTED_GAPS = (21, 201, 2001, 20001)
LOW_ANCHOR = Fraction(4, 9)
HIGH_ANCHOR = Fraction(8, 9)
ANCHOR_TOLERANCE = Fraction(1, 10000)
WINDOW_GAP_THRESHOLD = Fraction(2, 5)
NONCONVERGENCE_FLAG = "limit empirically does not exist"
SWEEP_RUNS = 100


@dataclass(frozen=True)
class Claim:
    name: str
    passed: bool
    detail: dict[str, Any]


@dataclass(frozen=True)
class VerifyOutcome:
    bound: int
    seed: int
    claims: tuple[Claim, ...]
    passed: bool


def _recount(expr, n: int) -> int:
    # structural membership scan, independent of the bitset pipeline
    return sum(1 for i in range(1, n + 1) if contains(expr, i))


def _density_claim(expr, bound: int) -> tuple[Claim, DensityReport, DensityReport]:
    k_low = 1
    while 2 * 10 ** (k_low + 1) + 1 <= bound:
        k_low += 1
    k_high = 1
    while 10 ** (k_high + 1) <= bound:
        k_high += 1
    low = density_sequence(expr, 1, SubseqSpec(2, 10, 1, start=1, count=k_low))
    high = density_sequence(expr, 1, SubseqSpec(1, 10, 0, start=1, count=k_high))

    recount_ok = all(r.count == _recount(expr, r.n) for r in low.rows + high.rows)

    def approaches(report: DensityReport, anchor: Fraction) -> bool:
        dists = [abs(r.ratio - anchor) for r in report.rows]
        return all(b < a for a, b in zip(dists, dists[1:]))

    low_ok = approaches(low, LOW_ANCHOR)
    high_ok = approaches(high, HIGH_ANCHOR)
    low_final = abs(low.rows[-1].ratio - LOW_ANCHOR)
    high_final = abs(high.rows[-1].ratio - HIGH_ANCHOR)
    anchor_ok = True
    if k_low >= 5:
        anchor_ok = anchor_ok and low_final < ANCHOR_TOLERANCE
    if k_high >= 5:
        anchor_ok = anchor_ok and high_final < ANCHOR_TOLERANCE
    # no family elements lie in (10^k, 2*10^k+1], so the two counts agree
    plateau_ok = all(
        lr.count == hr.count
        for lr in low.rows
        for hr in high.rows
        if lr.k == hr.k
    )
    passed = recount_ok and low_ok and high_ok and anchor_ok and plateau_ok
    detail = {
        "low_subseq": "2*10^k+1",
        "high_subseq": "10^k",
        "low_rows": density_rows_payload(low.rows),
        "high_rows": density_rows_payload(high.rows),
        "low_anchor": frac_str(LOW_ANCHOR),
        "high_anchor": frac_str(HIGH_ANCHOR),
        "low_final_distance": frac_decimal(low_final),
        "high_final_distance": frac_decimal(high_final),
        "recount_agrees": recount_ok,
        "distances_strictly_decreasing": low_ok and high_ok,
        "plateau_counts_agree": plateau_ok,
        "anchor_tolerance_applied": k_low >= 5 or k_high >= 5,
    }
    return Claim("density-oscillation", passed, detail), low, high


def verify_counterexample(bound: int, seed: int = 0) -> VerifyOutcome:
    """Run all claims; requires ``bound >= MIN_VERIFY_BOUND``."""
    if bound < MIN_VERIFY_BOUND:
        raise ValueError(
            f"bound {bound} below the minimum {MIN_VERIFY_BOUND} needed for "
            "two witness terms and density tails"
        )
    expr = COUNTEREXAMPLE
    claims: list[Claim] = []

    order = order_bounds(expr, bound, h_max=5)
    claims.append(
        Claim(
            "order-three",
            order.upper == 3 and order.lower == 3 and order.witness == 21,
            {
                "upper": order.upper,
                "lower": order.lower,
                "witness": order.witness,
                "witness_fold": order.witness_fold,
                "bound": bound,
                "label": f"upper bound prefix-verified up to N={bound}",
            },
        )
    )

    gaps = complement_witnesses(expr, 2, GAP_SCAN_BOUND)
    certs_ok = all(representation_count(expr, 2, g) == 0 for g in gaps.gaps)
    claims.append(
        Claim(
            "pair-gap-family",
            gaps.gaps == EXPECTED_GAPS and not gaps.truncated and certs_ok,
            {
                "bound": GAP_SCAN_BOUND,
                "expected": list(EXPECTED_GAPS),
                "got": list(gaps.gaps),
                "certificates_verified": certs_ok,
            },
        )
    )

    density_claim, low, high = _density_claim(expr, bound)
    claims.append(density_claim)

    tail_rows = tuple(
        sorted(
            [r for r in low.rows if r.k >= 3] + [r for r in high.rows if r.k >= 3],
            key=lambda r: (r.n, r.k),
        )
    )
    merged = DensityReport(low.set_text, 1, tail_rows)
    lo_ratio, hi_ratio = window_extrema(merged, len(tail_rows))
    window_gap = hi_ratio - lo_ratio
    window_ok = window_gap > WINDOW_GAP_THRESHOLD
    claims.append(
        Claim(
            "window-nonconvergence",
            window_ok,
            {
                "tail_min": frac_str(lo_ratio),
                "tail_max": frac_str(hi_ratio),
                "gap_decimal": frac_decimal(window_gap),
                "threshold": frac_str(WINDOW_GAP_THRESHOLD),
                "verdict": NONCONVERGENCE_FLAG if window_ok else "window gap below threshold",
                "label": "empirical window estimate over merged tails, k >= 3",
            },
        )
    )

    k_top = low.rows[-1].k
    family = SubseqSpec(2, 10, 1, start=k_top - 1, count=2)
    sweep = random_stability_sweep(
        expr, 3, family, bound, SweepConfig(runs=SWEEP_RUNS, seed=seed)
    )
    claims.append(
        Claim(
            "stability-sweep",
            sweep.all_runs_survived,
            {
                "runs": SWEEP_RUNS,
                "seed": seed,
                "witnesses": list(sweep.terms),
                "element_ceiling": sweep.config.element_ceiling,
                "max_size": sweep.config.max_size,
                "all_runs_survived": sweep.all_runs_survived,
                "failing_runs": [r.run for r in sweep.runs if not r.all_survived],
            },
        )
    )

    return VerifyOutcome(
        bound=bound,
        seed=seed,
        claims=tuple(claims),
        passed=all(c.passed for c in claims),
    )
