"""Order bounds and finite-stability probes.

Lower bounds come with gap witnesses and are certificates for the infinite
set (truncation soundness).  Upper bounds are prefix facts only: "hA covers
[0, N]" says nothing beyond N, and every report labels them that way.
Witnesses and survivors are re-verified through the representation-counting
path, which shares no code with the shift-OR kernel.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .analysis import SubseqSpec
from .bitset import PrefixBitset
from .setexpr import Augment, SetExpr, materialize, to_text
from .sumset import iterate_sumset, pair_sumset, pairsum_contains, representation_count


class VerificationError(RuntimeError):
    """A certificate failed its independent re-check."""


@dataclass(frozen=True)
class OrderScanRow:
    h: int
    covered: bool
    first_gap: int | None


@dataclass(frozen=True)
class OrderReport:
    """Order bracket for a set on ``[0, bound]``.

    ``upper`` is the smallest h whose h-fold sumset covers the prefix
    (prefix-verified only); ``lower`` is the largest h whose (h-1)-fold
    sumset has a gap, and the gap witness certifies ``order > h - 1``
    for the infinite set.
    """

    set_text: str
    bound: int
    h_max: int
    upper: int | None
    lower: int
    witness: int | None
    witness_fold: int
    certified_lower: bool
    zero_in_set: bool
    scan: tuple[OrderScanRow, ...]


def order_bounds(expr: SetExpr, bound: int, h_max: int) -> OrderReport:
    """Scan ``h = 1..h_max`` for first full coverage and last gap.

    Once some hA covers the prefix (including 0, which forces 0 into the
    set), every higher fold covers it too, so the scan stops at the first
    covered h.
    """
    if h_max < 1:
        raise ValueError(f"h_max must be >= 1, got {h_max}")
    base = materialize(expr, bound)
    acc = PrefixBitset(bound, 1)  # 0-fold
    scan: list[OrderScanRow] = []
    upper: int | None = None
    gap = acc.first_gap()
    # a gap in jA certifies order > j, i.e. lower = j + 1
    lower, witness = (1, gap) if gap is not None else (0, None)
    for h in range(1, h_max + 1):
        acc = pair_sumset(acc, base, bound)
        covered = acc.is_full()
        first_gap = acc.first_gap()
        scan.append(OrderScanRow(h, covered, first_gap))
        if covered:
            upper = h
            break
        lower, witness = h + 1, first_gap
    if witness is not None and lower >= 2:
        if representation_count(expr, lower - 1, witness) != 0:
            raise VerificationError(
                f"gap witness {witness} has a {lower - 1}-fold representation"
            )
    return OrderReport(
        set_text=to_text(expr),
        bound=bound,
        h_max=h_max,
        upper=upper,
        lower=lower,
        witness=witness,
        witness_fold=lower - 1,
        certified_lower=witness is not None,
        zero_in_set=0 in base,
        scan=tuple(scan),
    )


@dataclass(frozen=True)
class TermVerdict:
    k: int
    n: int
    in_sumset: bool


@dataclass(frozen=True)
class StabilityReport:
    """Per-term membership of a witness family in ``(h-1)(A ∪ F)``.

    Survivors are exact certificates that the augmented set's order exceeds
    h-1, for the tested terms; nothing is claimed about other finite F.
    """

    set_text: str
    added: tuple[int, ...]
    h: int
    probe_fold: int
    family_text: str
    bound: int
    verdicts: tuple[TermVerdict, ...]
    survivors: tuple[int, ...]
    conclusion: str


def stability_probe(
    expr: SetExpr,
    extra: tuple[int, ...] | list[int],
    h: int,
    family: SubseqSpec,
    bound: int,
) -> StabilityReport:
    """Test which family terms stay outside ``(h-1)(A ∪ F)``.

    Decides membership through the kernel (one reverse-AND per term against
    the (h-2)-fold sumset), then re-verifies every survivor through
    representation counting.
    """
    if h < 2:
        raise ValueError(f"stability probe needs h >= 2, got {h}")
    terms = family.indexed_terms()
    if terms[-1][1] > bound:
        raise ValueError(
            f"family term {terms[-1][1]} exceeds the probe bound {bound}"
        )
    extra = tuple(sorted(set(extra)))
    aug_expr: SetExpr = Augment(expr, extra) if extra else expr
    aug = materialize(aug_expr, bound)
    partial = iterate_sumset(aug_expr, h - 2, bound)
    verdicts = tuple(
        TermVerdict(k, n, pairsum_contains(partial.bits, aug, n)) for k, n in terms
    )
    survivors = tuple(v.n for v in verdicts if not v.in_sumset)
    for n in survivors:
        if representation_count(aug_expr, h - 1, n) != 0:
            raise VerificationError(
                f"survivor {n} has an {h - 1}-fold representation in the augmented set"
            )
    if survivors:
        conclusion = (
            f"order {h - 1} ruled out for the augmented set: "
            f"{len(survivors)} witness(es) below {bound} have no {h - 1}-fold sum"
        )
    else:
        conclusion = (
            f"all tested terms lie in the {h - 1}-fold sumset; "
            f"order {h - 1} is not ruled out by this family up to {bound}"
        )
    return StabilityReport(
        set_text=to_text(expr),
        added=extra,
        h=h,
        probe_fold=h - 1,
        family_text=str(family),
        bound=bound,
        verdicts=verdicts,
        survivors=survivors,
        conclusion=conclusion,
    )


@dataclass(frozen=True)
class SweepConfig:
    """Shape of the randomized augmentation sweep."""

    runs: int = 100
    seed: int = 0
    element_ceiling: int = 1000
    max_size: int = 5


@dataclass(frozen=True)
class SweepRun:
    run: int
    added: tuple[int, ...]
    survivors: tuple[int, ...]
    all_survived: bool


@dataclass(frozen=True)
class SweepReport:
    set_text: str
    h: int
    family_text: str
    terms: tuple[int, ...]
    bound: int
    config: SweepConfig
    runs: tuple[SweepRun, ...]
    all_runs_survived: bool


def random_stability_sweep(
    expr: SetExpr,
    h: int,
    family: SubseqSpec,
    bound: int,
    config: SweepConfig = SweepConfig(),
) -> SweepReport:
    """Probe stability against ``runs`` random finite augmentations.

    Draws F as a uniform sample of up to ``max_size`` elements from
    ``[0, element_ceiling]``, seeded for reproducibility, and records which
    family terms survive each augmented probe.
    """
    if config.runs < 1:
        raise ValueError(f"sweep needs at least one run, got {config.runs}")
    rng = random.Random(config.seed)
    terms = tuple(n for _, n in family.indexed_terms())
    runs: list[SweepRun] = []
    for i in range(config.runs):
        size = rng.randint(0, config.max_size)
        added = tuple(sorted(rng.sample(range(config.element_ceiling + 1), size)))
        probe = stability_probe(expr, added, h, family, bound)
        runs.append(
            SweepRun(i, added, probe.survivors, probe.survivors == terms)
        )
    return SweepReport(
        set_text=to_text(expr),
        h=h,
        family_text=str(family),
        terms=terms,
        bound=bound,
        config=config,
        runs=tuple(runs),
        all_runs_survived=all(r.all_survived for r in runs),
    )
