"""Counting function, density sequences along subsequences, and trend probes.

The counting function of a set counts elements in ``[1, n]``; zero never
counts.  Density rows keep ratios as exact rationals so reports are
bit-stable across platforms; decimals are rendered only at serialization.
Window extrema over finite tails stand in for liminf/limsup and are always
labeled as empirical estimates, never as limits.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .setexpr import SemanticError, SetExpr, U64_MAX, materialize, to_text
from .sumset import iterate_sumset


@dataclass(frozen=True)
class SubseqSpec:
    """Index sequence ``n_k = a*base^k + c``, or ``a*k + c`` when base is None.

    Terms run over ``k = start .. start + count - 1`` and must be >= 1 and
    strictly increasing.
    """

    a: int = 1
    base: int | None = None
    c: int = 0
    start: int = 1
    count: int = 1

    def __post_init__(self):
        if self.a < 0:
            raise SemanticError(f"subsequence coefficient must be >= 0, got {self.a}")
        if self.base is not None and self.base < 2:
            raise SemanticError(f"subsequence base must be >= 2, got {self.base}")
        if self.start < 0:
            raise SemanticError(f"subsequence start must be >= 0, got {self.start}")
        if self.count < 1:
            raise SemanticError(f"subsequence count must be >= 1, got {self.count}")

    def term(self, k: int) -> int:
        if self.base is None:
            return self.a * k + self.c
        return self.a * self.base**k + self.c

    def indexed_terms(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(k, n_k)``; validates positivity, growth and 64-bit range."""
        pairs = []
        prev = 0
        for k in range(self.start, self.start + self.count):
            n = self.term(k)
            if n < 1:
                raise SemanticError(f"subsequence term n_{k} = {n} must be >= 1")
            if n > U64_MAX:
                raise OverflowError(
                    f"subsequence term n_{k} exceeds the 64-bit natural range"
                )
            if pairs and n <= prev:
                raise SemanticError(
                    f"subsequence terms must be strictly increasing, n_{k} = {n}"
                )
            pairs.append((k, n))
            prev = n
        return tuple(pairs)

    def __str__(self) -> str:
        head = f"{self.a}*" if self.a != 1 else ""
        body = "k" if self.base is None else f"{self.base}^k"
        if self.c > 0:
            tail = f"+{self.c}"
        elif self.c < 0:
            tail = str(self.c)
        else:
            tail = ""
        return f"{head}{body}{tail}"


_SUBSEQ_RE = re.compile(r"^(?:(\d+)\*)?(?:(\d+)\^k|k)(?:([+-])(\d+))?$")


def parse_subseq(text: str, start: int = 1, count: int = 1) -> SubseqSpec:
    """Parse the mini-grammar ``a*b^k+c`` | ``a*k+c`` | ``b^k``."""
    squeezed = re.sub(r"\s+", "", text)
    m = _SUBSEQ_RE.match(squeezed)
    if m is None:
        raise SemanticError(f"cannot parse subsequence {text!r}")
    a_s, base_s, sign, c_s = m.groups()
    a = int(a_s) if a_s is not None else 1
    base = int(base_s) if base_s is not None else None
    c = int(c_s) if c_s is not None else 0
    if sign == "-":
        c = -c
    return SubseqSpec(a=a, base=base, c=c, start=start, count=count)


@dataclass(frozen=True)
class DensityRow:
    k: int
    n: int
    count: int
    ratio: Fraction


@dataclass(frozen=True)
class DensityReport:
    """Counting-function samples of a t-fold sumset along a subsequence."""

    set_text: str
    fold: int
    rows: tuple[DensityRow, ...]
    min_ratio: Fraction = field(init=False)
    max_ratio: Fraction = field(init=False)

    def __post_init__(self):
        if not self.rows:
            raise ValueError("density report needs at least one row")
        ratios = [r.ratio for r in self.rows]
        object.__setattr__(self, "min_ratio", min(ratios))
        object.__setattr__(self, "max_ratio", max(ratios))


def counting(expr: SetExpr, n: int) -> int:
    """Elements of the set in ``[1, n]``; zero is excluded by definition."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 0
    return materialize(expr, n).count_range(1, n)


def density_sequence(expr: SetExpr, t: int, subseq: SubseqSpec) -> DensityReport:
    """Rows ``(k, n_k, (tA)(n_k), ratio)`` with exact rational ratios."""
    if t < 0:
        raise ValueError(f"fold count must be >= 0, got {t}")
    terms = subseq.indexed_terms()
    top = terms[-1][1]
    result = iterate_sumset(expr, t, top)
    rows = []
    for k, n in terms:
        cnt = result.bits.count_range(1, n)
        rows.append(DensityRow(k, n, cnt, Fraction(cnt, n)))
    return DensityReport(to_text(expr), t, tuple(rows))


def merge_density_reports(a: DensityReport, b: DensityReport) -> DensityReport:
    """Interleave two reports of the same set and fold, ordered by n."""
    if a.set_text != b.set_text or a.fold != b.fold:
        raise ValueError("can only merge reports of the same set and fold")
    rows = sorted(a.rows + b.rows, key=lambda r: (r.n, r.k))
    return DensityReport(a.set_text, a.fold, tuple(rows))


def window_extrema(report: DensityReport, tail: int) -> tuple[Fraction, Fraction]:
    """Min and max ratio over the last ``tail`` rows.

    A finite stand-in for liminf/limsup: an estimate over the sampled window,
    never a convergence claim.
    """
    if tail < 1:
        raise ValueError(f"tail must be >= 1, got {tail}")
    if tail > len(report.rows):
        raise ValueError(f"tail {tail} exceeds row count {len(report.rows)}")
    ratios = [r.ratio for r in report.rows[-tail:]]
    return min(ratios), max(ratios)


@dataclass(frozen=True)
class ProbeThresholds:
    """Cutoffs for the empirical trend verdicts."""

    zero_ratio: Fraction = Fraction(1, 100)


@dataclass(frozen=True)
class HypothesisReport:
    """Trend samples for the two classic sufficient conditions for finite
    stability of a basis of claimed order h: the (h-2)-fold density heading
    to zero and the (h-1)-fold density staying below one.

    The verdicts are pure functions of the rows and describe the sampled
    window only; h2_ratio_trending_to_zero = False means "does not decay
    within this window", not "the limit is nonzero".
    """

    h: int
    h2_rows: tuple[DensityRow, ...]
    h1_rows: tuple[DensityRow, ...]
    h2_ratio_trending_to_zero: bool
    h2_tail_max: Fraction
    h1_ratio_max: Fraction
    h1_strictly_below_one: bool


def hypothesis_probe(
    expr: SetExpr,
    h: int,
    subseq: SubseqSpec,
    thresholds: ProbeThresholds = ProbeThresholds(),
) -> HypothesisReport:
    """Sample ``(h-2)A`` and ``(h-1)A`` densities along a subsequence.

    The zero-trend verdict requires the last ratio to undercut both the first
    ratio and ``thresholds.zero_ratio``; slow decays report False at desk
    scale even when the true limit is zero.
    """
    if h < 3:
        raise ValueError(f"the probe needs a claimed order h >= 3, got {h}")
    low = density_sequence(expr, h - 2, subseq)
    high = density_sequence(expr, h - 1, subseq)
    low_ratios = [r.ratio for r in low.rows]
    tail = low_ratios[-max(1, len(low_ratios) // 2) :]
    trending = low_ratios[-1] < low_ratios[0] and low_ratios[-1] < thresholds.zero_ratio
    h1_max = max(r.ratio for r in high.rows)
    return HypothesisReport(
        h=h,
        h2_rows=low.rows,
        h1_rows=high.rows,
        h2_ratio_trending_to_zero=trending,
        h2_tail_max=max(tail),
        h1_ratio_max=h1_max,
        h1_strictly_below_one=h1_max < 1,
    )
