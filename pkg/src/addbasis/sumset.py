"""Bounded iterated sumsets over ``[0, N]`` via bit-parallel shift-OR.

Truncation soundness: every element is nonnegative, so any representation of
``n <= N`` uses only addends ``<= N``.  Computing with prefixes ``A ∩ [0, N]``
is therefore exact for the infinite set, and gap certificates found below the
bound are valid unconditionally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bitset import PrefixBitset, full_mask, iter_bits
from .setexpr import SetExpr, materialize

# Representation counters saturate here; a returned value equal to the cap
# means "at least this many".
SATURATION_LIMIT = 2**64 - 1


@dataclass(frozen=True)
class SumsetResult:
    """The h-fold sumset of a set, windowed to ``[0, bound]``."""

    h: int
    bound: int
    bits: PrefixBitset


@dataclass(frozen=True)
class WitnessList:
    """Ascending gaps of an h-fold sumset in ``[0, bound]``.

    Each gap certifies that the value has no representation as a sum of h
    elements of the underlying infinite set.
    """

    h: int
    bound: int
    gaps: tuple[int, ...]
    truncated: bool
    limit: int | None


def pair_sumset(
    p: PrefixBitset, q: PrefixBitset, bound: int, chunk_size: int | None = None
) -> PrefixBitset:
    """Exact ``(P + Q) ∩ [0, bound]``.

    ORs one operand's bit vector shifted by each member of the other; the
    kernel iterates over the sparser side since cost is popcount x words
    (tie broken toward the left operand; the result is identical either way).
    ``chunk_size`` groups the shift loop into independently accumulated
    partials, which must be, and is, bit-identical to the single pass.
    """
    if bound < 0:
        raise ValueError(f"bound must be >= 0, got {bound}")
    if p.bound < bound or q.bound < bound:
        raise ValueError(
            f"bound mismatch: operands bounded at {p.bound} and {q.bound}, need {bound}"
        )
    window = full_mask(bound)
    pm = p.mask & window
    qm = q.mask & window
    if pm.bit_count() <= qm.bit_count():
        outer, inner = pm, qm
    else:
        outer, inner = qm, pm
    if chunk_size is None:
        acc = 0
        for a in iter_bits(outer):
            acc |= inner << a
    else:
        if chunk_size < 1:
            raise ValueError(f"chunk_size must be >= 1, got {chunk_size}")
        acc = 0
        partial = 0
        filled = 0
        for a in iter_bits(outer):
            partial |= inner << a
            filled += 1
            if filled == chunk_size:
                acc |= partial
                partial = 0
                filled = 0
        acc |= partial
    return PrefixBitset(bound, acc & window)


def iterate_sumset(
    expr: SetExpr,
    h: int,
    bound: int,
    *,
    square_and_multiply: bool = False,
    chunk_size: int | None = None,
) -> SumsetResult:
    """Exact ``hA ∩ [0, bound]``; ``h = 0`` yields ``{0}``.

    Default strategy folds left-to-right with h-1 pair applications;
    ``square_and_multiply`` doubles fold counts instead.  Both are
    bit-identical.
    """
    if h < 0:
        raise ValueError(f"fold count must be >= 0, got {h}")
    base = materialize(expr, bound)
    if h == 0:
        return SumsetResult(0, bound, PrefixBitset(bound, 1))
    if square_and_multiply:
        acc = PrefixBitset(bound, 1)
        sq = base
        e = h
        while e:
            if e & 1:
                acc = pair_sumset(acc, sq, bound, chunk_size)
            e >>= 1
            if e:
                sq = pair_sumset(sq, sq, bound, chunk_size)
    else:
        acc = base
        for _ in range(h - 1):
            acc = pair_sumset(acc, base, bound, chunk_size)
    return SumsetResult(h, bound, acc)


def pairsum_contains(p: PrefixBitset, q: PrefixBitset, n: int) -> bool:
    """Decide ``n in P + Q`` without materializing the sumset.

    ANDs P against Q reversed about n: the intersection is nonempty exactly
    when some split n = a + b hits both sets.  One big-integer AND instead of
    a full kernel run, so per-term probes stay cheap.
    """
    if n < 0:
        return False
    if p.bound < n or q.bound < n:
        raise ValueError(
            f"bound mismatch: operands bounded at {p.bound} and {q.bound}, need {n}"
        )
    qm = q.mask & full_mask(n)
    reversed_q = int(format(qm, f"0{n + 1}b")[::-1], 2)
    return (p.mask & reversed_q) != 0


def representation_count(expr: SetExpr, h: int, n: int) -> int:
    """Number of ORDERED h-tuples of elements summing to ``n``.

    Dynamic-programming convolution over the exact prefix, independent of the
    shift-OR kernel; positive iff ``n`` lies in the h-fold sumset.  The count
    saturates at ``SATURATION_LIMIT``.
    """
    if h < 1:
        raise ValueError(f"fold count must be >= 1, got {h}")
    if n < 0:
        raise ValueError(f"target must be >= 0, got {n}")
    bits = materialize(expr, n)
    if h == 1:
        return 1 if n in bits else 0
    elems = bits.to_list()
    vec = [0] * (n + 1)
    for a in elems:
        vec[a] = 1
    for _ in range(h - 2):
        nxt = [0] * (n + 1)
        for a in elems:
            for m in range(a, n + 1):
                nxt[m] += vec[m - a]
        vec = nxt
    total = 0
    for a in elems:
        total += vec[n - a]
    return min(total, SATURATION_LIMIT)


def complement_witnesses(
    expr: SetExpr, h: int, bound: int, limit: int | None = None
) -> WitnessList:
    """Ascending gaps of ``hA`` in ``[0, bound]``, truncated at ``limit``."""
    if limit is not None and limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    result = iterate_sumset(expr, h, bound)
    gaps: list[int] = []
    truncated = False
    for n in iter_bits(result.bits.complement_mask()):
        if limit is not None and len(gaps) == limit:
            truncated = True
            break
        gaps.append(n)
    return WitnessList(h, bound, tuple(gaps), truncated, limit)
