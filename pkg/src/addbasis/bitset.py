"""Dense bit-vector prefixes of subsets of the naturals.

A :class:`PrefixBitset` pins down a set intersected with ``[0, N]`` exactly:
bit ``i`` is set iff ``i`` belongs to the set, for every ``i <= N``.  The bit
vector is a single Python integer, so shifts, ORs and popcounts run in C,
which is what makes the shift-OR sumset kernel fast enough at desk scale.
"""

from __future__ import annotations

from typing import Iterator

# Set-bit offsets per byte value, for streaming members out of a large mask.
# Peeling bits off the integer directly would copy the whole mask per bit.
_BYTE_BITS = tuple(tuple(b for b in range(8) if (v >> b) & 1) for v in range(256))


def full_mask(bound: int) -> int:
    """All bits ``0..bound`` set."""
    if bound < 0:
        raise ValueError(f"bound must be >= 0, got {bound}")
    return (1 << (bound + 1)) - 1


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set-bit indices of ``mask`` in ascending order."""
    if mask < 0:
        raise ValueError("mask must be nonnegative")
    buf = mask.to_bytes((mask.bit_length() + 7) // 8, "little")
    for i, byte in enumerate(buf):
        if byte:
            base = i << 3
            for off in _BYTE_BITS[byte]:
                yield base + off


class PrefixBitset:
    """Exact membership of a set restricted to ``[0, bound]``.

    Immutable after construction; safe to share between readers.  Point
    queries go through a lazily built bytes view so ``n in bits`` is O(1)
    instead of shifting the whole mask.
    """

    __slots__ = ("bound", "mask", "_buf")

    def __init__(self, bound: int, mask: int):
        if bound < 0:
            raise ValueError(f"bound must be >= 0, got {bound}")
        if mask < 0 or mask >> (bound + 1):
            raise ValueError("mask has bits above the stated bound")
        self.bound = bound
        self.mask = mask
        self._buf: bytes | None = None

    def _bytes(self) -> bytes:
        buf = self._buf
        if buf is None:
            buf = self.mask.to_bytes(self.bound // 8 + 1, "little")
            self._buf = buf
        return buf

    def __contains__(self, i: int) -> bool:
        if i < 0 or i > self.bound:
            return False
        buf = self._bytes()
        return bool((buf[i >> 3] >> (i & 7)) & 1)

    def members(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def to_list(self) -> list[int]:
        return list(iter_bits(self.mask))

    def popcount(self) -> int:
        return self.mask.bit_count()

    def count_range(self, lo: int, hi: int) -> int:
        """Number of members in ``[lo, hi]``; requires ``hi <= bound``."""
        if hi > self.bound:
            raise ValueError(f"hi={hi} exceeds bound {self.bound}")
        lo = max(lo, 0)
        if lo > hi:
            return 0
        return ((self.mask >> lo) & full_mask(hi - lo)).bit_count()

    def restrict(self, bound: int) -> "PrefixBitset":
        """The same set windowed to a smaller ``[0, bound]``."""
        if bound > self.bound:
            raise ValueError(f"cannot extend bound {self.bound} to {bound}")
        return PrefixBitset(bound, self.mask & full_mask(bound))

    def is_full(self) -> bool:
        return self.mask == full_mask(self.bound)

    def complement_mask(self) -> int:
        """Bits of ``[0, bound]`` that are NOT members."""
        return full_mask(self.bound) & ~self.mask

    def first_gap(self) -> int | None:
        """Smallest non-member in ``[0, bound]``, or None if full."""
        comp = self.complement_mask()
        if comp == 0:
            return None
        return (comp & -comp).bit_length() - 1

    def __len__(self) -> int:
        return self.popcount()

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PrefixBitset)
            and self.bound == other.bound
            and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.bound, self.mask))

    def __repr__(self) -> str:
        n = self.popcount()
        if n <= 16:
            body = "{" + ",".join(str(i) for i in self.members()) + "}"
        else:
            body = f"<{n} members>"
        return f"PrefixBitset(bound={self.bound}, {body})"
