"""Constructive Kraft-Chaitin coding: prefix-free codewords with prescribed lengths.

Any (possibly streamed) sequence of lengths n_1, n_2, ... whose mass
sum(2**-n_i) never exceeds 1 admits a prefix-free code with exactly those
lengths.  The allocator keeps the free part of [0, 1) as disjoint maximal
dyadic intervals, each named by the bitstring whose extensions it
contains, and always issues the leftmost fitting codeword, splitting a
larger interval lazily when needed.

Leftmost allocation keeps the free intervals strictly increasing in size
from left to right, which guarantees a fitting interval exists whenever
the mass precondition holds -- so the only failure mode is a genuinely
invalid length sequence, reported as KraftExceeded.
"""

from __future__ import annotations

from typing import Iterable

from .bits import Dyadic, dyadic_sum


class KraftExceeded(Exception):
    """The requested length would push the Kraft sum past 1."""

    def __init__(self, length: int, index: int | None = None):
        at = "" if index is None else f" at index {index}"
        super().__init__(f"length {length}{at} exceeds the remaining Kraft mass")
        self.length = length
        self.index = index


class CodeAllocator:
    """Sequential, stateful codeword allocator; callers serialize access."""

    def __init__(self):
        # Free intervals left to right; the leftmost-allocation invariant
        # keeps their sizes strictly increasing, so this list stays short.
        self._free: list[str] = [""]
        self._consumed = Dyadic.zero()
        self._issued = 0

    @property
    def consumed_mass(self) -> Dyadic:
        return self._consumed

    @property
    def issued(self) -> int:
        return self._issued

    def assign_next(self, n: int) -> str:
        """Leftmost free codeword of length n; raises KraftExceeded when none fits."""
        if n < 0:
            raise ValueError("codeword length must be >= 0")
        mass = Dyadic.pow2(-n)
        if self._consumed + mass > Dyadic.one():
            raise KraftExceeded(n)
        for i, interval in enumerate(self._free):
            if len(interval) <= n:
                del self._free[i]
                codeword = interval + "0" * (n - len(interval))
                # Right siblings along the split path, smallest first, all
                # positioned between the codeword and the old neighbours.
                siblings = [
                    interval + "0" * j + "1"
                    for j in range(n - len(interval) - 1, -1, -1)
                ]
                self._free[i:i] = siblings
                self._consumed = self._consumed + mass
                self._issued += 1
                return codeword
        raise AssertionError("mass available but no interval fits")  # unreachable

    def assign_all(self, lengths: Iterable[int]) -> list[str]:
        """Element-wise assign_next; KraftExceeded carries the offending index."""
        out = []
        for i, n in enumerate(lengths):
            try:
                out.append(self.assign_next(n))
            except KraftExceeded as exc:
                raise KraftExceeded(exc.length, index=i) from None
        return out


def assign_all(lengths: Iterable[int]) -> list[str]:
    """Allocate a whole sequence against a fresh allocator."""
    return CodeAllocator().assign_all(lengths)


def kraft_mass(lengths: Iterable[int]) -> Dyadic:
    return dyadic_sum(Dyadic.pow2(-n) for n in lengths)
