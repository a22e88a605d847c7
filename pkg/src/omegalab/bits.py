"""Binary strings, the bijection between strings and integers, and exact arithmetic.

Bitstrings are plain Python ``str`` values over the alphabet {'0', '1'};
the empty string is a valid value.  Bit order is most-significant-first,
matching the usual reading of a binary expansion ``0.b1 b2 b3 ...``.

``encode_b``/``decode_n`` implement the standard pairing between natural
numbers and bitstrings: ``encode_b(n)`` is the binary representation of
``n + 1`` with its leading 1 removed, so 0 <-> "", 1 <-> "0", 2 <-> "1",
3 <-> "00", ...  ``decode_n`` is the inverse, and also serves as the
length-lexicographic rank of a string.

``Dyadic`` is an exact number num / 2**exp.  Plain ``fractions.Fraction``
covers the general rational case; we alias it as ``Rational``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Rational = Fraction

_BITSET = frozenset("01")


def check_bits(s: str) -> str:
    """Validate that s contains only '0'/'1' characters; returns s."""
    if not _BITSET.issuperset(s):
        raise ValueError(f"not a bitstring: {s!r}")
    return s


def encode_b(n: int) -> str:
    """Bitstring assigned to the non-negative integer n (0 -> empty string)."""
    if n < 0:
        raise ValueError("encode_b requires n >= 0")
    return bin(n + 1)[3:]


def decode_n(x: str) -> int:
    """Integer assigned to the bitstring x; inverse of encode_b.

    decode_n also ranks strings length-lexicographically: x comes before y
    in shortlex order iff decode_n(x) < decode_n(y).
    """
    check_bits(x)
    return int("1" + x, 2) - 1


def is_proper_prefix(x: str, y: str) -> bool:
    return len(x) < len(y) and y.startswith(x)


def prefix_free(strings: Iterable[str]) -> bool:
    """True iff no string in the collection is a proper prefix of another.

    Sorts lexicographically and checks adjacent pairs, which is sound: if a
    proper prefix pair exists anywhere, an adjacent sorted pair exhibits one.
    """
    ordered = sorted(strings)
    return not any(
        is_proper_prefix(a, b) for a, b in zip(ordered, ordered[1:])
    )


class Dyadic:
    """Exact dyadic rational num / 2**exp with exp >= 0.

    Kept fully reduced (num odd, or exp == 0) so equality is structural.
    All arithmetic is exact; there is no rounding anywhere.
    """

    __slots__ = ("num", "exp")

    def __init__(self, num: int, exp: int = 0):
        if exp < 0:
            raise ValueError("exponent must be non-negative")
        while exp > 0 and num % 2 == 0:
            num //= 2
            exp -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic values are immutable")

    @classmethod
    def zero(cls) -> "Dyadic":
        return cls(0, 0)

    @classmethod
    def one(cls) -> "Dyadic":
        return cls(1, 0)

    @classmethod
    def pow2(cls, k: int) -> "Dyadic":
        """Exactly 2**k, for any integer k (negative k gives 1 / 2**-k)."""
        if k >= 0:
            return cls(1 << k, 0)
        return cls(1, -k)

    @property
    def den(self) -> int:
        return 1 << self.exp

    @staticmethod
    def _coerce(other) -> "Dyadic":
        if isinstance(other, Dyadic):
            return other
        if isinstance(other, int):
            return Dyadic(other, 0)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other) -> "Dyadic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        e = max(self.exp, o.exp)
        return Dyadic(
            (self.num << (e - self.exp)) + (o.num << (e - o.exp)), e
        )

    __radd__ = __add__

    def __sub__(self, other) -> "Dyadic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + Dyadic(-o.num, o.exp)

    def __rsub__(self, other) -> "Dyadic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other) -> "Dyadic":
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return Dyadic(self.num * o.num, self.exp + o.exp)

    __rmul__ = __mul__

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.num, self.exp)

    def _cmp_key(self, other: "Dyadic") -> tuple[int, int]:
        return self.num << other.exp, other.num << self.exp

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.exp == o.exp

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a < b

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a <= b

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a > b

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self._cmp_key(o)
        return a >= b

    def __hash__(self) -> int:
        return hash((self.num, self.exp))

    def __bool__(self) -> bool:
        return self.num != 0

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Dyadic({self.num}, {self.exp})"


def dyadic_sum(terms: Iterable[Dyadic]) -> Dyadic:
    """Exact sum of dyadics; the empty sum is 0."""
    total = Dyadic.zero()
    for t in terms:
        total = total + t
    return total


def rational_div(a: Dyadic, b: Dyadic) -> Fraction:
    """Exact reduced ratio of two dyadics; raises ZeroDivisionError for b = 0."""
    if b.num == 0:
        raise ZeroDivisionError("division by zero dyadic")
    return Fraction(a.num * b.den, a.den * b.num)


def format_exact(value) -> str:
    """Render an exact number as "num/den" (never decimal)."""
    if isinstance(value, Dyadic):
        return str(value)
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return f"{value}/1"
    raise TypeError(f"not an exact number: {value!r}")
