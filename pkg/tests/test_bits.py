from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omegalab.bits import (
    Dyadic,
    check_bits,
    decode_n,
    dyadic_sum,
    encode_b,
    format_exact,
    is_proper_prefix,
    prefix_free,
    rational_div,
)


def all_strings_up_to(n):
    for length in range(n + 1):
        for i in range(1 << length):
            yield format(i, f"0{length}b") if length else ""


class TestCoding:
    def test_encode_examples(self):
        assert encode_b(0) == ""
        assert encode_b(1) == "0"
        assert encode_b(2) == "1"
        assert encode_b(3) == "00"
        assert encode_b(6) == "11"

    def test_decode_examples(self):
        assert decode_n("") == 0
        assert decode_n("0") == 1
        assert decode_n("1") == 2
        assert decode_n("11") == 6
        assert decode_n("10") == 5

    def test_roundtrip_exhaustive(self):
        for n in range(1 << 16):
            assert decode_n(encode_b(n)) == n

    def test_length_formula(self):
        for n in range(1 << 12):
            assert len(encode_b(n)) == (n + 1).bit_length() - 1

    def test_shortlex_rank(self):
        # decode_n enumerates strings in length-lexicographic order.
        ordered = sorted(all_strings_up_to(12), key=lambda s: (len(s), s))
        assert [decode_n(s) for s in ordered] == list(range(len(ordered)))

    @given(st.integers(min_value=0, max_value=10**30))
    def test_roundtrip_random(self, n):
        assert decode_n(encode_b(n)) == n

    def test_rejects_non_bits(self):
        with pytest.raises(ValueError):
            decode_n("012")
        with pytest.raises(ValueError):
            check_bits("abc")


class TestPrefixHelpers:
    def test_proper_prefix(self):
        assert is_proper_prefix("0", "01")
        assert not is_proper_prefix("01", "01")
        assert not is_proper_prefix("1", "01")

    def test_prefix_free(self):
        assert prefix_free(["0", "10", "11"])
        assert not prefix_free(["0", "01"])
        assert not prefix_free(["", "1"])
        assert prefix_free([])


dyadics = st.builds(
    Dyadic,
    st.integers(min_value=-(10**12), max_value=10**12),
    st.integers(min_value=0, max_value=40),
)


class TestDyadic:
    def test_sum_examples(self):
        assert dyadic_sum([Dyadic(1, 1), Dyadic(1, 2)]) == Dyadic(3, 2)
        assert dyadic_sum([]) == Dyadic.zero()

    def test_geometric_identity(self):
        for n in range(1, 40):
            total = dyadic_sum(Dyadic.pow2(-k) for k in range(1, n + 1))
            assert total == Dyadic.one() - Dyadic.pow2(-n)

    def test_canonical_equality(self):
        assert Dyadic(2, 1) == Dyadic(1, 0)
        assert Dyadic(4, 2) == Dyadic(1, 0)
        assert Dyadic(0, 7) == Dyadic.zero()
        assert Dyadic(6, 1) == Dyadic(3, 0)

    def test_ordering(self):
        assert Dyadic(1, 2) < Dyadic(1, 1)
        assert Dyadic(3, 2) > Dyadic(1, 1)
        assert Dyadic(1, 1) <= 1
        assert Dyadic(3, 1) >= 1

    def test_pow2(self):
        assert Dyadic.pow2(3) == Dyadic(8, 0)
        assert Dyadic.pow2(-3) == Dyadic(1, 3)

    def test_str(self):
        assert str(Dyadic(3, 2)) == "3/4"
        assert str(Dyadic.zero()) == "0/1"
        assert str(Dyadic(2, 0)) == "2/1"

    def test_immutability(self):
        d = Dyadic(1, 1)
        with pytest.raises(AttributeError):
            d.num = 5

    @given(dyadics, dyadics)
    def test_exact_add_sub(self, a, b):
        assert (a + b) - b == a

    @given(dyadics, dyadics)
    def test_commutative(self, a, b):
        assert a + b == b + a
        assert a * b == b * a

    @given(dyadics)
    def test_fraction_agrees(self, a):
        assert a.to_fraction() == Fraction(a.num, a.den)


class TestRationalDiv:
    def test_examples(self):
        assert rational_div(Dyadic(1, 2), Dyadic(3, 2)) == Fraction(1, 3)
        assert rational_div(Dyadic(3, 3), Dyadic(7, 3)) == Fraction(3, 7)

    @given(dyadics.filter(lambda d: d.num != 0))
    def test_self_division(self, x):
        assert rational_div(x, x) == Fraction(1)

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            rational_div(Dyadic(1, 1), Dyadic.zero())


def test_format_exact():
    assert format_exact(Dyadic(3, 2)) == "3/4"
    assert format_exact(Fraction(2, 6)) == "1/3"
    assert format_exact(5) == "5/1"
    with pytest.raises(TypeError):
        format_exact(0.5)
