from fractions import Fraction

import pytest
from hypothesis import given

from charpoly.scalars import QI, format_scalar, parse_scalar
from conftest import rationals


def test_parse_literals():
    assert parse_scalar("3/4") == Fraction(3, 4)
    assert parse_scalar("0.1") == Fraction(1, 10)
    assert parse_scalar("1+2i") == QI(1, 2)
    assert parse_scalar("-1/2-i") == QI(Fraction(-1, 2), -1)
    assert parse_scalar("i") == QI(0, 1)
    assert parse_scalar("2.5e-1i") == QI(0, Fraction(1, 4))


def test_parse_rejects_garbage():
    for bad in ("", "1//2", "abc", "1+2k"):
        with pytest.raises(ValueError):
            parse_scalar(bad)


@given(rationals(), rationals())
def test_format_parse_roundtrip(a, b):
    z = QI(a, b)
    back = parse_scalar(format_scalar(z))
    assert back == z or (b == 0 and back == a)


@given(rationals(), rationals(), rationals(), rationals())
def test_gaussian_rational_field(a, b, c, d):
    x, y = QI(a, b), QI(c, d)
    assert complex(x * y) == pytest.approx(complex(x) * complex(y))
    if y != 0:
        assert (x / y) * y == x
