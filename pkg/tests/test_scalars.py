from fractions import Fraction as F

import pytest

from bicheb.scalars import (
    Surd,
    exact_sqrt,
    is_square,
    parse_rational,
    rational_sqrt,
    reconstruct_rational,
    simplest_in_interval,
)


def test_parse_rational_forms():
    assert parse_rational("3/4") == F(3, 4)
    assert parse_rational("-2") == F(-2)
    assert parse_rational("0.01") == F(1, 100)
    assert parse_rational("1e-3") == F(1, 1000)
    assert parse_rational(" 5/10 ") == F(1, 2)


def test_is_square_and_sqrt():
    assert is_square(F(9, 4))
    assert rational_sqrt(F(9, 4)) == F(3, 2)
    assert not is_square(F(2))
    assert not is_square(F(-4))
    assert exact_sqrt(F(9, 4)) == F(3, 2)
    s = exact_sqrt(F(2))
    assert isinstance(s, Surd)
    assert s * s == 2


def test_surd_collapses_square_radicand():
    s = Surd(1, 2, F(9, 4))  # 1 + 2*sqrt(9/4) = 4
    assert s.is_rational and s.as_fraction() == 4


def test_surd_field_ops():
    a = Surd(1, 1, 5)  # 1 + sqrt(5)
    b = Surd(2, -1, 5)  # 2 - sqrt(5)
    assert a + b == Surd(3, 0, 5)
    assert a * b == Surd(-3, 1, 5)  # 2 - 5 + (2-1) sqrt5
    assert (a / b) * b == a
    assert a - a == 0
    assert (a ** 3) == a * a * a
    inv = 1 / a
    assert inv * a == 1


def test_surd_exact_comparisons():
    r2 = Surd(0, 1, 2)
    assert r2 > F(7, 5)  # sqrt2 = 1.4142... > 1.4
    assert r2 < F(3, 2)
    assert Surd(1, -1, 2) < 0  # 1 - sqrt2 < 0
    assert Surd(3, -2, 2) > 0  # 3 - 2 sqrt2 = 0.17...
    assert Surd(0, 1, 2).sign() == 1
    assert Surd(0, 0, 2) == 0


def test_surd_mixed_radicand_rejected():
    with pytest.raises(ValueError):
        Surd(0, 1, 2) + Surd(0, 1, 3)


def test_simplest_in_interval():
    assert simplest_in_interval(F(-1, 2), F(1, 3)) == 0
    assert simplest_in_interval(F(3, 10), F(34, 100)) == F(1, 3)
    assert simplest_in_interval(F(5, 2), F(7, 2)) == 3
    assert simplest_in_interval(F(2), F(3)) == F(5, 2)
    assert simplest_in_interval(F(-34, 100), F(-3, 10)) == F(-1, 3)
    v = simplest_in_interval(F(141, 100), F(142, 100))
    assert F(141, 100) < v < F(142, 100)
    assert v == F(99, 70) or v.denominator <= 70


def test_reconstruct_rational():
    assert reconstruct_rational(0.25) == F(1, 4)
    assert reconstruct_rational(float(F(-2))) == F(-2)
    assert reconstruct_rational(2.0000000000000004) == F(2)
    # irrational targets produce either nothing or a candidate that callers
    # must reject by exact evaluation
    cand = reconstruct_rational(2.8284271247461903)
    assert cand is None or cand != F(2828427, 1000000)
