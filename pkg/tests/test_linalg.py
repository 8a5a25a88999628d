import random
from fractions import Fraction as F

import pytest
import sympy

from semihyper.linalg import format_rational, identity, inverse, matmul, parse_rational, rank


@pytest.mark.parametrize(
    "text, value",
    [("1/3", F(1, 3)), ("1", F(1)), ("0", F(0)), (" 4/6 ", F(2, 3)), (5, F(5))],
)
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("bad", [0.5, "x", "1/0", None, True])
def test_parse_rational_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_rational(bad)


def test_format_rational():
    assert format_rational(F(2, 4)) == "1/2"
    assert format_rational(F(3)) == "3"
    assert format_rational(F(-1, 3)) == "-1/3"


def test_rank_small_cases():
    assert rank([[F(1, 2), F(1, 2)], [F(1, 2), F(1, 2)]]) == 1
    assert rank([[1, 1], [0, 0]]) == 1
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank(identity(4)) == 4
    # pivot-free column in the middle
    assert rank([[1, 0, 2], [2, 0, 4], [0, 0, 1]]) == 2


def test_rank_matches_sympy():
    rng = random.Random(7)
    for _ in range(150):
        rows, cols = rng.randint(1, 6), rng.randint(1, 6)
        m = [[F(rng.randint(-3, 3), rng.randint(1, 4)) for _ in range(cols)] for _ in range(rows)]
        # plant dependencies half the time
        if rows > 2 and rng.random() < 0.5:
            c = F(rng.randint(-2, 2), rng.randint(1, 3))
            m[-1] = [x + c * y for x, y in zip(m[0], m[1])]
        assert rank(m) == sympy.Matrix(m).rank()


def test_inverse_roundtrip():
    a = [[F(2, 3), F(1, 3)], [F(1, 3), F(2, 3)]]
    inv = inverse(a)
    assert inv == [[F(2), F(-1)], [F(-1), F(2)]]
    assert matmul(a, inv) == identity(2)


def test_inverse_singular():
    with pytest.raises(ZeroDivisionError):
        inverse([[1, 2], [2, 4]])
