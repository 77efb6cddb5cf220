from fractions import Fraction

import pytest
from hypothesis import given, settings

from virasoro_engine.errors import InvalidInputError, WindowError
from virasoro_engine.linalg import Subspace, determinant, nullspace, rank, rref
from virasoro_engine.models import Truncation
from virasoro_engine.scalars import as_scalar, format_scalar, parse_scalar, parse_scalar_list, rational_sqrt

from .conftest import rationals


@pytest.mark.parametrize(
    "text, value",
    [("3", Fraction(3)), ("-1/2", Fraction(-1, 2)), ("+4/6", Fraction(2, 3)), (" 0 ", Fraction(0))],
)
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1.5", "1/0", "a", "1/-2", ""])
def test_parse_scalar_rejects(text):
    with pytest.raises(InvalidInputError):
        parse_scalar(text)


def test_as_scalar_rejects_booleans_and_floats():
    with pytest.raises(InvalidInputError):
        as_scalar(True)
    with pytest.raises(InvalidInputError):
        as_scalar(0.5)


@settings(max_examples=100)
@given(rationals(max_num=50, max_den=30))
def test_format_is_canonical(value):
    text = format_scalar(value)
    assert parse_scalar(text) == value
    assert ("/" in text) == (value.denominator != 1)


def test_parse_scalar_list():
    assert parse_scalar_list("1,-1/2, 3") == (Fraction(1), Fraction(-1, 2), Fraction(3))
    assert parse_scalar_list("") == ()


def test_rational_sqrt():
    assert rational_sqrt(Fraction(25, 36)) == Fraction(5, 6)
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


def test_truncation_parse():
    assert Truncation.parse("6,4,6") == Truncation(D=6, L=4, K=6)
    assert Truncation.parse("4, 4, 5").label() == "4,4,5"
    with pytest.raises(InvalidInputError):
        Truncation.parse("6,4")


def test_rref_rank_and_nullspace():
    rows = [{0: Fraction(1), 1: Fraction(2)}, {0: Fraction(2), 1: Fraction(4)}, {2: Fraction(3)}]
    reduced, pivots = rref(rows, 3)
    assert pivots == [0, 2]
    assert reduced == [{0: 1, 1: 2}, {2: 1}]
    assert rank(rows, 3) == 2
    (kernel,) = nullspace(rows, 3)
    assert kernel[1] * 2 + kernel[0] == 0 and 2 not in kernel


def test_nullspace_without_rows_is_everything():
    assert nullspace([], 2) == [{0: 1}, {1: 1}]


def test_determinant():
    assert determinant([[Fraction(1, 2), 1], [3, 4]]) == Fraction(-1)
    assert determinant([]) == 1


def test_subspace_extend_reports_new_directions():
    space = Subspace(["a", "b", "c"])
    assert len(space.extend([{"a": Fraction(1), "b": Fraction(1)}])) == 1
    assert space.extend([{"a": Fraction(2), "b": Fraction(2)}]) == []
    fresh = space.extend([{"b": Fraction(1)}, {"a": Fraction(1)}])
    assert len(fresh) == 1
    assert space.dimension == 2
    assert space.contains({"a": Fraction(5)})
    assert not space.contains({"c": Fraction(1)})
    assert space.reduce({"a": Fraction(1), "c": Fraction(2)}) == {"c": 2}


def test_subspace_rejects_foreign_keys():
    with pytest.raises(WindowError):
        Subspace(["a"]).extend([{"z": Fraction(1)}])
