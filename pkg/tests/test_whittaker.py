from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from virasoro_engine.algebra_core import commutator_defect
from virasoro_engine.errors import InvalidInputError
from virasoro_engine.whittaker import (
    WhittakerParams,
    classical_whittaker,
    whittaker_act,
    whittaker_is_simple,
    whittaker_module,
)

from .conftest import rationals


def test_cyclic_vector_eigenvalues():
    params = WhittakerParams(n=1, lambdas=(2, Fraction(-1, 3)), theta=0)
    v = whittaker_module(params).cyclic_vector()
    assert whittaker_act(params, 1, v) == 2 * v
    assert whittaker_act(params, 2, v) == Fraction(-1, 3) * v
    assert not whittaker_act(params, 3, v)


def test_classical_constructor():
    module = classical_whittaker(Fraction(1), Fraction(0), Fraction(1, 2))
    assert module.params.n == 1
    assert module.central_charge == Fraction(1, 2)
    assert module.is_free(0) and not module.is_free(1)


def test_weights_and_basis():
    module = whittaker_module(WhittakerParams(n=2, lambdas=(0, 1, 0), theta=0))
    assert module.weight((1,)) == 1
    assert module.weight((0, -1)) == 5
    assert module.keys_of_weight(2) == [(1, 1), (0,)]


def test_lambda_tuple_length_is_checked():
    with pytest.raises(ValidationError):
        WhittakerParams(n=2, lambdas=(1, 2), theta=0)
    with pytest.raises(InvalidInputError):
        WhittakerParams(n=1, lambdas=(1, 2), theta=0).lam(0)


@pytest.mark.parametrize(
    "n, lambdas, simple",
    [(1, (0, 1), True), (1, (1, 0), True), (1, (0, 0), False), (2, (5, 0, 0), False), (2, (0, 1, 0), True)],
)
def test_simplicity_criterion(n, lambdas, simple):
    assert whittaker_is_simple(WhittakerParams(n=n, lambdas=lambdas, theta=1)) is simple


@given(st.integers(min_value=1, max_value=2), st.data())
def test_bracket_holds(n, data):
    lambdas = tuple(data.draw(rationals()) for _ in range(n + 1))
    module = whittaker_module(WhittakerParams(n=n, lambdas=lambdas, theta=data.draw(rationals())))
    key = data.draw(st.sampled_from(module.basis(3)))
    i = data.draw(st.integers(min_value=-4, max_value=4))
    j = data.draw(st.integers(min_value=-4, max_value=4))
    assert not commutator_defect(module, i, j, module.monomial(key))


@given(st.integers(min_value=1, max_value=2), st.data())
def test_free_letters_raise_the_degree_by_one(n, data):
    lambdas = tuple(data.draw(rationals()) for _ in range(n + 1))
    module = whittaker_module(WhittakerParams(n=n, lambdas=lambdas, theta=data.draw(rationals())))
    key = data.draw(st.sampled_from(module.basis(4)))
    free = data.draw(st.integers(min_value=-4, max_value=n - 1))
    image = module.act_key(free, key)
    assert max(len(k) for k in image) == len(key) + 1
    assert image[tuple(sorted(key + (free,), reverse=True))] == 1
    bound = data.draw(st.integers(min_value=n, max_value=2 * n + 3))
    assert all(len(k) <= len(key) for k, value in module.act_key(bound, key).items() if value)
