from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st
from pydantic import ValidationError

from virasoro_engine.algebra_core import Vector, apply_element, omega_operator
from virasoro_engine.errors import InvalidInputError, PreconditionError
from virasoro_engine.omega_module import (
    OmegaParams,
    b1_submodule_map,
    degree,
    leading_coefficient,
    omega_act,
    omega_is_simple,
    omega_module,
    omega_vector,
)

from .conftest import rationals


def test_action_on_one():
    params = OmegaParams(lam=2, b=Fraction(1, 2))
    image = omega_act(params, 3, omega_vector({0: 1}))
    # 2^3 (∂ + 3(b - 1))
    assert image == omega_vector({1: 8, 0: -12})


def test_action_on_higher_degree():
    params = OmegaParams(lam=1, b=2)
    # d_1 ∂ = (∂ + 1)(∂ - 1) = ∂² - 1
    assert omega_act(params, 1, omega_vector({1: 1})) == omega_vector({2: 1, 0: -1})
    # d_0 acts as multiplication by ∂
    assert omega_act(params, 0, omega_vector({2: 3})) == omega_vector({3: 3})


@given(rationals(nonzero=True), rationals(), st.integers(min_value=-6, max_value=6), st.integers(min_value=0, max_value=5))
def test_degree_rises_by_one(lam, b, n, j):
    image = omega_act(OmegaParams(lam=lam, b=b), n, omega_vector({j: 1}))
    assert degree(image) == j + 1
    assert leading_coefficient(image) == lam**n


def test_lambda_must_be_nonzero():
    with pytest.raises(ValidationError):
        OmegaParams(lam=0, b=1)


def test_simplicity():
    assert omega_is_simple(OmegaParams(lam=1, b=2))
    assert not omega_is_simple(OmegaParams(lam=3, b=1))


@given(rationals(nonzero=True), st.integers(min_value=-6, max_value=6), st.integers(min_value=1, max_value=5))
def test_b1_submodule_map_intertwines(lam, n, j):
    source = OmegaParams(lam=lam, b=1)
    target = OmegaParams(lam=lam, b=0)
    p = omega_vector({j: 1, 1: Fraction(-2, 3)})
    assert b1_submodule_map(lam, omega_act(source, n, p)) == omega_act(target, n, b1_submodule_map(lam, p))


def test_b1_submodule_map_preconditions():
    with pytest.raises(PreconditionError):
        b1_submodule_map(1, omega_vector({0: 1, 2: 1}))
    with pytest.raises(InvalidInputError):
        b1_submodule_map(0, omega_vector({1: 1}))
    with pytest.raises(PreconditionError):
        b1_submodule_map(1, Vector("verma", {(): 1}))


@given(
    rationals(nonzero=True),
    rationals(),
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=-5, max_value=5),
    st.integers(min_value=3, max_value=5),
)
def test_omega_operators_kill_one(lam, b, l, m, s):
    module = omega_module(OmegaParams(lam=lam, b=b))
    assert not apply_element(module, omega_operator(s, l, m), module.cyclic_vector())
