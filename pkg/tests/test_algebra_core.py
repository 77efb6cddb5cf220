from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from virasoro_engine.algebra_core import (
    UEAElement,
    UEAWord,
    Vector,
    apply_element,
    bracket,
    commutator_defect,
    omega_operator,
    sigma,
    word_product,
)
from virasoro_engine.errors import FamilyMismatchError, InvalidInputError
from virasoro_engine.omega_module import OmegaParams, omega_module

from .conftest import rationals

indices = st.integers(min_value=-8, max_value=8)


def test_bracket_values():
    assert bracket(1, -1) == UEAElement.word(0, coeff=-2)
    assert bracket(2, -2) == UEAElement.word(0, coeff=-4) + Fraction(1, 2) * UEAElement.central()
    assert bracket(3, 1) == UEAElement.word(4, coeff=-2)
    assert not bracket(5, 5)
    # the central term vanishes for i = ±1
    assert bracket(-1, 1) == UEAElement.word(0, coeff=2)


@given(indices, indices)
def test_bracket_is_antisymmetric(i, j):
    assert bracket(i, j) == -bracket(j, i)


def test_omega_operator_expansion():
    assert omega_operator(0, 3, 1) == UEAElement.word(2, 1)
    expected = UEAElement.word(4, 1) - UEAElement.word(3, 2, coeff=2) + UEAElement.word(2, 3)
    assert omega_operator(2, 5, 1) == expected
    with pytest.raises(InvalidInputError):
        omega_operator(-1, 0, 0)


def test_word_product_concatenates():
    left = UEAElement.word(1) + UEAElement.central()
    right = UEAElement.word(-2, coeff=3)
    product = word_product(left, right)
    assert product == UEAElement({UEAWord((1, -2)): 3, UEAWord((-2,), 1): 3})
    assert left * right == product


@settings(max_examples=100)
@given(st.lists(st.tuples(st.lists(indices, max_size=3), rationals()), max_size=4))
def test_sigma_is_an_involution(terms):
    element = UEAElement((UEAWord(tuple(word)), coeff) for word, coeff in terms)
    assert sigma(sigma(element)) == element


def test_sigma_reverses_and_negates():
    assert sigma(UEAElement.word(2, -1)) == UEAElement.word(1, -2)


def test_vectors_keep_their_family():
    v = Vector("omega", {0: 1})
    w = Vector("verma", {(): 1})
    with pytest.raises(FamilyMismatchError):
        v + w
    assert (v * 3 - v).coefficient(0) == 2
    assert not (v - v)


def test_central_element_acts_as_theta_on_omega():
    module = omega_module(OmegaParams(lam=2, b=3))
    v = module.cyclic_vector()
    assert not apply_element(module, UEAElement.central(), v)


@given(rationals(nonzero=True), rationals(), indices, indices, st.integers(min_value=0, max_value=5))
def test_commutator_defect_vanishes_on_omega(lam, b, i, j, degree):
    module = omega_module(OmegaParams(lam=lam, b=b))
    assert not commutator_defect(module, i, j, module.monomial(degree))


def test_action_memo_is_bounded(monkeypatch):
    from virasoro_engine.config import get_settings
    from virasoro_engine.highest_weight import VermaModule, VermaParams, level_basis, verma_module
    from virasoro_engine.omega_module import OmegaModule

    monkeypatch.setenv("VIRASORO_MEMO_SIZE", "3")
    get_settings.cache_clear()
    params = OmegaParams(lam=2, b=Fraction(1, 2))
    small = OmegaModule(params)
    for j in range(10):
        assert small.act_key(1, j) == omega_module(params).act_key(1, j)
        assert len(small._memo) <= 3

    verma_params = VermaParams(theta=2, h=Fraction(1, 2))
    tight = VermaModule(verma_params)
    for key in level_basis(3):
        for k in (-2, 1, 2, 3):
            assert tight.act(k, tight.monomial(key)) == verma_module(verma_params).act(k, tight.monomial(key))
    assert len(tight._memo) <= 3
