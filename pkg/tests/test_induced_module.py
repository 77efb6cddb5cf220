from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from virasoro_engine.algebra_core import commutator_defect
from virasoro_engine.errors import InvalidInputError, PreconditionError
from virasoro_engine.induced_module import (
    InducedParams,
    IsoMap,
    b_action_scalar,
    induced_act,
    induced_is_simple,
    induced_module,
    induced_params_for,
    inverse_param_map,
    iso_verifier,
    param_map,
)
from virasoro_engine.models import Truncation
from virasoro_engine.tensor_module import MThetaZeroFactor, VermaFactor, WhittakerFactor, tensor_is_simple

from .conftest import rationals

ISO_WINDOW = Truncation(D=4, L=4, K=5)


def induced(n, lam, theta, *s) -> InducedParams:
    return InducedParams(n=n, lam=lam, theta=theta, s=s)


def test_parameter_records_are_validated():
    with pytest.raises(ValidationError):
        induced(1, 1, 0, 1)
    with pytest.raises(ValidationError):
        induced(0, 0, 0, 1)


def test_relations_on_the_cyclic_vector():
    params = induced(2, 2, 0, 1, 2, 3)
    one = induced_module(params).cyclic_vector()
    # d_k 1 = λ^{k-1} d_1 1 + s_k for 2 ≤ k ≤ 4
    assert dict(induced_act(params, 3, one).terms) == {(1,): 4, (): 2}
    # beyond 2n the scalar follows the extension rule
    assert b_action_scalar(params, 5) == -1 * 2 * 2**2 + 2 * 3 * 2
    with pytest.raises(PreconditionError):
        b_action_scalar(params, 1)


def test_n_zero_normalization_agrees_with_the_general_rule():
    lam, s0 = Fraction(3, 2), Fraction(-2, 5)
    params = induced(0, lam, 1, s0)
    module = induced_module(params)
    one = module.cyclic_vector()
    d0 = module.act(0, one)
    assert dict(d0.terms) == {(-1,): lam, (): s0}
    for k in range(-1, 6):
        expected = lam**k * d0 + b_action_scalar(params, k) * one
        assert module.act(k, one) == expected
    for i in range(-3, 4):
        for j in range(i + 1, 4):
            assert not commutator_defect(module, i, j, module.monomial((-1, -1)))


@pytest.mark.parametrize(
    "params",
    [
        induced(0, 1, 0, 1),
        induced(1, Fraction(1, 2), 2, 1, Fraction(-1, 3)),
        induced(2, -1, Fraction(1, 2), 1, 0, 2),
        induced(3, 2, 1, 1, -1, 2, Fraction(1, 2)),
    ],
)
def test_bracket_holds_on_induced_modules(params):
    module = induced_module(params)
    for key in module.basis(3):
        for i in range(-4, 5):
            for j in range(i + 1, 5):
                assert not commutator_defect(module, i, j, module.monomial(key))


def test_param_map_examples():
    assert param_map(induced(0, 3, 1, 4)).b == 5
    assert param_map(induced(0, 3, 1, 4)).factor == MThetaZeroFactor(theta=1)
    image = param_map(induced(1, 1, 0, 0, 1))
    assert image.b == 2 and image.factor == VermaFactor(theta=0, h=1)


def test_sample_whittaker_preimage():
    factor = WhittakerFactor(n=1, lambdas=(0, 0), theta=0)
    assert inverse_param_map(2, 1, 2, factor) == (1, 2, 3)
    params = induced_params_for(2, 1, 2, factor)
    assert params.s == (1, 2, 3)
    assert param_map(params).factor == factor


def test_inverse_param_map_checks_the_factor():
    with pytest.raises(InvalidInputError):
        inverse_param_map(1, 1, 2, MThetaZeroFactor(theta=0))
    with pytest.raises(InvalidInputError):
        inverse_param_map(3, 1, 2, WhittakerFactor(n=1, lambdas=(0, 0), theta=0))
    with pytest.raises(InvalidInputError):
        inverse_param_map(0, 0, 2, MThetaZeroFactor(theta=0))


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=4), rationals(nonzero=True), rationals(), st.data())
def test_parameter_maps_are_mutually_inverse(n, lam, theta, data):
    s = tuple(data.draw(rationals()) for _ in range(n + 1))
    params = InducedParams(n=n, lam=lam, theta=theta, s=s)
    image = param_map(params)
    assert inverse_param_map(n, lam, image.b, image.factor) == s
    again = param_map(induced_params_for(n, lam, image.b, image.factor))
    assert again == image


@pytest.mark.parametrize(
    "params",
    [
        induced(0, 1, 0, 1),
        induced(0, Fraction(-2, 3), Fraction(1, 2), 3),
        induced(0, 2, 2, 0),
        induced(1, 1, 0, 0, 1),
        induced(1, Fraction(1, 2), 2, 1, Fraction(-1, 3)),
        induced(1, -1, Fraction(1, 2), 2, 2),
        induced(2, 1, 0, 1, 2, 3),
        induced(2, -1, Fraction(1, 2), 1, 0, 2),
        induced(2, Fraction(3, 2), 1, 0, 0, 0),
        induced(3, 1, 0, 1, 2, 3, 4),
        induced(3, 2, 1, 1, -1, 2, Fraction(1, 2)),
        induced(3, Fraction(-1, 2), 0, 0, 1, 0, 1),
    ],
)
def test_iso_verifier_passes(params):
    report = iso_verifier(params, ISO_WINDOW)
    assert report.failures == []
    assert report.passed and report.relations_ok and report.homomorphism_ok and report.ranks_ok
    assert [r.weight for r in report.graded_ranks] == list(range(ISO_WINDOW.L + 1))
    assert all(r.words == r.rank == r.target_dimension for r in report.graded_ranks)


def test_iso_map_images():
    rho = IsoMap(induced(1, 1, 0, 0, 1))
    assert rho(rho.source.cyclic_vector()) == rho.target.cyclic_vector()
    assert rho.target_weight((2, (-1,))) == 4


@pytest.mark.parametrize(
    "params, simple",
    [
        (induced(0, 1, 0, 1), False),
        (induced(0, 1, 2, 1), True),
        (induced(0, 1, 2, 0), False),
        (induced(1, 1, 0, 1, 1), False),
        (induced(1, 1, 2, 0, 1), None),
        (induced(2, 1, 0, 1, 2, 3), False),
        (induced(2, 1, 0, 1, 2, 4), True),
    ],
)
def test_induced_simplicity(params, simple):
    assert induced_is_simple(params, bound=24).is_simple is simple


def test_witness_for_degenerate_n_zero():
    verdict = induced_is_simple(induced(0, 1, 0, 1))
    assert verdict.witness == {"p": 2, "q": 3}


@settings(max_examples=100)
@given(rationals(nonzero=True), rationals(), rationals(), rationals())
def test_n_two_criterion_matches_the_tensor_image(lam, m2, m3, m4):
    params = InducedParams(n=2, lam=lam, theta=1, s=(m2, m3, m4))
    image = param_map(params)
    lambda1, lambda2 = image.factor.lambdas
    expected = image.b != 1 and (lambda1, lambda2) != (0, 0)
    assert induced_is_simple(params).is_simple is expected
    assert tensor_is_simple(image.tensor_params(lam)).is_simple is expected


@settings(max_examples=100)
@given(st.integers(min_value=0, max_value=3), rationals(nonzero=True), st.data())
def test_criteria_agree_through_the_parameter_map(n, lam, data):
    theta = data.draw(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(2)]))
    s = tuple(data.draw(rationals()) for _ in range(n + 1))
    params = InducedParams(n=n, lam=lam, theta=theta, s=s)
    direct = induced_is_simple(params, bound=24)
    via_tensor = tensor_is_simple(param_map(params).tensor_params(lam), bound=24)
    assert direct.status == via_tensor.status
