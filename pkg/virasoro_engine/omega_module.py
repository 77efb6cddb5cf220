"""The polynomial module Ω(λ, b) = ℂ[∂] with d_n ∂^j = λ^n (∂ + n(b-1)) (∂ - n)^j."""
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Mapping

from .algebra_core import Coefficient, Vector, VirasoroModule, accumulate
from .errors import InvalidInputError, PreconditionError
from .models import FrozenModel, NonzeroRational, Rational

logger = logging.getLogger(__name__)

OMEGA = "omega"


class OmegaParams(FrozenModel):
    lam: NonzeroRational
    b: Rational


def shifted_power(shift: Fraction, j: int) -> dict[int, Fraction]:
    """Coefficients of (∂ + shift)^j by degree."""
    return {r: comb(j, r) * shift ** (j - r) for r in range(j + 1) if comb(j, r) * shift ** (j - r)}


class OmegaModule(VirasoroModule):
    """Basis keys are ∂-degrees; the central element acts as 0."""

    family = OMEGA

    def __init__(self, params: OmegaParams):
        super().__init__()
        self.params = params

    @property
    def central_charge(self) -> Fraction:
        return Fraction(0)

    def cyclic_key(self) -> int:
        return 0

    def _act_basis(self, n: int, j: int) -> dict:
        lam, b = self.params.lam, self.params.b
        scale = lam**n
        offset = n * (b - 1)
        power = shifted_power(Fraction(-n), j)
        # (∂ + offset) · (∂ - n)^j
        result: dict[int, Fraction] = {}
        accumulate(result, {r + 1: c for r, c in power.items()}, scale)
        accumulate(result, power, scale * offset)
        return result


@lru_cache(maxsize=256)
def omega_module(params: OmegaParams) -> OmegaModule:
    return OmegaModule(params)


def omega_vector(coefficients: Mapping[int, Coefficient]) -> Vector:
    """Polynomial Σ c_j ∂^j from a degree -> coefficient map."""
    return Vector(OMEGA, coefficients)


def degree(p: Vector) -> int:
    return max(p.keys(), default=-1)


def leading_coefficient(p: Vector) -> Fraction:
    return p.coefficient(degree(p)) if p else Fraction(0)


def omega_act(params: OmegaParams, n: int, p: Vector) -> Vector:
    return omega_module(params).act(n, p)


def omega_is_simple(params: OmegaParams) -> bool:
    """Ω(λ, b) is simple exactly when b ≠ 1."""
    return params.b != 1


def b1_submodule_map(lam: Fraction, p: Vector) -> Vector:
    """
    ∂·q ↦ q, identifying the submodule ∂ℂ[∂] of Ω(λ, 1) with Ω(λ, 0).
    ``lam`` only fixes the pair of modules being intertwined.
    """
    if Fraction(lam) == 0:
        raise InvalidInputError("lambda must be nonzero")
    if p.family != OMEGA:
        raise PreconditionError(f"expected an omega vector, got {p.family}")
    if p.coefficient(0):
        raise PreconditionError("polynomial has a nonzero constant term, it is not in ∂ℂ[∂]")
    return Vector(OMEGA, {j - 1: c for j, c in p.items()})
