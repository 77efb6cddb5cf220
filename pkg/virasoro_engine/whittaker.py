"""Whittaker modules L_{ψ_n, θ}: d_j v = λ_j v for n ≤ j ≤ 2n, d_j v = 0 for j > 2n, c = θ."""
import logging
from fractions import Fraction
from functools import lru_cache

from pydantic import Field, model_validator

from .algebra_core import Vector
from .errors import InvalidInputError
from .models import FrozenModel, Rational
from .pbw import PBWKey, PBWModule

logger = logging.getLogger(__name__)

WHITTAKER = "whittaker"


class WhittakerParams(FrozenModel):
    n: int = Field(ge=1)
    lambdas: tuple[Rational, ...]
    theta: Rational

    @model_validator(mode="after")
    def _check_length(self):
        if len(self.lambdas) != self.n + 1:
            raise InvalidInputError(f"expected {self.n + 1} values lambda_n..lambda_2n, got {len(self.lambdas)}")
        return self

    def lam(self, j: int) -> Fraction:
        """ψ_n(d_j) for j ≥ n."""
        if self.n <= j <= 2 * self.n:
            return self.lambdas[j - self.n]
        if j > 2 * self.n:
            return Fraction(0)
        raise InvalidInputError(f"psi_n is only defined on d_j with j >= {self.n}")


class WhittakerModule(PBWModule):
    """Free letters d_j, j ≤ n-1; letter d_j has weight n - j."""

    family = WHITTAKER

    def __init__(self, params: WhittakerParams):
        super().__init__(params.theta, top=params.n - 1)
        self.params = params

    def _act_cyclic(self, k: int) -> dict:
        value = self.params.lam(k)
        return {(): value} if value else {}

    def annihilation_bound(self, key: PBWKey) -> int:
        return 2 * self.params.n + sum(abs(j) for j in key)


@lru_cache(maxsize=256)
def whittaker_module(params: WhittakerParams) -> WhittakerModule:
    return WhittakerModule(params)


def classical_whittaker(lambda1: Fraction, lambda2: Fraction, theta: Fraction) -> WhittakerModule:
    """The module with d_1 - λ_1, d_2 - λ_2, d_3, d_4, ... killing the generator."""
    return whittaker_module(WhittakerParams(n=1, lambdas=(lambda1, lambda2), theta=theta))


def whittaker_act(params: WhittakerParams, k: int, v: Vector) -> Vector:
    return whittaker_module(params).act(k, v)


def whittaker_is_simple(params: WhittakerParams) -> bool:
    """Simple iff λ_{2n-1} ≠ 0 or λ_{2n} ≠ 0."""
    n = params.n
    return params.lam(2 * n - 1) != 0 or params.lam(2 * n) != 0
