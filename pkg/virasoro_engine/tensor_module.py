"""
Tensor products Ω(λ, b) ⊗ V with the Leibniz action, simplicity and isomorphism
criteria, ω-operator evaluation and truncated cyclic closures.

Tensor basis keys are pairs (i, key) standing for ∂^i ⊗ key.
"""
import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Annotated, Iterable, Literal, Optional, Sequence, Union

from pydantic import BaseModel, Field

from .algebra_core import Vector, VirasoroModule, accumulate, apply_element, omega_operator
from .errors import NonCatalogFactorError, PreconditionError, WindowError
from .highest_weight import (
    VermaParams,
    mtheta0_is_simple,
    mtheta0_module,
    simple_quotient_module,
    verma_is_simple,
    verma_module,
)
from .linalg import Subspace
from .models import FrozenModel, Rational, SimplicityVerdict, Truncation
from .omega_module import OmegaModule, OmegaParams, omega_module
from .serialization import module_top, pbw_vector_to_json
from .whittaker import WhittakerParams, whittaker_is_simple, whittaker_module

logger = logging.getLogger(__name__)

TENSOR = "tensor"


class VermaFactor(FrozenModel):
    family: Literal["verma"] = "verma"
    theta: Rational
    h: Rational


class SimpleQuotientFactor(FrozenModel):
    family: Literal["simple"] = "simple"
    theta: Rational
    h: Rational


class MThetaZeroFactor(FrozenModel):
    family: Literal["mtheta0"] = "mtheta0"
    theta: Rational


class WhittakerFactor(FrozenModel):
    family: Literal["whittaker"] = "whittaker"
    n: int = Field(ge=1)
    lambdas: tuple[Rational, ...]
    theta: Rational

    def params(self) -> WhittakerParams:
        return WhittakerParams(n=self.n, lambdas=self.lambdas, theta=self.theta)


FactorSpec = Annotated[
    Union[VermaFactor, SimpleQuotientFactor, MThetaZeroFactor, WhittakerFactor], Field(discriminator="family")
]
CATALOG = (VermaFactor, SimpleQuotientFactor, MThetaZeroFactor, WhittakerFactor)


class TensorParams(FrozenModel):
    omega: OmegaParams
    factor: FactorSpec


def _require_catalog(factor: object) -> None:
    if not isinstance(factor, CATALOG):
        raise NonCatalogFactorError(f"unsupported tensor factor {factor!r}")


def build_factor(factor: FactorSpec) -> VirasoroModule:
    _require_catalog(factor)
    if isinstance(factor, VermaFactor):
        return verma_module(VermaParams(theta=factor.theta, h=factor.h))
    if isinstance(factor, SimpleQuotientFactor):
        return simple_quotient_module(VermaParams(theta=factor.theta, h=factor.h))
    if isinstance(factor, MThetaZeroFactor):
        return mtheta0_module(factor.theta)
    return whittaker_module(factor.params())


class TensorModule(VirasoroModule):
    family = TENSOR

    def __init__(self, params: TensorParams):
        super().__init__()
        self.params = params
        self.omega: OmegaModule = omega_module(params.omega)
        self.factor = build_factor(params.factor)

    @property
    def central_charge(self) -> Fraction:
        return self.factor.central_charge

    def cyclic_key(self) -> tuple:
        return (0, self.factor.cyclic_key())

    def _act_basis(self, n: int, key: tuple) -> dict:
        i, fkey = key
        result: dict = {}
        accumulate(result, {(j, fkey): c for j, c in self.omega.act_key(n, i).items()})
        accumulate(result, {(i, k): c for k, c in self.factor.act_key(n, fkey).items()})
        return result

    def key_weight(self, key: tuple) -> int:
        return self.factor.weight(key[1])

    def in_window(self, key: tuple, window: Truncation) -> bool:
        return key[0] <= window.D and self.factor.weight(key[1]) <= window.L

    def window_keys(self, window: Truncation) -> list[tuple]:
        return [(i, fkey) for i in range(window.D + 1) for fkey in self.factor.basis(window.L)]

    def tensor(self, p: Vector, v: Vector) -> Vector:
        """p ⊗ v for an Ω vector p and a factor vector v."""
        self.omega.check_family(p)
        self.factor.check_family(v)
        return self.vector({(i, fkey): a * c for i, a in p.items() for fkey, c in v.items()})

    def factor_component(self, t: Vector, degree: int) -> Vector:
        return self.factor.vector({fkey: c for (i, fkey), c in t.items() if i == degree})


@lru_cache(maxsize=128)
def tensor_module(params: TensorParams) -> TensorModule:
    return TensorModule(params)


def tensor_act(params: TensorParams, n: int, t: Vector) -> Vector:
    return tensor_module(params).act(n, t)


def factor_verdict(factor: FactorSpec, bound: Optional[int] = None, exact: bool = False) -> SimplicityVerdict:
    _require_catalog(factor)
    if isinstance(factor, VermaFactor):
        return verma_is_simple(factor.theta, factor.h, bound, exact=exact)
    if isinstance(factor, SimpleQuotientFactor):
        return SimplicityVerdict.simple("simple quotient")
    if isinstance(factor, MThetaZeroFactor):
        return mtheta0_is_simple(factor.theta)
    if whittaker_is_simple(factor.params()):
        return SimplicityVerdict.simple("lambda_{2n-1} or lambda_{2n} is nonzero")
    return SimplicityVerdict.not_simple("lambda_{2n-1} = lambda_{2n} = 0")


def tensor_is_simple(params: TensorParams, bound: Optional[int] = None, exact: bool = False) -> SimplicityVerdict:
    """
    Ω(λ, b) ⊗ V is simple when b ≠ 1 and V is simple; every catalog factor is locally
    finite under d_k for k large, so the factor status decides.
    """
    _require_catalog(params.factor)
    if params.omega.b == 1:
        return SimplicityVerdict.not_simple("b = 1: the partial-degree >= 1 part is a proper submodule")
    verdict = factor_verdict(params.factor, bound, exact)
    return verdict.model_copy(update={"reason": f"factor: {verdict.reason}"})


def _isomorphism_key(factor: FactorSpec) -> tuple:
    # only meaningful for simple factors: a simple highest-weight module is fixed by (θ, h)
    _require_catalog(factor)
    if isinstance(factor, (VermaFactor, SimpleQuotientFactor)):
        return ("highest-weight", factor.theta, factor.h)
    if isinstance(factor, MThetaZeroFactor):
        return ("highest-weight", factor.theta, Fraction(0))
    return ("whittaker", factor.n, factor.theta, factor.lambdas)


def tensor_isomorphic(first: TensorParams, second: TensorParams) -> bool:
    """
    Simple tensor modules are isomorphic iff (λ, b) agree and the factors are isomorphic.
    Raises PreconditionError unless both modules are simple (exact Kac decision for Verma factors).
    """
    keys = (_isomorphism_key(first.factor), _isomorphism_key(second.factor))
    for params in (first, second):
        verdict = tensor_is_simple(params, exact=True)
        if verdict.status == "not-simple":
            raise PreconditionError(f"isomorphism criterion needs simple modules: {verdict.reason}")
    if first.omega != second.omega:
        return False
    return keys[0] == keys[1]


def omega_eval(params: TensorParams, s: int, l: int, m: int, t: Vector) -> Vector:
    """ω^{(s)}_{l,m} applied to a tensor vector."""
    return apply_element(tensor_module(params), omega_operator(s, l, m), t)


def annihilation_index(module: VirasoroModule, v: Vector) -> int:
    """Least K ≥ 0 with d_k v = 0 for every k > K (factor families only)."""
    module.check_family(v)
    if not hasattr(module, "annihilation_bound"):
        raise NonCatalogFactorError(f"{module.family} vectors have no annihilation index")
    bound = max((module.annihilation_bound(key) for key in v.keys()), default=0)
    for k in range(bound, 0, -1):
        if module.act(k, v):
            return k
    return 0


class FinitenessWitness(BaseModel):
    generator_index: int
    degrees: list[int]
    growing: bool


def local_finiteness_witness(params: TensorParams, n: int, steps: int = 10) -> FinitenessWitness:
    """∂-degrees of d_{n+1}^k (1 ⊗ v) for k = 1..steps; strictly growing degrees witness non-local-finiteness."""
    module = tensor_module(params)
    current = module.cyclic_vector()
    degrees = []
    for _ in range(steps):
        current = module.act(n + 1, current)
        degrees.append(max((i for i, _ in current.keys()), default=-1))
    growing = all(a < b for a, b in zip(degrees, degrees[1:])) and bool(degrees) and degrees[0] >= 0
    return FinitenessWitness(generator_index=n + 1, degrees=degrees, growing=growing)


def _closure(module: VirasoroModule, space: Subspace, generators: Iterable[dict], keep, k_range: int) -> int:
    frontier = space.extend(generators)
    rounds = 0
    while frontier:
        rounds += 1
        candidates = []
        for k in range(-k_range, k_range + 1):
            for vec in frontier:
                image = module.act_terms(k, vec)
                candidates.append({key: c for key, c in image.items() if keep(key)})
        frontier = space.extend(candidates)
        logger.debug(f"{module.family} closure round {rounds}: dimension {space.dimension}")
    return rounds


@dataclass
class ClosureResult:
    """
    Row-reduced basis of a truncated cyclic closure. Terms leaving the window are dropped, so
    the span is neither contained in nor guaranteed to contain (submodule) ∩ window.
    """

    module: TensorModule
    window: Truncation
    space: Subspace
    rounds: int = 0

    @property
    def dimension(self) -> int:
        return self.space.dimension

    def basis(self) -> list[Vector]:
        return [self.module.vector(row) for row in self.space.basis()]

    def contains(self, t: Vector) -> bool:
        if not all(self.module.in_window(key, self.window) for key in t.keys()):
            return False
        return self.space.contains(t.terms)


def cyclic_closure(params: TensorParams, generators: Sequence[Vector], window: Truncation) -> ClosureResult:
    """Repeatedly apply d_k, |k| ≤ K, dropping terms outside the window, until the span stabilizes."""
    module = tensor_module(params)
    for g in generators:
        module.check_family(g)
        outside = [key for key in g.keys() if not module.in_window(key, window)]
        if outside:
            raise WindowError(f"generator term {outside[0]!r} lies outside window {window.label()}")
    space = Subspace(module.window_keys(window))
    rounds = _closure(
        module, space, [dict(g.terms) for g in generators], lambda key: module.in_window(key, window), window.K
    )
    logger.info(f"closure in window {window.label()} stabilized at dimension {space.dimension} after {rounds} rounds")
    return ClosureResult(module=module, window=window, space=space, rounds=rounds)


def factor_closure(factor: VirasoroModule, generators: Sequence[Vector], max_weight: int, k_range: int) -> Subspace:
    """Cyclic closure inside the factor alone, keeping weights ≤ ``max_weight``."""
    for g in generators:
        factor.check_family(g)
        if any(factor.weight(key) > max_weight for key in g.keys()):
            raise WindowError(f"generator exceeds factor weight {max_weight}")
    space = Subspace(factor.basis(max_weight))
    _closure(factor, space, [dict(g.terms) for g in generators], lambda key: factor.weight(key) <= max_weight, k_range)
    return space


def random_window_vector(params: TensorParams, window: Truncation, rng: random.Random, terms: int = 4) -> Vector:
    """A nonzero vector supported on ``terms`` random window monomials with small rational coefficients."""
    module = tensor_module(params)
    keys = module.window_keys(window)
    chosen = rng.sample(keys, min(terms, len(keys)))
    return module.vector(
        {key: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3)) for key in chosen}
    )


class ShapeReport(BaseModel):
    b_is_one: bool
    window: str
    inner_window: str
    status: Literal["pure", "not-pure", "inconclusive"]
    x_basis: list[list[dict]] = []
    x1_basis: list[list[dict]] = []
    x2_basis: list[list[dict]] = []
    missing: list[str] = []

    @property
    def pure(self) -> Optional[bool]:
        return None if self.status == "inconclusive" else self.status == "pure"


def _factor_span(factor: VirasoroModule, window: Truncation, vectors: Iterable[dict]) -> Subspace:
    # heavy keys first so that rows pivoting on light keys live entirely in low weight
    columns = sorted(factor.basis(window.L), key=factor.weight, reverse=True)
    span = Subspace(columns)
    span.extend(vectors)
    return span


def _light_rows(factor: VirasoroModule, span: Subspace, max_weight: int) -> list[dict]:
    return [row for row, key in zip(span.basis(), span.pivot_keys()) if factor.weight(key) <= max_weight]


def submodule_shape(params: TensorParams, closure: ClosureResult, margin: int = 1) -> ShapeReport:
    """
    Check that a closure has the form Ω ⊗ X (b ≠ 1) or ∂Ω ⊗ X₁ + Ω ⊗ X₂ (b = 1) on the
    window shrunk by ``margin`` in both the ∂-degree and the factor weight.
    """
    module = tensor_module(params)
    window = closure.window
    b_is_one = params.omega.b == 1
    inner_d, inner_l = window.D - margin, window.L - margin
    labels = dict(window=window.label(), inner_window=f"{inner_d},{inner_l},{window.K}")
    if margin < 0 or inner_l < 0 or inner_d < (1 if b_is_one else 0):
        logger.warning(f"margin {margin} leaves no inner window inside {window.label()}")
        return ShapeReport(b_is_one=b_is_one, status="inconclusive", **labels)

    top = module_top(module)
    basis = closure.space.basis()

    def components(degrees) -> list[dict]:
        return [{fkey: c for (i, fkey), c in row.items() if i == d} for row in basis for d in degrees]

    missing: list[str] = []

    def check(rows: list[dict], degrees: range) -> None:
        for row in rows:
            for d in degrees:
                candidate = module.vector({(d, fkey): c for fkey, c in row.items()})
                if not closure.space.contains(candidate.terms):
                    missing.append(f"partial^{d} (x) {pbw_vector_to_json(module.factor.vector(row), top)}")

    def as_json(rows: list[dict]) -> list[list[dict]]:
        return [pbw_vector_to_json(module.factor.vector(row), top) for row in rows]

    if not b_is_one:
        span = _factor_span(module.factor, window, [c for c in components(range(window.D + 1)) if c])
        check(_light_rows(module.factor, span, inner_l), range(inner_d + 1))
        status = "not-pure" if missing else "pure"
        return ShapeReport(
            b_is_one=False, status=status, x_basis=as_json(span.basis()), missing=missing[:10], **labels
        )

    span2 = _factor_span(module.factor, window, [c for c in components([0]) if c])
    span1 = _factor_span(module.factor, window, [c for c in components(range(1, window.D + 1)) if c])
    check(_light_rows(module.factor, span1, inner_l), range(1, inner_d + 1))
    check(_light_rows(module.factor, span2, inner_l), range(inner_d + 1))
    return ShapeReport(
        b_is_one=True,
        status="not-pure" if missing else "pure",
        x1_basis=as_json(span1.basis()),
        x2_basis=as_json(span2.basis()),
        missing=missing[:10],
        **labels,
    )


def partial_degree_invariance(params: TensorParams, max_degree: int, max_weight: int, k_range: int) -> list[str]:
    """
    For b = 1: check that d_n maps ∂^i ⊗ key with i ≥ 1 to vectors with all ∂-degrees ≥ 1.
    Returns the violations (empty when the subspace is invariant).
    """
    module = tensor_module(params)
    violations = []
    for i in range(1, max_degree + 1):
        for fkey in module.factor.basis(max_weight):
            for n in range(-k_range, k_range + 1):
                image = module.act_key(n, (i, fkey))
                if any(j == 0 for j, _ in image):
                    violations.append(f"d_{n} (partial^{i} (x) {fkey})")
    return violations
