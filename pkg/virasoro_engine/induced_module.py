"""
Modules Ind_{θ,λ}(B_s) induced from the one-dimensional modules of
b_{λ,n} = span{d_k - λ^{k-n+1} d_{n-1} : k ≥ n}, their parameter maps onto
Ω(λ, b) ⊗ V, simplicity deciders and a window-scale isomorphism verifier.
"""
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Mapping, Optional

from pydantic import BaseModel, Field, model_validator

from .algebra_core import Vector, accumulate
from .errors import InvalidInputError, PreconditionError
from .highest_weight import mtheta0_is_simple, verma_is_simple
from .linalg import rank
from .models import FrozenModel, NonzeroRational, Rational, SimplicityVerdict, Truncation
from .omega_module import OmegaParams
from .pbw import PBWKey, PBWModule
from .scalars import format_scalar
from .tensor_module import (
    FactorSpec,
    MThetaZeroFactor,
    TensorModule,
    TensorParams,
    VermaFactor,
    WhittakerFactor,
    tensor_module,
)

logger = logging.getLogger(__name__)

INDUCED = "induced"


class InducedParams(FrozenModel):
    """n ≥ 0, λ ≠ 0, θ and s = (s_n, ..., s_{2n})."""

    n: int = Field(ge=0)
    lam: NonzeroRational
    theta: Rational
    s: tuple[Rational, ...]

    @model_validator(mode="after")
    def _check_length(self):
        if len(self.s) != self.n + 1:
            raise InvalidInputError(f"expected {self.n + 1} values s_n..s_2n, got {len(self.s)}")
        return self

    def s_at(self, k: int) -> Fraction:
        """s_k inside the tuple range; s_{-1} is 0."""
        if self.n <= k <= 2 * self.n:
            return self.s[k - self.n]
        if k == -1:
            return Fraction(0)
        raise InvalidInputError(f"s_{k} is not a parameter of the n = {self.n} module")


def _relation_scalar(params: InducedParams, k: int) -> Fraction:
    """σ_k with (d_k - λ^{k-n+1} d_{n-1})·1 = σ_k, for k ≥ n."""
    n, lam = params.n, params.lam
    if k <= 2 * n:
        return params.s_at(k)
    extra = k - 2 * n
    return -extra * params.s_at(2 * n - 1) * lam ** (extra + 1) + (extra + 1) * params.s_at(2 * n) * lam**extra


def b_action_scalar(params: InducedParams, k: int) -> Fraction:
    """
    n ≥ 1: d_k·1 = λ^{k-n+1} d_{n-1}·1 + value for k ≥ n.
    n = 0: d_k·1 = λ^k d_0·1 + value with value = kλ^k s_0 for k ≥ -1.
    """
    if params.n == 0:
        if k < -1:
            raise PreconditionError("for n = 0 the relations start at k = -1")
        return k * params.lam**k * params.s[0]
    if k < params.n:
        raise PreconditionError(f"the relations start at k = n = {params.n}")
    return _relation_scalar(params, k)


class InducedModule(PBWModule):
    """Free letters d_j, j ≤ n-1 (j ≤ -1 when n = 0, with d_0·1 = λ d_{-1}·1 + s_0)."""

    family = INDUCED

    def __init__(self, params: InducedParams):
        super().__init__(params.theta, top=params.n - 1 if params.n >= 1 else -1)
        self.params = params

    def _act_cyclic(self, k: int) -> dict:
        lam, n = self.params.lam, self.params.n
        result = {(n - 1,) if n >= 1 else (-1,): lam ** (k - n + 1)}
        # n = 0 uses the same rule with reference generator d_{-1} and s_{-1} = 0
        scalar = _relation_scalar(self.params, k)
        if scalar:
            result[()] = scalar
        return result


@lru_cache(maxsize=256)
def induced_module(params: InducedParams) -> InducedModule:
    return InducedModule(params)


def induced_act(params: InducedParams, k: int, v: Vector) -> Vector:
    return induced_module(params).act(k, v)


class ParamImage(BaseModel):
    b: Rational
    factor: FactorSpec

    def tensor_params(self, lam: Fraction) -> TensorParams:
        return TensorParams(omega=OmegaParams(lam=lam, b=self.b), factor=self.factor)


def param_map(params: InducedParams) -> ParamImage:
    """(b, factor) with Ind_{θ,λ}(B_s) ≅ Ω(λ, b) ⊗ factor."""
    n, lam, theta = params.n, params.lam, params.theta
    if n == 0:
        return ParamImage(b=params.s[0] + 1, factor=MThetaZeroFactor(theta=theta))
    if n == 1:
        s1, s2 = params.s
        b = 1 + (s2 - lam * s1) / lam**2
        h = (s2 - 2 * lam * s1) / lam**2
        return ParamImage(b=b, factor=VermaFactor(theta=theta, h=h))
    w = n - 1
    top, below = params.s_at(2 * w + 2), params.s_at(2 * w + 1)
    b = 1 + (top - lam * below) / lam ** (2 * w + 2)
    lambdas = [((w + 1) * top - (w + 2) * lam * below) / lam ** (w + 2)]
    for k in range(w + 1, 2 * w + 1):
        shift = k - 2 * w - 2
        correction = lam**shift * (-shift * lam * below + (shift + 1) * top)
        lambdas.append(params.s_at(k) - correction)
    return ParamImage(b=b, factor=WhittakerFactor(n=w, lambdas=tuple(lambdas), theta=theta))


def inverse_param_map(n: int, lam: Fraction, b: Fraction, factor: FactorSpec) -> tuple[Fraction, ...]:
    """The s-tuple with param_map(InducedParams(n, λ, θ, s)) = (b, factor)."""
    lam, b = Fraction(lam), Fraction(b)
    if lam == 0:
        raise InvalidInputError("lambda must be nonzero")
    if n == 0:
        if not isinstance(factor, MThetaZeroFactor):
            raise InvalidInputError("n = 0 pairs with the factor M(theta, 0)")
        return (b - 1,)
    if n == 1:
        if not isinstance(factor, VermaFactor):
            raise InvalidInputError("n = 1 pairs with a Verma factor")
        return (lam * (b - 1 - factor.h), lam**2 * (2 * (b - 1) - factor.h))
    w = n - 1
    if not isinstance(factor, WhittakerFactor) or factor.n != w:
        raise InvalidInputError(f"n = {n} pairs with a Whittaker factor of index {w}")

    def lam_k(k: int) -> Fraction:
        return factor.lambdas[k - w] if k <= 2 * w else Fraction(0)

    return tuple(lam**k * (k - w) * (b - 1) + lam_k(k) - lam ** (k - w) * lam_k(w) for k in range(w + 1, 2 * w + 3))


def induced_params_for(n: int, lam: Fraction, b: Fraction, factor: FactorSpec) -> InducedParams:
    return InducedParams(n=n, lam=lam, theta=factor.theta, s=inverse_param_map(n, lam, b, factor))


def induced_is_simple(params: InducedParams, bound: Optional[int] = None, exact: bool = False) -> SimplicityVerdict:
    n, lam = params.n, params.lam
    if n == 0:
        if params.s[0] == 0:
            return SimplicityVerdict.not_simple("s_0 = 0")
        return mtheta0_is_simple(params.theta)
    if n == 1:
        s1, s2 = params.s
        if s2 - lam * s1 == 0:
            return SimplicityVerdict.not_simple("s_2 = lambda s_1")
        return verma_is_simple(params.theta, (s2 - 2 * lam * s1) / lam**2, bound, exact=exact)
    w = n - 1
    top, below = params.s_at(2 * w + 2), params.s_at(2 * w + 1)
    if top - lam * below == 0:
        return SimplicityVerdict.not_simple("s_{2n} = lambda s_{2n-1}")
    odd = Fraction(0) if w == 1 else params.s_at(2 * w - 1)
    if odd != (3 * lam * below - 2 * top) / lam**3 or params.s_at(2 * w) != (2 * lam * below - top) / lam**2:
        return SimplicityVerdict.simple("the Whittaker factor is nondegenerate and b != 1")
    return SimplicityVerdict.not_simple("the Whittaker factor is degenerate")


class GradedRank(BaseModel):
    weight: int
    words: int
    rank: int
    target_dimension: int


class IsoReport(BaseModel):
    passed: bool
    relations_ok: bool
    homomorphism_ok: bool
    ranks_ok: bool
    window: str
    b: Rational
    factor: FactorSpec
    graded_ranks: list[GradedRank] = []
    failures: list[str] = []


class IsoMap:
    """ρ: Ind → Ω(λ, b) ⊗ V determined by ρ(1) = 1 ⊗ v, with images cached per PBW key."""

    def __init__(self, params: InducedParams):
        self.params = params
        self.image = param_map(params)
        self.source = induced_module(params)
        self.target: TensorModule = tensor_module(self.image.tensor_params(params.lam))
        self._images: dict[PBWKey, Mapping] = {(): {self.target.cyclic_key(): Fraction(1)}}

    def of_key(self, key: PBWKey) -> Mapping[Hashable, Fraction]:
        cached = self._images.get(key)
        if cached is None:
            cached = self.target.act_terms(key[0], self.of_key(key[1:]))
            self._images[key] = cached
        return cached

    def of_terms(self, terms: Mapping[PBWKey, Fraction]) -> dict:
        result: dict = {}
        for key, coeff in terms.items():
            accumulate(result, self.of_key(key), coeff)
        return result

    def __call__(self, v: Vector) -> Vector:
        self.source.check_family(v)
        return self.target.vector(self.of_terms(v.terms))

    def target_weight(self, key: tuple) -> int:
        """∂ has weight 1 and a factor letter d_j has weight n - j."""
        i, fkey = key
        return i + sum(self.params.n - j for j in fkey)


def _describe(terms: Mapping) -> str:
    return "{" + ", ".join(f"{k}: {format_scalar(v)}" for k, v in sorted(terms.items(), key=str)) + "}"


def _check_relations(rho: IsoMap, failures: list[str]) -> bool:
    params, target = rho.params, rho.target
    one = rho.of_key(())
    n, lam = params.n, params.lam
    ok = True
    if n == 0:
        reference = target.act_terms(0, one)
        indices = range(-1, 5)
    else:
        reference = target.act_terms(n - 1, one)
        indices = range(n, 2 * n + 5)
    for k in indices:
        scale = lam**k if n == 0 else lam ** (k - n + 1)
        lhs = accumulate(dict(target.act_terms(k, one)), reference, -scale)
        expected = {key: b_action_scalar(params, k) * c for key, c in one.items()}
        if accumulate(lhs, expected, -1):
            ok = False
            failures.append(f"relation at k={k}: residue {_describe(lhs)}")
    return ok


def _check_homomorphism(rho: IsoMap, window: Truncation, failures: list[str]) -> bool:
    ok = True
    for key in rho.source.basis(window.L):
        for j in range(-window.K, window.K + 1):
            lhs = rho.of_terms(rho.source.act_key(j, key))
            residue = accumulate(lhs, rho.target.act_terms(j, rho.of_key(key)), -1)
            if residue:
                ok = False
                failures.append(f"rho(d_{j} {key}) != d_{j} rho({key}): residue {_describe(residue)}")
    return ok


def _target_dimension(rho: IsoMap, weight: int) -> int:
    factor = rho.target.factor
    count = 0
    for fkey in factor.basis(weight):
        spare = weight - rho.target_weight((0, fkey))
        if spare >= 0:
            count += spare + 1
    return count


def _check_ranks(rho: IsoMap, window: Truncation, failures: list[str]) -> tuple[bool, list[GradedRank]]:
    ok = True
    graded = []
    for w in range(window.L + 1):
        words = rho.source.basis(w)
        images = [rho.of_key(key) for key in words]
        columns: dict = {}
        for image in images:
            for key in image:
                if rho.target_weight(key) > w:
                    ok = False
                    failures.append(f"image of a weight-{w} word has a term {key} of higher weight")
                columns.setdefault(key, len(columns))
        found = rank([{columns[key]: c for key, c in image.items()} for image in images], len(columns))
        dimension = _target_dimension(rho, w)
        graded.append(GradedRank(weight=w, words=len(words), rank=found, target_dimension=dimension))
        if not found == len(words) == dimension:
            ok = False
            failures.append(f"weight {w}: {len(words)} words, rank {found}, target dimension {dimension}")
    return ok, graded


def iso_verifier(params: InducedParams, window: Truncation) -> IsoReport:
    """
    Check on a window that ρ(1) = 1 ⊗ v extends to an isomorphism onto Ω(λ, b) ⊗ V:
    (a) the defining relations hold on 1 ⊗ v, (b) ρ intertwines d_j for |j| ≤ K on PBW
    words of weight ≤ L, (c) ρ is unitriangular: graded ranks match the target dimensions.
    """
    rho = IsoMap(params)
    failures: list[str] = []
    relations_ok = _check_relations(rho, failures)
    homomorphism_ok = _check_homomorphism(rho, window, failures)
    ranks_ok, graded = _check_ranks(rho, window, failures)
    passed = relations_ok and homomorphism_ok and ranks_ok
    log = logger.info if passed else logger.warning
    log(f"iso check n={params.n} window {window.label()}: {'passed' if passed else 'failed'}")
    return IsoReport(
        passed=passed,
        relations_ok=relations_ok,
        homomorphism_ok=homomorphism_ok,
        ranks_ok=ranks_ok,
        window=window.label(),
        b=rho.image.b,
        factor=rho.image.factor,
        graded_ranks=graded,
        failures=failures[:20],
    )
