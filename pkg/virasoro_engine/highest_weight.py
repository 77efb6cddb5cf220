"""
Verma modules V̄(θ, h), their Gram matrices and singular vectors, the quotient M(θ, 0),
the simple quotient V(θ, h) and the two closed-form simplicity criteria.

Weight convention: d_0 acts on level m of V̄(θ, h) as h - m. The Kac expression
``kac_factor`` is the displayed one; it vanishes on the reducible locus of V̄(θ, h)
when evaluated at -h, which is what every module-level predicate here does.
"""
import logging
from abc import abstractmethod
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Mapping, Optional

from .algebra_core import Vector, VirasoroModule, accumulate
from .config import get_settings
from .errors import InvalidInputError, LevelCapExceededError
from .linalg import Subspace, determinant, nullspace
from .models import FrozenModel, Rational, SimplicityVerdict
from .pbw import PBWKey, PBWModule, primitive
from .scalars import rational_sqrt

logger = logging.getLogger(__name__)

VERMA = "verma"
MTHETA0 = "mtheta0"
SIMPLE = "simple"


class VermaParams(FrozenModel):
    theta: Rational
    h: Rational


class VermaModule(PBWModule):
    """V̄(θ, h): free letters d_j, j ≤ -1; key weight is the level."""

    family = VERMA

    def __init__(self, params: VermaParams):
        super().__init__(params.theta, top=-1)
        self.params = params
        self.h = params.h

    def _act_basis(self, k: int, key: PBWKey) -> dict:
        if k == 0:
            eigenvalue = self.h - self.weight(key)
            return {key: eigenvalue} if eigenvalue else {}
        return super()._act_basis(k, key)

    def _act_cyclic(self, k: int) -> dict:
        return {}

    def annihilation_bound(self, key: PBWKey) -> int:
        return self.weight(key)


@lru_cache(maxsize=256)
def verma_module(params: VermaParams) -> VermaModule:
    return VermaModule(params)


def verma_act(params: VermaParams, n: int, v: Vector) -> Vector:
    return verma_module(params).act(n, v)


def level_basis(level: int) -> list[PBWKey]:
    """Canonical PBW keys of one level (d_{-1}-heavy monomials first)."""
    return _LEVELS.keys_of_weight(level)


def verma_weight_check(params: VermaParams, max_level: int) -> list[PBWKey]:
    """
    Keys of level ≤ ``max_level`` on which d_0 fails to act as h - level, with d_0 recomputed
    as -(d_1 d_{-1} - d_{-1} d_1)/2 through the straightening rule. Empty when consistent.
    """
    module = verma_module(params)
    failing = []
    for key in module.basis(max_level):
        expected = {key: params.h - module.weight(key)} if params.h != module.weight(key) else {}
        recomputed = module.act_terms(1, module.act_terms(-1, {key: Fraction(1)}))
        accumulate(recomputed, module.act_terms(-1, module.act_key(1, key)), -1)
        recomputed = {k: -c / 2 for k, c in recomputed.items()}
        if recomputed != expected or dict(module.act_key(0, key)) != expected:
            failing.append(key)
    return failing


def gram_matrix(params: VermaParams, level: int) -> list[list[Fraction]]:
    """Contravariant form at one level: entry (a, b) is the v-coefficient of σ(a)·b·v."""
    if level < 1:
        raise InvalidInputError("level must be positive")
    module = verma_module(params)
    keys = module.keys_of_weight(level)
    matrix = []
    for a in keys:
        row = []
        for b in keys:
            terms: Mapping = {b: Fraction(1)}
            for letter in a:
                terms = module.act_terms(-letter, terms)
            row.append(Fraction(terms.get((), 0)))
        matrix.append(row)
    return matrix


def gram_determinant(params: VermaParams, level: int) -> Fraction:
    return determinant(gram_matrix(params, level))


def singular_vectors(params: VermaParams, level: int) -> list[Vector]:
    """Basis of the joint kernel of d_1 and d_2 on one level, as primitive integer vectors."""
    if level < 1:
        raise InvalidInputError("level must be positive")
    module = verma_module(params)
    columns = module.keys_of_weight(level)
    rows = []
    for generator in (1, 2):
        targets = {key: i for i, key in enumerate(module.keys_of_weight(level - generator))}
        block = [dict() for _ in targets]
        for c, key in enumerate(columns):
            for image, coeff in module.act_key(generator, key).items():
                block[targets[image]][c] = coeff
        rows.extend(block)
    kernel = nullspace(rows, len(columns))
    return [
        module.vector(primitive({columns[c]: value for c, value in vec.items()}, columns)) for vec in kernel
    ]


def kac_factor(theta: Fraction, h: Fraction, k: int, l: int) -> Fraction:
    """(h + φ(k) + (kl-1)/2)(h + φ(l) + (kl-1)/2) + (k² - l²)²/16, φ(j) = (j²-1)(θ-13)/24."""
    if k < 1 or l < 1:
        raise InvalidInputError("k and l must be positive integers")
    theta, h = Fraction(theta), Fraction(h)

    def phi(j: int) -> Fraction:
        return Fraction(j * j - 1, 24) * (theta - 13)

    shift = Fraction(k * l - 1, 2)
    return (h + phi(k) + shift) * (h + phi(l) + shift) + Fraction((k * k - l * l) ** 2, 16)


def _first_solution(p: int, q: int, target: int) -> Optional[tuple[int, int]]:
    """Positive (r, s) with r·p - s·q = target and r·s least, for p, q > 0."""
    best = None
    start = max(1, -(-(target + q) // p))
    for r in range(start, start + q):
        if (r * p - target) % q == 0:
            s = (r * p - target) // q
            if s >= 1:
                best = (r, s)
            break
    return best


def kac_zero_exact(theta: Fraction, h: Fraction) -> Optional[tuple[int, int]]:
    """
    Decide exactly whether kac_factor(θ, -h, k, l) vanishes for some k, l ≥ 1, returning the
    witness with the least product kl. Writes θ = 13 - 6(t + 1/t) and solves (kt - l)² =
    4t·w + (t - 1)² in positive integers, where w = -h.
    """
    theta, weight = Fraction(theta), -Fraction(h)
    tau = (13 - theta) / 6
    root = rational_sqrt(tau * tau - 4)
    if root is None:
        # t irrational: the {1, t} components force k = l
        square = 1 + 4 * weight / (tau - 2)
        k = rational_sqrt(square)
        if k is None or k.denominator != 1 or k < 1:
            return None
        return (int(k), int(k))
    t = (tau + root) / 2
    p, q = t.numerator, t.denominator
    g = rational_sqrt(4 * p * q * weight + (p - q) ** 2)
    if g is None or g.denominator != 1:
        return None
    g = int(g)
    candidates = []
    if p > 0:
        for target in {g, -g}:
            found = _first_solution(p, q, target)
            if found:
                candidates.append(found)
    else:
        for r in range(1, g // -p + 1):
            rest = g - r * -p
            if rest > 0 and rest % q == 0:
                candidates.append((r, rest // q))
    if not candidates:
        return None
    # the Kac factor is symmetric in (k, l); report the orientation the bounded scan finds first
    candidates += [(s, r) for r, s in candidates]
    return min(candidates, key=lambda rs: (rs[0] * rs[1], rs))


def verma_is_simple(
    theta: Fraction, h: Fraction, bound: Optional[int] = None, exact: bool = False
) -> SimplicityVerdict:
    """
    Simplicity of V̄(θ, h). The default is the bounded scan over kl ≤ bound; ``exact=True``
    solves the Kac zero locus in integers instead.
    """
    theta, h = Fraction(theta), Fraction(h)
    if exact:
        witness = kac_zero_exact(theta, h)
        if witness is None:
            return SimplicityVerdict.simple("no Kac factor vanishes", method="exact")
        k, l = witness
        return SimplicityVerdict.not_simple("Kac factor vanishes", {"k": k, "l": l}, method="exact")

    bound = bound if bound is not None else get_settings().kac_bound
    if bound < 1:
        raise InvalidInputError("bound must be positive")
    for product in range(1, bound + 1):
        for k in range(1, product + 1):
            if product % k:
                continue
            l = product // k
            if kac_factor(theta, -h, k, l) == 0:
                return SimplicityVerdict.not_simple(
                    "Kac factor vanishes", {"k": k, "l": l}, method="bounded", bound=bound
                )
    logger.warning(f"V̄({theta}, {h}): no vanishing Kac factor with kl ≤ {bound}; simplicity is bounded")
    return SimplicityVerdict(
        status="simple-up-to-bound", bound=bound, method="bounded", reason=f"no Kac factor vanishes for kl <= {bound}"
    )


class QuotientModule(VirasoroModule):
    """A Verma module modulo a graded submodule, represented by reduced representatives."""

    def __init__(self, verma: VermaModule):
        super().__init__()
        self.verma = verma
        self._pieces: dict[int, Subspace] = {}

    @property
    def central_charge(self) -> Fraction:
        return self.verma.theta

    def cyclic_key(self) -> PBWKey:
        return ()

    def weight(self, key: PBWKey) -> int:
        return self.verma.weight(key)

    @abstractmethod
    def _relations(self, level: int) -> list[dict]:
        """Spanning vectors of the submodule at one level."""

    def piece(self, level: int) -> Subspace:
        space = self._pieces.get(level)
        if space is None:
            space = Subspace(self.verma.keys_of_weight(level))
            space.extend(self._relations(level))
            logger.debug(f"{self.family}: submodule piece at level {level} has dimension {space.dimension}")
            self._pieces[level] = space
        return space

    def reduce_terms(self, terms: Mapping[Hashable, Fraction]) -> dict:
        by_level: dict[int, dict] = {}
        for key, value in terms.items():
            by_level.setdefault(self.weight(key), {})[key] = value
        reduced: dict = {}
        for level, part in by_level.items():
            reduced.update(self.piece(level).reduce(part))
        return reduced

    def project(self, v: Vector) -> Vector:
        """Image of a Verma vector (or representative) in the quotient."""
        return self.vector(self.reduce_terms(v.terms))

    def _act_basis(self, k: int, key: PBWKey) -> dict:
        return self.reduce_terms(self.verma.act_key(k, key))

    def keys_of_weight(self, level: int) -> list[PBWKey]:
        pivots = set(self.piece(level).pivot_keys())
        return [key for key in self.verma.keys_of_weight(level) if key not in pivots]

    def basis(self, max_level: int) -> list[PBWKey]:
        return [key for level in range(max_level + 1) for key in self.keys_of_weight(level)]

    def annihilation_bound(self, key: PBWKey) -> int:
        return self.verma.annihilation_bound(key)


class MThetaZeroModule(QuotientModule):
    """M(θ, 0) = V̄(θ, 0) / U(Vir)·d_{-1}v."""

    family = MTHETA0

    def __init__(self, theta: Fraction):
        super().__init__(verma_module(VermaParams(theta=theta, h=0)))
        self.theta = Fraction(theta)

    def _relations(self, level: int) -> list[dict]:
        if level < 1:
            return []
        generator = {(-1,): Fraction(1)}
        return [self.verma.word_terms(key, generator) for key in self.verma.keys_of_weight(level - 1)]


class SimpleQuotientModule(QuotientModule):
    """V(θ, h): each level modulo the radical of its Gram matrix, up to ``level_cap``."""

    family = SIMPLE

    def __init__(self, params: VermaParams, level_cap: int):
        super().__init__(verma_module(params))
        self.params = params
        self.level_cap = level_cap

    def _relations(self, level: int) -> list[dict]:
        if level > self.level_cap:
            raise LevelCapExceededError(f"level {level} exceeds the simple quotient cap {self.level_cap}")
        if level < 1:
            return []
        columns = self.verma.keys_of_weight(level)
        radical = nullspace(
            [{j: v for j, v in enumerate(row) if v} for row in gram_matrix(self.params, level)], len(columns)
        )
        return [{columns[j]: v for j, v in vec.items()} for vec in radical]


@lru_cache(maxsize=64)
def mtheta0_module(theta: Fraction) -> MThetaZeroModule:
    return MThetaZeroModule(Fraction(theta))


@lru_cache(maxsize=64)
def simple_quotient_module(params: VermaParams, level_cap: Optional[int] = None) -> SimpleQuotientModule:
    return SimpleQuotientModule(params, level_cap if level_cap is not None else get_settings().level_cap)


def mtheta0_act(theta: Fraction, n: int, v: Vector) -> Vector:
    return mtheta0_module(Fraction(theta)).act(n, v)


def simple_quotient_act(params: VermaParams, n: int, v: Vector) -> Vector:
    return simple_quotient_module(params).act(n, v)


def mtheta0_is_simple(theta: Fraction) -> SimplicityVerdict:
    """
    M(θ, 0) is reducible iff θ = 1 - 6(p-q)²/(pq) for coprime p, q ≥ 2, i.e. iff
    x² - (t+2)x + 1 = 0 with t = (1-θ)/6 has a root p/q in lowest terms with p, q ≥ 2.
    """
    t = (1 - Fraction(theta)) / 6
    middle = t + 2
    root = rational_sqrt(middle * middle - 4)
    if root is not None:
        for x in ((middle + root) / 2, (middle - root) / 2):
            if x > 0 and min(x.numerator, x.denominator) >= 2:
                p, q = sorted((x.numerator, x.denominator))
                return SimplicityVerdict.not_simple("theta = 1 - 6(p-q)^2/(pq)", {"p": p, "q": q})
    return SimplicityVerdict.simple("theta avoids 1 - 6(p-q)^2/(pq)")


_LEVELS = VermaModule(VermaParams(theta=0, h=0))
