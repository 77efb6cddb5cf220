"""
The Virasoro bracket, free enveloping-algebra words, family-tagged vectors and the
module contract every family implements.

Bracket convention: [d_i, d_j] = (j - i) d_{i+j} + δ_{i,-j} (i³ - i)/12 c.
"""
import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from types import MappingProxyType
from typing import Hashable, Iterable, Iterator, Mapping, Union

from .config import get_settings
from .errors import FamilyMismatchError, InvalidInputError
from .scalars import format_scalar

logger = logging.getLogger(__name__)

Coefficient = Union[Fraction, int]


def accumulate(target: dict, source: Mapping, factor: Coefficient = 1) -> dict:
    """target += factor * source, dropping entries that cancel."""
    if not factor:
        return target
    for key, value in source.items():
        updated = target.get(key, 0) + factor * value
        if updated:
            target[key] = updated
        else:
            target.pop(key, None)
    return target


@dataclass(frozen=True, order=True)
class UEAWord:
    """d_{f_0} d_{f_1} ... d_{f_r} c^p; the rightmost factor acts first."""

    factors: tuple[int, ...] = ()
    central_power: int = 0

    def __post_init__(self):
        if self.central_power < 0:
            raise InvalidInputError("central power must be non-negative")

    def __mul__(self, other: "UEAWord") -> "UEAWord":
        return UEAWord(self.factors + other.factors, self.central_power + other.central_power)

    def __str__(self) -> str:
        parts = [f"d_{{{i}}}" for i in self.factors]
        if self.central_power:
            parts.append("c" if self.central_power == 1 else f"c^{self.central_power}")
        return " ".join(parts) or "1"


class UEAElement:
    """A finite rational combination of free words."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Union[Mapping[UEAWord, Coefficient], Iterable[tuple[UEAWord, Coefficient]]] = ()):
        collected: dict[UEAWord, Fraction] = {}
        pairs = terms.items() if isinstance(terms, Mapping) else terms
        for word, coeff in pairs:
            accumulate(collected, {word: Fraction(coeff)})
        self._terms = collected

    @classmethod
    def identity(cls) -> "UEAElement":
        return cls({UEAWord(): 1})

    @classmethod
    def generator(cls, i: int) -> "UEAElement":
        return cls({UEAWord((i,)): 1})

    @classmethod
    def central(cls) -> "UEAElement":
        return cls({UEAWord((), 1): 1})

    @classmethod
    def word(cls, *factors: int, coeff: Coefficient = 1) -> "UEAElement":
        return cls({UEAWord(tuple(factors)): coeff})

    @property
    def terms(self) -> Mapping[UEAWord, Fraction]:
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UEAElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: "UEAElement") -> "UEAElement":
        return UEAElement(accumulate(dict(self._terms), other._terms))

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return UEAElement(accumulate(dict(self._terms), other._terms, -1))

    def __neg__(self) -> "UEAElement":
        return UEAElement({w: -c for w, c in self._terms.items()})

    def __mul__(self, other: Union["UEAElement", Coefficient]) -> "UEAElement":
        if isinstance(other, UEAElement):
            return word_product(self, other)
        return UEAElement({w: c * other for w, c in self._terms.items()})

    def __rmul__(self, scalar: Coefficient) -> "UEAElement":
        return UEAElement({w: scalar * c for w, c in self._terms.items()})

    def __repr__(self) -> str:
        if not self._terms:
            return "UEAElement(0)"
        return "UEAElement(" + " + ".join(f"{format_scalar(c)}*{w}" for w, c in self.items()) + ")"


def bracket(i: int, j: int) -> UEAElement:
    """[d_i, d_j] = (j - i) d_{i+j} + δ_{i,-j} (i³ - i)/12 c."""
    terms: dict[UEAWord, Fraction] = {}
    if j != i:
        terms[UEAWord((i + j,))] = Fraction(j - i)
    if i == -j and i**3 - i:
        terms[UEAWord((), 1)] = Fraction(i**3 - i, 12)
    return UEAElement(terms)


def omega_operator(s: int, l: int, m: int) -> UEAElement:
    """ω^{(s)}_{l,m} = Σ_{i=0}^{s} C(s,i) (-1)^{s-i} d_{l-m-i} d_{m+i}."""
    if s < 0:
        raise InvalidInputError("s must be non-negative")
    return UEAElement(
        (UEAWord((l - m - i, m + i)), comb(s, i) * (-1) ** (s - i)) for i in range(s + 1)
    )


def word_product(left: UEAElement, right: UEAElement) -> UEAElement:
    return UEAElement((a * b, ca * cb) for a, ca in left.terms.items() for b, cb in right.terms.items())


def sigma(element: UEAElement) -> UEAElement:
    """Anti-involution d_n -> d_{-n}, c -> c."""
    return UEAElement(
        (UEAWord(tuple(-i for i in reversed(w.factors)), w.central_power), c) for w, c in element.terms.items()
    )


class Vector:
    """An exact vector of some module family: a finite map basis key -> Fraction."""

    __slots__ = ("family", "_terms")

    def __init__(self, family: str, terms: Mapping[Hashable, Coefficient] = MappingProxyType({})):
        self.family = family
        self._terms = {k: Fraction(v) for k, v in terms.items() if v}

    @classmethod
    def monomial(cls, family: str, key: Hashable, coeff: Coefficient = 1) -> "Vector":
        return cls(family, {key: coeff})

    @property
    def terms(self) -> Mapping[Hashable, Fraction]:
        return MappingProxyType(self._terms)

    def coefficient(self, key: Hashable) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def keys(self):
        return self._terms.keys()

    def items(self):
        return self._terms.items()

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _same_family(self, other: "Vector") -> None:
        if other.family != self.family:
            raise FamilyMismatchError(f"cannot combine {self.family} and {other.family} vectors")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.family == other.family and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.family, frozenset(self._terms.items())))

    def __add__(self, other: "Vector") -> "Vector":
        self._same_family(other)
        return Vector(self.family, accumulate(dict(self._terms), other._terms))

    def __sub__(self, other: "Vector") -> "Vector":
        self._same_family(other)
        return Vector(self.family, accumulate(dict(self._terms), other._terms, -1))

    def __neg__(self) -> "Vector":
        return Vector(self.family, {k: -v for k, v in self._terms.items()})

    def __mul__(self, scalar: Coefficient) -> "Vector":
        return Vector(self.family, {k: v * scalar for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = ", ".join(f"{k!r}: {format_scalar(v)}" for k, v in self._terms.items())
        return f"Vector({self.family!r}, {{{body}}})"


class VirasoroModule(ABC):
    """
    A Virasoro module given by the action of each d_k on its basis keys.

    Subclasses implement ``_act_basis``; results are memoized per instance, up to
    VIRASORO_MEMO_SIZE entries, after which the memo starts over. Filling the memo is
    idempotent, so concurrent readers at worst recompute an entry.
    """

    family: str = "abstract"

    def __init__(self):
        self._memo: dict[tuple[int, Hashable], dict] = {}
        self._memo_size = get_settings().memo_size

    @property
    @abstractmethod
    def central_charge(self) -> Fraction:
        """Scalar by which c acts."""

    @abstractmethod
    def _act_basis(self, k: int, key: Hashable) -> dict:
        """d_k applied to one basis key, as a fresh dict."""

    @abstractmethod
    def cyclic_key(self) -> Hashable:
        """Basis key of the distinguished generating vector."""

    def act_key(self, k: int, key: Hashable) -> Mapping[Hashable, Fraction]:
        cached = self._memo.get((k, key))
        if cached is None:
            cached = self._act_basis(k, key)
            if len(self._memo) >= self._memo_size:
                logger.debug(f"{self.family} action memo reached {self._memo_size} entries, clearing")
                self._memo.clear()
            self._memo[(k, key)] = cached
        return cached

    def act_terms(self, k: int, terms: Mapping[Hashable, Fraction]) -> dict:
        result: dict = {}
        for key, coeff in terms.items():
            accumulate(result, self.act_key(k, key), coeff)
        return result

    def check_family(self, v: Vector) -> None:
        if v.family != self.family:
            raise FamilyMismatchError(f"{self.family} module cannot act on a {v.family} vector")

    def act(self, k: int, v: Vector) -> Vector:
        self.check_family(v)
        return Vector(self.family, self.act_terms(k, v.terms))

    def vector(self, terms: Mapping[Hashable, Coefficient]) -> Vector:
        return Vector(self.family, terms)

    def monomial(self, key: Hashable, coeff: Coefficient = 1) -> Vector:
        return Vector.monomial(self.family, key, coeff)

    def zero(self) -> Vector:
        return Vector(self.family)

    def cyclic_vector(self) -> Vector:
        return self.monomial(self.cyclic_key())


def apply_terms(module: VirasoroModule, element: UEAElement, terms: Mapping[Hashable, Fraction]) -> dict:
    theta = module.central_charge
    result: dict = {}
    for word, coeff in element.terms.items():
        current: Mapping = terms
        for k in reversed(word.factors):
            current = module.act_terms(k, current)
            if not current:
                break
        accumulate(result, current, coeff * theta**word.central_power)
    return result


def apply_element(module: VirasoroModule, element: UEAElement, v: Vector) -> Vector:
    """Apply a free enveloping-algebra element; words act right-to-left, c acts as θ."""
    module.check_family(v)
    return Vector(module.family, apply_terms(module, element, v.terms))


def commutator_defect(module: VirasoroModule, i: int, j: int, v: Vector) -> Vector:
    """d_i d_j v - d_j d_i v - [d_i, d_j] v; zero certifies the bracket on v."""
    module.check_family(v)
    left = module.act_terms(i, module.act_terms(j, v.terms))
    accumulate(left, module.act_terms(j, module.act_terms(i, v.terms)), -1)
    accumulate(left, apply_terms(module, bracket(i, j), v.terms), -1)
    return Vector(module.family, left)
