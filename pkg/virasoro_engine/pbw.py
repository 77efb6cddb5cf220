"""
PBW normal ordering shared by every family induced from a one-dimensional module:
Verma modules, Whittaker modules and the modules Ind(B_s).

A basis key is a non-increasing tuple of free generator indices (all ≤ ``top``); the
key (a_1, ..., a_r) stands for d_{a_1} ... d_{a_r} applied to the cyclic vector.
"""
import logging
from abc import abstractmethod
from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Mapping, Sequence

from sympy.utilities.iterables import partitions

from .algebra_core import VirasoroModule, accumulate

logger = logging.getLogger(__name__)

PBWKey = tuple[int, ...]


class PBWModule(VirasoroModule):
    def __init__(self, theta: Fraction, top: int):
        super().__init__()
        self.theta = Fraction(theta)
        self.top = top

    @property
    def central_charge(self) -> Fraction:
        return self.theta

    def cyclic_key(self) -> PBWKey:
        return ()

    def is_free(self, k: int) -> bool:
        return k <= self.top

    def letter_weight(self, j: int) -> int:
        return self.top + 1 - j

    def weight(self, key: PBWKey) -> int:
        return sum(self.letter_weight(j) for j in key)

    @abstractmethod
    def _act_cyclic(self, k: int) -> dict:
        """d_k on the cyclic vector for a non-free index k > top."""

    def _act_basis(self, k: int, key: PBWKey) -> dict:
        if self.is_free(k) and (not key or k >= key[0]):
            return {(k,) + key: Fraction(1)}
        if not key:
            return self._act_cyclic(k)
        # d_k d_a w = d_a (d_k w) + [d_k, d_a] w
        head, rest = key[0], key[1:]
        result: dict = {}
        for inner, coeff in self.act_key(k, rest).items():
            accumulate(result, self.act_key(head, inner), coeff)
        if head != k:
            accumulate(result, self.act_key(k + head, rest), head - k)
        if k == -head and k**3 - k:
            accumulate(result, {rest: Fraction(1)}, Fraction(k**3 - k, 12) * self.theta)
        return result

    def keys_of_weight(self, w: int) -> list[PBWKey]:
        """Keys of weight ``w`` in canonical order: exponent vectors descending, lightest letter first."""
        if w < 0:
            return []
        if w == 0:
            return [()]
        found = []
        for parts in partitions(w):
            exponents = tuple(parts.get(p, 0) for p in range(1, w + 1))
            letters = tuple(self.top + 1 - p for p in sorted(parts) for _ in range(parts[p]))
            found.append((exponents, letters))
        found.sort(reverse=True)
        return [letters for _, letters in found]

    def basis(self, max_weight: int) -> list[PBWKey]:
        return [key for w in range(max_weight + 1) for key in self.keys_of_weight(w)]

    def word_terms(self, key: PBWKey, terms: Mapping[Hashable, Fraction]) -> dict:
        """Apply the word d_{a_1} ... d_{a_r} of ``key`` to arbitrary terms."""
        current = dict(terms)
        for letter in reversed(key):
            current = self.act_terms(letter, current)
        return current


def canonical_sort_key(key: PBWKey, top: int) -> tuple:
    w = sum(top + 1 - j for j in key)
    exponents = [0] * w
    for j in key:
        exponents[top - j] += 1
    return (w, tuple(-e for e in exponents))


def primitive(terms: Mapping[Hashable, Fraction], order: Sequence[Hashable]) -> dict:
    """Scale to coprime integer coefficients with the first key (in ``order``) positive."""
    if not terms:
        return {}
    denominator = lcm(*(value.denominator for value in terms.values()))
    integers = {key: int(value * denominator) for key, value in terms.items()}
    divisor = gcd(*integers.values())
    lead = next(key for key in order if key in integers)
    sign = 1 if integers[lead] > 0 else -1
    return {key: Fraction(sign * value, divisor) for key, value in integers.items()}
