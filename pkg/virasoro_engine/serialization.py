"""JSON schemas for vectors of every family. All numbers are exact rational strings."""
from collections import Counter
from typing import Any

from .algebra_core import Vector, VirasoroModule
from .errors import InvalidInputError
from .pbw import PBWKey, canonical_sort_key
from .scalars import as_scalar, format_scalar


def key_to_json(key: PBWKey) -> list[list[int]]:
    """[[index, exponent], ...] by descending index."""
    counts = Counter(key)
    return [[index, counts[index]] for index in sorted(counts, reverse=True)]


def key_from_json(pairs: Any, top: int) -> PBWKey:
    letters = []
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise InvalidInputError(f"partition entries must be [index, exponent] pairs, got {pair!r}")
        index, exponent = int(pair[0]), int(pair[1])
        if index > top:
            raise InvalidInputError(f"d_{index} is not a free generator here (indices must be <= {top})")
        if exponent < 0:
            raise InvalidInputError("exponents must be non-negative")
        letters.extend([index] * exponent)
    return tuple(sorted(letters, reverse=True))


def omega_vector_to_json(v: Vector) -> list[dict[str, Any]]:
    return [{"degree": d, "coefficient": format_scalar(c)} for d, c in sorted(v.items())]


def omega_vector_from_json(data: Any) -> Vector:
    terms: dict = {}
    for entry in data:
        degree = int(entry["degree"])
        if degree < 0:
            raise InvalidInputError("degrees must be non-negative")
        terms[degree] = terms.get(degree, 0) + as_scalar(entry["coefficient"])
    return Vector("omega", terms)


def module_top(module: VirasoroModule) -> int:
    """Largest free generator index of a PBW-type module (or of a tensor's factor)."""
    if hasattr(module, "factor"):
        return module_top(module.factor)
    if hasattr(module, "verma"):
        return module.verma.top
    return module.top


def pbw_vector_to_json(v: Vector, top: int) -> list[dict[str, Any]]:
    ordered = sorted(v.items(), key=lambda item: canonical_sort_key(item[0], top))
    return [{"partition": key_to_json(key), "coeff": format_scalar(c)} for key, c in ordered]


def pbw_vector_from_json(family: str, data: Any, top: int) -> Vector:
    terms: dict = {}
    for entry in data:
        key = key_from_json(entry["partition"], top)
        terms[key] = terms.get(key, 0) + as_scalar(entry["coeff"])
    return Vector(family, terms)


def tensor_vector_to_json(v: Vector, top: int) -> list[dict[str, Any]]:
    ordered = sorted(v.items(), key=lambda item: (item[0][0], canonical_sort_key(item[0][1], top)))
    return [
        {"partial_degree": i, "factor_key": key_to_json(fkey), "coeff": format_scalar(c)}
        for (i, fkey), c in ordered
    ]


def tensor_vector_from_json(data: Any, top: int) -> Vector:
    terms: dict = {}
    for entry in data:
        i = int(entry["partial_degree"])
        if i < 0:
            raise InvalidInputError("partial degrees must be non-negative")
        key = (i, key_from_json(entry["factor_key"], top))
        terms[key] = terms.get(key, 0) + as_scalar(entry["coeff"])
    return Vector("tensor", terms)


def vector_to_json(module: VirasoroModule, v: Vector) -> list[dict[str, Any]]:
    if module.family == "omega":
        return omega_vector_to_json(v)
    if module.family == "tensor":
        return tensor_vector_to_json(v, module_top(module))
    return pbw_vector_to_json(v, module_top(module))


def vector_from_json(module: VirasoroModule, data: Any) -> Vector:
    if not isinstance(data, list):
        raise InvalidInputError("vectors are JSON lists of terms")
    try:
        if module.family == "omega":
            return omega_vector_from_json(data)
        if module.family == "tensor":
            return tensor_vector_from_json(data, module_top(module))
        return pbw_vector_from_json(module.family, data, module_top(module))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise InvalidInputError(f"malformed {module.family} vector: {exc}") from exc
