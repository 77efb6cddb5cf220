"""
Tool facade shared by the CLI, the HTTP API and the MCP server. Every method takes
plain (JSON-compatible) arguments and returns a JSON-ready dict.
"""
import logging
import random
from fractions import Fraction
from typing import Any, Literal, Optional

from pydantic import BaseModel, ValidationError

from .algebra_core import UEAElement, UEAWord, VirasoroModule, apply_element, commutator_defect, omega_operator
from .config import get_settings
from .errors import InvalidInputError, PreconditionError
from .highest_weight import (
    VermaParams,
    kac_factor,
    mtheta0_is_simple,
    mtheta0_module,
    simple_quotient_module,
    singular_vectors,
    verma_is_simple,
    verma_module,
    verma_weight_check,
)
from .induced_module import InducedParams, induced_is_simple, induced_module, iso_verifier
from .models import Rational, SimplicityVerdict, Truncation
from .omega_module import OmegaParams, omega_is_simple, omega_module
from .scalars import as_scalar, format_scalar
from .serialization import vector_from_json, vector_to_json
from .tensor_module import (
    MThetaZeroFactor,
    SimpleQuotientFactor,
    TensorModule,
    TensorParams,
    VermaFactor,
    WhittakerFactor,
    cyclic_closure,
    random_window_vector,
    tensor_module,
    tensor_is_simple,
    submodule_shape,
    tensor_isomorphic,
)
from .whittaker import WhittakerParams, whittaker_is_simple, whittaker_module

logger = logging.getLogger(__name__)

Family = Literal["omega", "verma", "mtheta0", "simple", "whittaker", "induced", "tensor"]


class ModuleSpec(BaseModel):
    """Flat description of a catalog module; which fields are needed depends on ``family``."""

    family: Family
    lam: Optional[Rational] = None
    b: Optional[Rational] = None
    theta: Optional[Rational] = None
    h: Optional[Rational] = None
    n: Optional[int] = None
    lambdas: Optional[list[Rational]] = None
    s: Optional[list[Rational]] = None
    factor: Optional[Literal["verma", "simple", "mtheta0", "whittaker"]] = None


def _required(spec: ModuleSpec, *names: str) -> None:
    missing = [name for name in names if getattr(spec, name) is None]
    if missing:
        raise InvalidInputError(f"family {spec.family!r} needs: {', '.join(missing)}")


def _factor_descriptor(spec: ModuleSpec):
    _required(spec, "factor", "theta")
    if spec.factor in ("verma", "simple"):
        _required(spec, "h")
        cls = VermaFactor if spec.factor == "verma" else SimpleQuotientFactor
        return cls(theta=spec.theta, h=spec.h)
    if spec.factor == "mtheta0":
        return MThetaZeroFactor(theta=spec.theta)
    _required(spec, "n", "lambdas")
    return WhittakerFactor(n=spec.n, lambdas=tuple(spec.lambdas), theta=spec.theta)


def parameters(spec: ModuleSpec):
    """The validated parameter record of ``spec``."""
    try:
        if spec.family == "omega":
            _required(spec, "lam", "b")
            return OmegaParams(lam=spec.lam, b=spec.b)
        if spec.family in ("verma", "simple"):
            _required(spec, "theta", "h")
            return VermaParams(theta=spec.theta, h=spec.h)
        if spec.family == "mtheta0":
            _required(spec, "theta")
            return spec.theta
        if spec.family == "whittaker":
            _required(spec, "n", "lambdas", "theta")
            return WhittakerParams(n=spec.n, lambdas=tuple(spec.lambdas), theta=spec.theta)
        if spec.family == "induced":
            _required(spec, "n", "theta", "s")
            lam = spec.lam if spec.lam is not None else Fraction(1)
            return InducedParams(n=spec.n, lam=lam, theta=spec.theta, s=tuple(spec.s))
        _required(spec, "lam", "b")
        return TensorParams(omega=OmegaParams(lam=spec.lam, b=spec.b), factor=_factor_descriptor(spec))
    except ValidationError as exc:
        raise InvalidInputError(_validation_message(exc)) from exc


def _validation_message(exc: ValidationError) -> str:
    return "; ".join(f"{'.'.join(str(p) for p in err['loc']) or 'value'}: {err['msg']}" for err in exc.errors())


def build_module(spec: ModuleSpec) -> VirasoroModule:
    params = parameters(spec)
    builders = {
        "omega": omega_module,
        "verma": verma_module,
        "mtheta0": mtheta0_module,
        "simple": simple_quotient_module,
        "whittaker": whittaker_module,
        "induced": induced_module,
        "tensor": tensor_module,
    }
    return builders[spec.family](params)


def coerce_spec(spec: Any) -> ModuleSpec:
    if isinstance(spec, ModuleSpec):
        return spec
    try:
        return ModuleSpec.model_validate(spec)
    except ValidationError as exc:
        raise InvalidInputError(_validation_message(exc)) from exc


def element_from_json(data: Any) -> UEAElement:
    """[{"word": [i, j, ...], "central": p, "coeff": "a/b"}, ...]"""
    if not isinstance(data, list):
        raise InvalidInputError("an element is a JSON list of {word, central, coeff} terms")
    try:
        return UEAElement(
            (UEAWord(tuple(int(i) for i in term["word"]), int(term.get("central", 0))), as_scalar(term.get("coeff", "1")))
            for term in data
        )
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed element term: {exc}") from exc


def basis_keys(module: VirasoroModule, degree: int) -> list:
    """Basis keys of degree/level/weight ≤ ``degree`` for any catalog module."""
    if module.family == "omega":
        return list(range(degree + 1))
    if isinstance(module, TensorModule):
        return [(i, fkey) for i in range(degree + 1) for fkey in module.factor.basis(degree)]
    return module.basis(degree)


def verdict_payload(family: str, verdict: SimplicityVerdict) -> dict:
    payload = verdict.model_dump(mode="json")
    payload.update(family=family, simple=verdict.is_simple)
    return payload


class EngineTools:
    """Operations exposed by every surface."""

    @staticmethod
    def act(spec: Any, k: Optional[int] = None, element: Any = None, vector: Any = None) -> dict:
        spec = coerce_spec(spec)
        module = build_module(spec)
        v = module.cyclic_vector() if vector is None else vector_from_json(module, vector)
        if (k is None) == (element is None):
            raise InvalidInputError("give exactly one of a generator index k or an element")
        logger.info(f"act on {spec.family}: k={k}, element={element is not None}")
        result = module.act(k, v) if k is not None else apply_element(module, element_from_json(element), v)
        return {"family": spec.family, "input": vector_to_json(module, v), "result": vector_to_json(module, result)}

    @staticmethod
    def bracket_check(spec: Any, index_range: int = 6, degree: int = 5) -> dict:
        spec = coerce_spec(spec)
        module = build_module(spec)
        keys = basis_keys(module, degree)
        logger.info(f"bracket check on {spec.family}: |i|,|j| <= {index_range}, {len(keys)} basis vectors")
        failures = []
        for key in keys:
            v = module.monomial(key)
            for i in range(-index_range, index_range + 1):
                for j in range(i + 1, index_range + 1):
                    defect = commutator_defect(module, i, j, v)
                    if defect:
                        failures.append({"i": i, "j": j, "vector": vector_to_json(module, v)})
        if spec.family == "verma":
            for key in verma_weight_check(parameters(spec), degree):
                failures.append({"check": "d_0 weight", "vector": vector_to_json(module, module.monomial(key))})
        return {
            "family": spec.family,
            "ok": not failures,
            "basis_vectors": len(keys),
            "index_range": index_range,
            "degree": degree,
            "failures": failures[:20],
        }

    @staticmethod
    def singular(theta: Any, h: Any, level: int) -> dict:
        params = VermaParams(theta=as_scalar(theta), h=as_scalar(h))
        module = verma_module(params)
        vectors = singular_vectors(params, level)
        logger.info(f"singular vectors of V({theta}, {h}) at level {level}: {len(vectors)}")
        return {"theta": format_scalar(params.theta), "h": format_scalar(params.h), "level": level,
                "vectors": [vector_to_json(module, v) for v in vectors]}

    @staticmethod
    def kac(theta: Any, h: Any, max_kl: int) -> dict:
        theta, h = as_scalar(theta), as_scalar(h)
        table = []
        for k in range(1, max_kl + 1):
            for l in range(1, max_kl // k + 1):
                table.append({"k": k, "l": l, "value": format_scalar(kac_factor(theta, h, k, l))})
        zeros = [[row["k"], row["l"]] for row in table if row["value"] == "0"]
        return {"theta": format_scalar(theta), "h": format_scalar(h), "max_kl": max_kl, "table": table, "zeros": zeros}

    @staticmethod
    def simplicity(spec: Any, bound: Optional[int] = None, exact: bool = False) -> dict:
        spec = coerce_spec(spec)
        params = parameters(spec)
        logger.info(f"simplicity of {spec.family} (bound={bound}, exact={exact})")
        if spec.family == "omega":
            simple = omega_is_simple(params)
            verdict = SimplicityVerdict.simple("b != 1") if simple else SimplicityVerdict.not_simple("b = 1")
        elif spec.family == "verma":
            verdict = verma_is_simple(params.theta, params.h, bound, exact=exact)
        elif spec.family == "mtheta0":
            verdict = mtheta0_is_simple(params)
        elif spec.family == "simple":
            verdict = SimplicityVerdict.simple("simple quotient")
        elif spec.family == "whittaker":
            simple = whittaker_is_simple(params)
            verdict = (
                SimplicityVerdict.simple("lambda_{2n-1} or lambda_{2n} is nonzero")
                if simple
                else SimplicityVerdict.not_simple("lambda_{2n-1} = lambda_{2n} = 0")
            )
        elif spec.family == "induced":
            verdict = induced_is_simple(params, bound, exact=exact)
        else:
            verdict = tensor_is_simple(params, bound, exact=exact)
        return verdict_payload(spec.family, verdict)

    @staticmethod
    def iso_verify(spec: Any, window: Optional[str] = None) -> dict:
        spec = coerce_spec(spec)
        if spec.family != "induced":
            raise InvalidInputError("iso-verify needs an induced module")
        truncation = Truncation.parse(window) if window else get_settings().iso_window
        report = iso_verifier(parameters(spec), truncation)
        return report.model_dump(mode="json")

    @staticmethod
    def closure(
        spec: Any,
        generators: Any = None,
        window: Optional[str] = None,
        margin: int = 1,
        random_count: int = 0,
        seed: Optional[int] = None,
        include_basis: bool = False,
        include_cyclic: bool = True,
    ) -> dict:
        spec = coerce_spec(spec)
        if spec.family != "tensor":
            raise InvalidInputError("closure needs a tensor module")
        params = parameters(spec)
        module = tensor_module(params)
        truncation = Truncation.parse(window) if window else get_settings().window
        if generators is not None:
            gens = [vector_from_json(module, g) for g in generators]
        else:
            gens = [module.cyclic_vector()] if include_cyclic else []
        rng = random.Random(get_settings().seed if seed is None else seed)
        gens += [random_window_vector(params, truncation, rng) for _ in range(random_count)]
        if not gens:
            raise InvalidInputError("closure needs at least one generator")
        result = cyclic_closure(params, gens, truncation)
        shape = submodule_shape(params, result, margin)
        payload = {
            "window": truncation.label(),
            "generators": len(gens),
            "dimension": result.dimension,
            "window_dimension": len(module.window_keys(truncation)),
            "rounds": result.rounds,
            "shape": shape.model_dump(mode="json"),
        }
        if include_basis:
            payload["basis"] = [vector_to_json(module, v) for v in result.basis()]
        return payload

    @staticmethod
    def omega_op(spec: Any, s: int, l: int, m: int, vector: Any = None) -> dict:
        spec = coerce_spec(spec)
        module = build_module(spec)
        v = module.cyclic_vector() if vector is None else vector_from_json(module, vector)
        result = apply_element(module, omega_operator(s, l, m), v)
        logger.info(f"omega^({s})_({l},{m}) on {spec.family}: {'zero' if not result else 'nonzero'}")
        return {"family": spec.family, "s": s, "l": l, "m": m, "zero": not result, "result": vector_to_json(module, result)}

    @staticmethod
    def classify(first: Any, second: Any, bound: Optional[int] = None) -> dict:
        first, second = coerce_spec(first), coerce_spec(second)
        if first.family != "tensor" or second.family != "tensor":
            raise InvalidInputError("classification compares two tensor modules")
        p1, p2 = parameters(first), parameters(second)
        verdicts = [tensor_is_simple(p, bound) for p in (p1, p2)]
        try:
            isomorphic = tensor_isomorphic(p1, p2)
        except PreconditionError as exc:
            logger.info(f"classify: {exc}")
            isomorphic = None
        return {
            "isomorphic": isomorphic,
            "both_simple": isomorphic is not None and all(v.status != "not-simple" for v in verdicts),
            "verdicts": [verdict_payload("tensor", v) for v in verdicts],
        }
