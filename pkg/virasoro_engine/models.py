"""Shared pydantic records: exact rational fields, the truncation window and verdicts."""
from fractions import Fraction
from typing import Annotated, Literal, Optional

from pydantic import AfterValidator, BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer, WithJsonSchema

from .errors import InvalidInputError
from .scalars import as_scalar, format_scalar

Rational = Annotated[
    Fraction,
    BeforeValidator(as_scalar),
    PlainSerializer(format_scalar, return_type=str),
    WithJsonSchema({"type": "string", "pattern": r"^[+-]?\d+(/\d+)?$"}),
]


def _nonzero(value: Fraction) -> Fraction:
    if value == 0:
        raise InvalidInputError("lambda must be nonzero")
    return value


NonzeroRational = Annotated[Rational, AfterValidator(_nonzero)]


class FrozenModel(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class Truncation(FrozenModel):
    """Window (∂-degree cap D, factor level cap L, operator range [-K, K])."""

    D: int = Field(ge=1)
    L: int = Field(ge=1)
    K: int = Field(ge=1)

    @classmethod
    def parse(cls, text: str) -> "Truncation":
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 3 or not all(p.lstrip("-").isdigit() for p in parts):
            raise InvalidInputError(f"window must read 'D,L,K', got {text!r}")
        d, l, k = (int(p) for p in parts)
        return cls(D=d, L=l, K=k)

    def label(self) -> str:
        return f"{self.D},{self.L},{self.K}"


VerdictStatus = Literal["simple", "simple-up-to-bound", "not-simple", "unknown"]


class SimplicityVerdict(BaseModel):
    status: VerdictStatus
    witness: Optional[dict[str, int]] = None
    bound: Optional[int] = None
    method: str = "exact"
    reason: str = ""

    @property
    def is_simple(self) -> Optional[bool]:
        if self.status == "simple":
            return True
        if self.status == "not-simple":
            return False
        return None

    @classmethod
    def simple(cls, reason: str = "", method: str = "exact") -> "SimplicityVerdict":
        return cls(status="simple", reason=reason, method=method)

    @classmethod
    def not_simple(
        cls, reason: str, witness: Optional[dict[str, int]] = None, method: str = "exact", bound: Optional[int] = None
    ) -> "SimplicityVerdict":
        return cls(status="not-simple", reason=reason, witness=witness, method=method, bound=bound)
