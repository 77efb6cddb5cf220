from typing import Any, List, Optional

from pydantic import BaseModel, Field

from virasoro_engine.models import Rational
from virasoro_engine.service import ModuleSpec


class SimplicityRequest(BaseModel):
    module: ModuleSpec
    bound: Optional[int] = Field(default=None, ge=1)
    exact: bool = False


class KacRequest(BaseModel):
    theta: Rational
    h: Rational
    max_kl: int = Field(default=6, ge=1)


class SingularRequest(BaseModel):
    theta: Rational
    h: Rational
    level: int = Field(ge=1)


class ActRequest(BaseModel):
    module: ModuleSpec
    k: Optional[int] = None
    element: Optional[List[Any]] = None
    vector: Optional[List[Any]] = None


class OmegaRequest(BaseModel):
    module: ModuleSpec
    s: int = Field(ge=0)
    l: int
    m: int
    vector: Optional[List[Any]] = None


class IsoVerifyRequest(BaseModel):
    module: ModuleSpec
    window: Optional[str] = None


class ClosureRequest(BaseModel):
    module: ModuleSpec
    generators: Optional[List[Any]] = None
    window: Optional[str] = None
    margin: int = 1
    random_count: int = Field(default=0, ge=0)
    seed: Optional[int] = None
    include_basis: bool = False
    include_cyclic: bool = True


class BracketCheckRequest(BaseModel):
    module: ModuleSpec
    index_range: int = Field(default=6, ge=0)
    degree: int = Field(default=5, ge=0)


class ClassifyRequest(BaseModel):
    first: ModuleSpec
    second: ModuleSpec
    bound: Optional[int] = Field(default=None, ge=1)
