"""JSON document models.

Rationals are carried as strings (``"3/2"``, ``"-4"``) so that documents round
trip without touching floating point.
"""
from typing import List, Optional, Union

from pydantic import BaseModel, Field, validator

from .utils import format_rational, parse_rational


class SurfaceModel(BaseModel):
    genus: int = Field(ge=0)
    boundary_count: int = Field(0, ge=0)
    puncture_count: int = Field(0, ge=0)


class PantsModel(BaseModel):
    """A pants, listing the slots (0, 1 or 2) that are punctures."""

    punctures: List[int] = []


class BindingModel(BaseModel):
    """An interior curve gluing two ``[pants, slot]`` slots."""

    slots: List[List[int]]
    framing: bool = False
    generation: int = Field(0, ge=0)


class GluingDescription(BaseModel):
    """Slot-binding description of a pants decomposition.

    Curve ids are assigned in the order of `bindings` followed by `boundary`.
    """

    surface: SurfaceModel
    pants: List[PantsModel]
    bindings: List[BindingModel] = []
    boundary: List[List[int]] = []


class CoordinateEntry(BaseModel):
    curve: int = Field(ge=0)
    m: str = "0"
    t: str = "0"

    @validator("m", "t", pre=True)
    def canonical_rational(cls, value: Union[int, str]) -> str:
        return format_rational(parse_rational(value))


class CoordinatesDocument(BaseModel):
    """Dehn-Thurston coordinates, missing curves read as ``(0, 0)``."""

    scope: Optional[str] = None
    coordinates: List[CoordinateEntry] = []

    @validator("scope")
    def known_scope(cls, value: Optional[str]) -> Optional[str]:
        if value is not None and value not in ("MF", "MF0"):
            raise ValueError("scope must be MF or MF0")
        return value

    @classmethod
    def from_json_value(cls, value) -> "CoordinatesDocument":
        """Accept both the full document and a bare array of entries."""
        if isinstance(value, list):
            value = {"coordinates": value}
        return cls.parse_obj(value)


class GeneratorModel(BaseModel):
    """One generator of a word, mirroring a word token."""

    op: str
    curve: int = Field(ge=0)
    sign: Optional[int] = None
    kind: Optional[str] = None
    labeling: int = 0
    inverse: Optional[bool] = None

    @validator("op")
    def known_op(cls, value: str) -> str:
        if value not in ("twist", "move"):
            raise ValueError("op must be twist or move")
        return value


class DilatationModel(BaseModel):
    word: str
    dilatation: float
    log_dilatation: float
    iterations: int
    converged: bool
    residual: float


class ScanRecord(BaseModel):
    word: str
    recipe: Optional[str] = None
    log_lambda: float
    converged: bool
    iterations: int


class SuiteReportModel(BaseModel):
    suite: str
    passed: bool
    checked: int
    skipped: bool = False
    counterexample: Optional[dict] = None
