# flake8: noqa
from importlib.metadata import version  # type: ignore

# isort: off

from dehnthurston.exceptions import (
    CoordinateError,
    DehnThurstonException,
    InvalidSiteError,
    RecipeError,
    ScanLimitError,
    SurfaceError,
    TranscriptionError,
    WordError,
    WordParseError,
)
from dehnthurston.surface import (
    MoveKind,
    PantsDecomposition,
    Scope,
    SurfaceSpec,
    build_pants_decomposition,
    enumerate_move_sites,
    random_decomposition,
)

# isort: on

from dehnthurston.coords import (
    DTCoords,
    IntegralMulticurve,
    lambda_to_m,
    m_to_lambda,
    normalize,
    sample,
    validate_integral,
)
from dehnthurston.dsl import parse_word_dsl
from dehnthurston.moves import (
    MappingWord,
    Move,
    Twist,
    apply_word,
    invert_word,
    move_first,
    move_second,
    twist,
)
from dehnthurston.multicurve import build_strand_model, count_components
from dehnthurston.pa import build_recipe, estimate_dilatation, spectrum_scan
from dehnthurston.presets import PresetHelper, preset
from dehnthurston.relations import run_suites

__version__ = version("python-dehnthurston")
