class DehnThurstonException(Exception):
    """Base class for all errors raised by the coordinate kernel."""


class SurfaceError(DehnThurstonException):
    """Exception raised for invalid surface types or gluing descriptions."""


class UnknownPresetError(SurfaceError):
    """Exception raised when a preset name is not in the catalog."""


class InvalidSiteError(DehnThurstonException):
    """Exception raised when a move site is not valid for the current decomposition."""


class CoordinateError(DehnThurstonException):
    """Exception raised for malformed coordinate vectors."""


class ScopeMismatchError(CoordinateError):
    """Exception raised when coordinates do not match the expected scope.

    Coordinates either index every curve (``MF``) or only the interior curves
    (``MF0``), and operations refuse to mix the two.
    """


class StaleCoordinatesError(CoordinateError):
    """Exception raised for coordinates taken relative to an older decomposition.

    Every elementary move bumps the generation of the curve it replaces, the
    coordinate vector remembers the generations it was computed for.
    """


class IntegralityError(CoordinateError):
    """Exception raised when an integral multicurve has a non-integer entry."""


class ParityError(CoordinateError):
    """Exception raised when the intersection numbers around a pants sum to an odd
    number."""


class WeightPatternError(CoordinateError):
    """Exception raised for arc weights that cannot be realized disjointly in a
    pants."""


class WordError(DehnThurstonException):
    """Exception raised for illegal mapping words."""


class WordParseError(WordError):
    """Exception raised when the word notation cannot be parsed.

    The 1-based column of the offending token is available as `column`.
    """

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} at column {column}")
        self.column = column


class RecipeError(DehnThurstonException):
    """Exception raised when a twist recipe breaks the sign or occurrence rules."""


class ScanLimitError(DehnThurstonException):
    """Exception raised when a spectrum scan exceeds the word length cap of a
    preset."""


class TranscriptionError(DehnThurstonException):
    """Exception raised when a move produces inconsistent arc weights.

    This indicates an error in the move formulas and is never corrected silently.
    """
