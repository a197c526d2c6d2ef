"""Default values of the runtime knobs."""
from fractions import Fraction

DEFAULT_TOL = Fraction(1, 10**9)
DEFAULT_MAX_ITER = 1000
DEFAULT_BOUND = 10
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 1000

#: number of trailing growth ratios averaged into a dilatation estimate
RATIO_WINDOW = 5

#: ratios enter the estimate once successive vectors agree to tol times this
SETTLE_FACTOR = Fraction(1, 1000)

#: input offset used by the continuity checks around formula corners
CORNER_OFFSET = Fraction(1, 1000)

ENVVAR_PREFIX = "DEHNTHURSTON"
