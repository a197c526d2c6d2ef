"""Pseudo-Anosov words from filling pairs, dilatation estimates and scans.

Given multicurves ``C`` and ``D`` that fill the surface, every word made of
right twists along the curves of ``C`` and left twists along the curves of
``D``, each curve occurring at least once, is pseudo-Anosov. Curves that are
not pants curves of the base decomposition are given as expressions
``"<moves> > <id>"``: the pants curve ``<id>`` of the decomposition reached
after ``<moves>``. A twist along such a curve expands to the moves, the twist
and the moves undone.
"""
import itertools
import logging
import math
import multiprocessing
import re
from collections import deque
from enum import Enum
from fractions import Fraction
from typing import Deque, List, Optional, Sequence, Tuple, Union

import attr
from tqdm import tqdm

from .const import DEFAULT_MAX_ITER, DEFAULT_TOL, RATIO_WINDOW, SETTLE_FACTOR
from .coords import DTCoords, IntegralMulticurve, normalize, projectivize
from .dsl import parse_generators
from .exceptions import (
    CoordinateError,
    InvalidSiteError,
    RecipeError,
    ScanLimitError,
    WordError,
    WordParseError,
)
from .moves import Generator, MappingWord, Twist, apply_word, invert_word
from .presets import PresetHelper
from .schema import DilatationModel, ScanRecord
from .surface import PantsDecomposition, Scope
from .utils import RationalLike, format_rational, parse_rational

_LOGGER = logging.getLogger(__name__)

_ORDER_TOKEN = re.compile(r"(?P<family>[CD])(?P<index>\d+)(?P<sign>[+-])")


class HypothesisStatus(Enum):
    VerifiedPreset = "verified-preset"
    Unverified = "unverified"


@attr.s(auto_attribs=True, frozen=True)
class CurveExpression:
    """A curve given as a pants curve after some moves."""

    text: str
    moves: Tuple[Generator, ...]
    curve: int
    undo: Tuple[Generator, ...] = ()

    def twist(self, sign: int) -> List[Generator]:
        return list(self.moves) + [Twist(self.curve, sign)] + list(self.undo)


def parse_curve_expression(text: str, pd: PantsDecomposition) -> CurveExpression:
    """Parse ``"<id>"`` or ``"<moves> > <id>"`` against *pd*."""
    moves_text, _, curve_text = text.rpartition(">")
    curve_text = curve_text.strip()
    if not curve_text.isdigit():
        raise RecipeError("Curve expression %r must end with a curve id" % text)
    try:
        moves = tuple(g for _, g in parse_generators(moves_text))
        conjugator = MappingWord(moves, pd)
        state = conjugator.final
    except (WordError, InvalidSiteError) as ex:
        raise RecipeError("Invalid moves in curve expression %r: %s" % (text, ex))

    curve = int(curve_text)
    if not 0 <= curve < len(state.curves) or not state.curve(curve).is_interior:
        raise RecipeError("%r does not name an interior curve" % text)
    undo = invert_word(conjugator).generators
    return CurveExpression(text.strip(), moves, curve, undo)


@attr.s(auto_attribs=True, frozen=True)
class TwistAssignment:
    family: str
    index: int
    sign: int

    @property
    def token(self) -> str:
        return "%s%s%s" % (self.family, self.index, "+" if self.sign > 0 else "-")


@attr.s(auto_attribs=True, frozen=True)
class RecipeSpec:
    C: Tuple[CurveExpression, ...]
    D: Tuple[CurveExpression, ...]
    order: Tuple[TwistAssignment, ...]
    hypothesis_status: HypothesisStatus

    @property
    def order_text(self) -> str:
        return " ".join(a.token for a in self.order)

    def __json__(self):
        return {
            "C": [c.text for c in self.C],
            "D": [d.text for d in self.D],
            "order": self.order_text,
            "hypothesis_status": self.hypothesis_status.value,
        }


def parse_order(text: str) -> Tuple[TwistAssignment, ...]:
    assignments = []
    for match in re.finditer(r"\S+", text):
        token = _ORDER_TOKEN.fullmatch(match.group())
        if token is None:
            raise WordParseError(
                "unknown twist assignment %r" % match.group(), match.start() + 1
            )
        assignments.append(
            TwistAssignment(
                token.group("family"),
                int(token.group("index")),
                1 if token.group("sign") == "+" else -1,
            )
        )
    return tuple(assignments)


def build_recipe(
    pd: PantsDecomposition,
    C: Sequence[str],
    D: Sequence[str],
    order: str,
    certified: bool = False,
    warn: bool = True,
) -> Tuple[MappingWord, RecipeSpec]:
    """Expand a twist order over the filling pair ``(C, D)`` into a word.

    Raises :class:`RecipeError` when a member of ``C`` or ``D`` never gets
    twisted or gets twisted with the wrong sign.
    """
    families = {
        "C": tuple(parse_curve_expression(text, pd) for text in C),
        "D": tuple(parse_curve_expression(text, pd) for text in D),
    }
    if not families["C"] or not families["D"]:
        raise RecipeError("Both C and D need at least one curve")

    assignments = parse_order(order)
    expected = {"C": 1, "D": -1}
    generators: List[Generator] = []
    for assignment in assignments:
        members = families[assignment.family]
        if assignment.index >= len(members):
            raise RecipeError(
                "%s has no member %s" % (assignment.family, assignment.index)
            )
        if assignment.sign != expected[assignment.family]:
            raise RecipeError(
                "Curves of %s must be twisted %s, got %s"
                % (
                    assignment.family,
                    "right" if expected[assignment.family] > 0 else "left",
                    assignment.token,
                )
            )
        generators.extend(members[assignment.index].twist(assignment.sign))

    used = {(a.family, a.index) for a in assignments}
    for family, members in families.items():
        for index, member in enumerate(members):
            if (family, index) not in used:
                raise RecipeError(
                    "Curve %s%s (%s) is never twisted" % (family, index, member.text)
                )

    try:
        word = MappingWord(tuple(generators), pd)
    except InvalidSiteError as ex:
        raise RecipeError("Recipe expands to an illegal word: %s" % ex)

    if certified:
        status = HypothesisStatus.VerifiedPreset
    else:
        status = HypothesisStatus.Unverified
        if warn:
            _LOGGER.warning(
                "The filling of C=%s, D=%s is not verified, the word may not be "
                "pseudo-Anosov",
                list(C),
                list(D),
            )

    spec = RecipeSpec(families["C"], families["D"], assignments, status)
    return word, spec


def build_preset_recipe(
    name: str, order: Optional[str] = None
) -> Tuple[MappingWord, RecipeSpec]:
    """Build the recipe word of a catalog entry, with its own or a custom order."""
    info = PresetHelper().get(name)
    recipe = info.recipe
    return build_recipe(
        info.decomposition,
        recipe.C,
        recipe.D,
        recipe.order if order is None else order,
        certified=recipe.certified,
    )


@attr.s(auto_attribs=True, frozen=True)
class DilatationEstimate:
    word: str
    dilatation: float
    log_dilatation: float
    iterations: int
    converged: bool
    residual: float
    #: last normalized vector, an approximation of the unstable foliation
    foliation: DTCoords = attr.ib(repr=False, eq=False)

    def __json__(self):
        return DilatationModel(
            word=self.word,
            dilatation=self.dilatation,
            log_dilatation=self.log_dilatation,
            iterations=self.iterations,
            converged=self.converged,
            residual=self.residual,
        ).dict()

    @property
    def __cli_output__(self) -> str:
        state = "converged" if self.converged else "not converged"
        return "dilatation %.12g (log %.12g), %s after %s iterations, residual %.3g" % (
            self.dilatation,
            self.log_dilatation,
            state,
            self.iterations,
            self.residual,
        )


def default_seed(pd: PantsDecomposition) -> IntegralMulticurve:
    """``(m, t) = (2, 1)`` on every interior curve."""
    count = len(pd.interior_curves)
    return IntegralMulticurve(normalize([(2, 1)] * count, Scope.MF0, pd.generations))


def _distance(first: DTCoords, second: DTCoords) -> Fraction:
    return max(
        (abs(a - b) for a, b in zip(first.values, second.values)), default=Fraction(0)
    )


def estimate_dilatation(
    word: MappingWord,
    seed: Optional[Union[IntegralMulticurve, DTCoords]] = None,
    max_iter: int = DEFAULT_MAX_ITER,
    tol: RationalLike = DEFAULT_TOL,
) -> DilatationEstimate:
    """Iterate the word on max-norm normalized coordinates.

    Once successive vectors agree to within ``tol * SETTLE_FACTOR`` the growth
    ratios of the next `RATIO_WINDOW` iterations are averaged. Non-convergence
    is reported in the result and not raised.
    """
    if not word.is_closed:
        raise WordError(
            "%s does not return to its base decomposition" % (word.tokens or "word")
        )
    if max_iter < 1:
        raise ValueError("max_iter must be positive")
    tolerance = parse_rational(tol)
    base = word.base
    if seed is None:
        seed = default_seed(base)
    coords = seed.coords if isinstance(seed, IntegralMulticurve) else seed
    coords.check(base)
    if coords.is_zero:
        raise CoordinateError("Cannot estimate a dilatation from the empty foliation")

    current = projectivize(coords)
    recent: Deque[Fraction] = deque(maxlen=RATIO_WINDOW)
    settled: Deque[Fraction] = deque(maxlen=RATIO_WINDOW)
    settle_below = tolerance * SETTLE_FACTOR
    residual: Optional[Fraction] = None
    iterations = 0
    for iterations in range(1, max_iter + 1):
        image, _ = apply_word(word, current)
        image = image.rebased(base)
        ratio = image.max_norm
        recent.append(ratio)
        if residual is not None and residual <= settle_below:
            settled.append(ratio)
        image = projectivize(image)
        residual = _distance(image, current)
        current = image
        if residual == 0 or len(settled) == RATIO_WINDOW:
            break

    converged = residual <= tolerance
    # ratios measured on vectors that already sit on the attracting direction
    window = settled or recent
    dilatation = max(1.0, float(sum(window) / len(window)))
    if not converged:
        _LOGGER.debug(
            "%s did not converge in %s iterations, residual %s",
            word.tokens,
            max_iter,
            float(residual),
        )
    return DilatationEstimate(
        word=word.tokens,
        dilatation=dilatation,
        log_dilatation=math.log(dilatation),
        iterations=iterations,
        converged=converged,
        residual=float(residual),
        foliation=current,
    )


@attr.s(auto_attribs=True, frozen=True)
class ScanEntry:
    word: str
    recipe: str
    log_lambda: float
    converged: bool
    iterations: int

    def __json__(self):
        return ScanRecord(
            word=self.word,
            recipe=self.recipe,
            log_lambda=self.log_lambda,
            converged=self.converged,
            iterations=self.iterations,
        ).dict()

    @property
    def __cli_output__(self) -> str:
        return "%.12f  %s" % (self.log_lambda, self.word)


def recipe_orders(letters_c: int, letters_d: int, max_length: int) -> List[str]:
    """Twist orders up to *max_length* twisting every member at least once."""
    letters = ["C%s+" % i for i in range(letters_c)] + [
        "D%s-" % i for i in range(letters_d)
    ]
    orders = []
    for length in range(1, max_length + 1):
        for combination in itertools.product(letters, repeat=length):
            if len(set(combination)) == len(letters):
                orders.append(" ".join(combination))
    return orders


def _scan_worker(args: Tuple[str, str, str, int]) -> ScanEntry:
    preset_name, order, tol, max_iter = args
    info = PresetHelper().get(preset_name)
    word, _ = build_recipe(
        info.decomposition,
        info.recipe.C,
        info.recipe.D,
        order,
        certified=info.recipe.certified,
        warn=False,
    )
    estimate = estimate_dilatation(word, max_iter=max_iter, tol=tol)
    return ScanEntry(
        word=estimate.word,
        recipe=order,
        log_lambda=estimate.log_dilatation,
        converged=estimate.converged,
        iterations=estimate.iterations,
    )


def spectrum_scan(
    preset_name: str,
    max_length: int,
    tol: RationalLike = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    workers: int = 1,
    progress: bool = False,
) -> List[ScanEntry]:
    """Estimate the dilatations of every recipe word up to *max_length*.

    Converged estimates closer than *tol* are merged into the first of them in
    ``(log_lambda, word)`` order. Words that do not converge are kept with
    ``converged`` false and never merged.
    The result is sorted by ``(log_lambda, word)`` and does not depend on
    *workers*.
    """
    info = PresetHelper().get(preset_name)
    if max_length < 0 or max_length > info.scan_cap:
        raise ScanLimitError(
            "Word length %s is outside 0..%s for %s"
            % (max_length, info.scan_cap, preset_name)
        )
    if max_length == 0:
        return []
    if not info.recipe.certified:
        _LOGGER.warning(
            "The recipe pair of %s is not verified, scanned words may not be "
            "pseudo-Anosov",
            preset_name,
        )

    tolerance = parse_rational(tol)
    orders = recipe_orders(len(info.recipe.C), len(info.recipe.D), max_length)
    tol_text = format_rational(tolerance)
    jobs = [(preset_name, order, tol_text, max_iter) for order in orders]
    _LOGGER.debug(
        "Scanning %s words on %s with %s workers", len(jobs), preset_name, workers
    )

    with tqdm(total=len(jobs), disable=not progress) as pbar:
        if workers > 1:
            with multiprocessing.Pool(processes=workers) as pool:
                results = []
                for entry in pool.imap(_scan_worker, jobs):
                    results.append(entry)
                    pbar.update(1)
        else:
            results = []
            for job in jobs:
                results.append(_scan_worker(job))
                pbar.update(1)

    unconverged = [r for r in results if not r.converged]
    if unconverged:
        _LOGGER.info("%s of %s words did not converge", len(unconverged), len(results))

    tol_float = float(tolerance)
    merged: List[ScanEntry] = []
    last: Optional[ScanEntry] = None
    for entry in sorted(results, key=lambda r: (r.log_lambda, r.word)):
        if not entry.converged:
            merged.append(entry)
            continue
        if last is not None and entry.log_lambda - last.log_lambda <= tol_float:
            continue
        merged.append(entry)
        last = entry
    return merged
