"""Relation suites checking the coordinate action on sampled multicurves.

Each suite draws deterministic samples, evaluates a relation of the mapping
class group (or a structural property of the action) and reports the first
counterexample it meets.
"""
import logging
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import attr
import numpy as np

from .const import (
    CORNER_OFFSET,
    DEFAULT_BOUND,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
)
from .coords import DTCoords, arc_weights, normalize_entry, sample
from .exceptions import TranscriptionError
from .moves import (
    FirstMoveFrame,
    Generator,
    MappingWord,
    Move,
    SecondMoveFrame,
    Twist,
    apply_generator,
    apply_word,
    conjugate,
    double_move_image,
    first_move_formulas,
    generators_of,
    invert_word,
    second_move_formulas,
    twist,
)
from .multicurve import count_components
from .schema import SuiteReportModel
from .surface import MoveKind, PantsDecomposition, Scope, enumerate_move_sites

_LOGGER = logging.getLogger(__name__)

HOMOGENEITY_FACTORS = (Fraction(1, 3), Fraction(2), Fraction(7))


@attr.s(auto_attribs=True)
class SuiteReport:
    suite: str
    passed: bool
    checked: int
    skipped: bool = False
    counterexample: Optional[dict] = None

    def __json__(self):
        return SuiteReportModel(**attr.asdict(self)).dict()

    @property
    def __cli_output__(self) -> str:
        if self.skipped:
            return "%s: skipped" % self.suite
        state = "pass" if self.passed else "FAIL"
        text = "%s: %s (%s checks)" % (self.suite, state, self.checked)
        if self.counterexample is not None:
            text += "\n  counterexample: %s" % self.counterexample
        return text


def _samples(
    pd: PantsDecomposition, count: int, seed: int, bound: int, scopes=(Scope.MF,)
) -> Iterator[DTCoords]:
    rng = np.random.default_rng(seed)
    for index, draw in enumerate(rng.integers(0, 2**31, size=count)):
        scope = scopes[index % len(scopes)]
        yield sample(pd, bound, int(draw), scope).coords


def _word(pd: PantsDecomposition, generators: Sequence[Generator]) -> MappingWord:
    return MappingWord(tuple(generators), pd)


def _failure(suite: str, checked: int, **details) -> SuiteReport:
    counterexample = {}
    for key, value in details.items():
        if isinstance(value, DTCoords):
            value = value.__json__()
        counterexample[key] = value
    _LOGGER.warning("Suite %s failed: %s", suite, counterexample)
    return SuiteReport(suite, False, checked, counterexample=counterexample)


def check_twist_law(pd, samples, seed, bound) -> SuiteReport:
    checked = 0
    for coords in _samples(pd, samples, seed, bound):
        for curve in pd.interior_curves:
            for sign in (1, -1):
                result = twist(coords, pd, curve.id, sign)
                m, t = coords.entry(curve.id)
                expected = coords.replace({curve.id: (m, t + sign * m)})
                checked += 1
                if result.entries != expected.entries:
                    return _failure(
                        "twist-law",
                        checked,
                        generator=Twist(curve.id, sign).token,
                        input=coords,
                        expected=expected,
                        actual=result,
                    )
    return SuiteReport("twist-law", True, checked)


def check_involution(pd, samples, seed, bound) -> SuiteReport:
    """A move applied twice gives its documented double image, and a move
    followed by its inverse word is the identity."""
    sites = enumerate_move_sites(pd)
    if not sites:
        return SuiteReport("involution", True, 0, skipped=True)
    checked = 0
    for coords in _samples(pd, samples, seed, bound, (Scope.MF, Scope.MF0)):
        for site in sites:
            move = Move(site.kind, site.curve, site.labeling)
            expected = double_move_image(coords, pd, site)
            forward = _word(pd, [move])
            undone = MappingWord(
                forward.generators + invert_word(forward).generators, pd
            )
            try:
                result, _ = apply_word(_word(pd, [move, move]), coords)
                restored, _ = apply_word(undone, coords)
            except TranscriptionError as ex:
                return _failure(
                    "involution",
                    checked,
                    generator=move.token,
                    input=coords,
                    error=str(ex),
                )
            checked += 1
            if result.entries != expected.entries:
                return _failure(
                    "involution",
                    checked,
                    generator=move.token,
                    input=coords,
                    expected=expected,
                    actual=result,
                )
            checked += 1
            if restored.entries != coords.entries:
                return _failure(
                    "involution",
                    checked,
                    generator=move.token,
                    inverse=undone.tokens,
                    input=coords,
                    actual=restored,
                )
    return SuiteReport("involution", True, checked)


def _first_sites(pd: PantsDecomposition, peripheral_only: bool = False):
    sites = [s for s in enumerate_move_sites(pd) if s.kind is MoveKind.First]
    if peripheral_only:
        sites = [
            s
            for s in sites
            if pd.curve_at(s.slots[0]) is None
            or pd.curve(pd.curve_at(s.slots[0])).is_boundary
        ]
    return sites


def _handle_twists(pd: PantsDecomposition, curve: int):
    """Twists along the two curves of the handle cut by *curve*, the second one
    written as a first move conjugating the twist along *curve*."""
    a = [Twist(curve, 1)]
    flip = _word(pd, [Move(MoveKind.First, curve)])
    b = list(conjugate(flip, a).generators)
    return a, b


def check_braid(pd, samples, seed, bound) -> SuiteReport:
    sites = _first_sites(pd, peripheral_only=True)
    if not sites:
        return SuiteReport("braid", True, 0, skipped=True)
    checked = 0
    for coords in _samples(pd, samples, seed, bound, (Scope.MF0,)):
        for site in sites:
            a, b = _handle_twists(pd, site.curve)
            left, _ = apply_word(_word(pd, a + b + a), coords)
            right, _ = apply_word(_word(pd, b + a + b), coords)
            checked += 1
            if left.entries != right.entries:
                return _failure(
                    "braid",
                    checked,
                    curve=site.curve,
                    input=coords,
                    aba=left,
                    bab=right,
                )
    return SuiteReport("braid", True, checked)


def check_order_six(pd, samples, seed, bound) -> SuiteReport:
    """``(T_a T_b)^6`` is the twist along the boundary of the handle, so it acts
    trivially on the interior coordinates when that boundary is peripheral."""
    sites = _first_sites(pd, peripheral_only=True)
    if not sites:
        return SuiteReport("order-six", True, 0, skipped=True)
    checked = 0
    for coords in _samples(pd, samples, seed, bound, (Scope.MF0,)):
        for site in sites:
            a, b = _handle_twists(pd, site.curve)
            result, _ = apply_word(_word(pd, (a + b) * 6), coords)
            checked += 1
            if result.entries != coords.entries:
                return _failure(
                    "order-six", checked, curve=site.curve, input=coords, actual=result
                )
    return SuiteReport("order-six", True, checked)


def check_count_invariance(pd, samples, seed, bound) -> SuiteReport:
    generators = generators_of(pd)
    checked = 0
    for coords in _samples(pd, samples, seed, bound):
        before = count_components(pd, coords)
        for generator in generators:
            image, after_pd = apply_generator(generator, coords, pd)
            after = count_components(after_pd, image)
            checked += 1
            if before != after:
                return _failure(
                    "count-invariance",
                    checked,
                    generator=generator.token,
                    input=coords,
                    before=before,
                    after=after,
                )
    return SuiteReport("count-invariance", True, checked)


def check_homogeneity(pd, samples, seed, bound) -> SuiteReport:
    generators = generators_of(pd)
    checked = 0
    for coords in _samples(pd, samples, seed, bound, (Scope.MF, Scope.MF0)):
        for generator in generators:
            image, _ = apply_generator(generator, coords, pd)
            for factor in HOMOGENEITY_FACTORS:
                scaled, _ = apply_generator(generator, coords.scaled(factor), pd)
                checked += 1
                if scaled.entries != image.scaled(factor).entries:
                    return _failure(
                        "homogeneity",
                        checked,
                        generator=generator.token,
                        factor=str(factor),
                        input=coords,
                        actual=scaled,
                    )
    return SuiteReport("homogeneity", True, checked)


def quotient_distance(first: DTCoords, second: DTCoords) -> Fraction:
    """Max over curves of the distance in the half-plane with ``(0, t)`` and
    ``(0, -t)`` identified."""
    result = Fraction(0)
    for (m, t), (m2, t2) in zip(first.entries, second.entries):
        direct = max(abs(m - m2), abs(t - t2))
        folded = max(m + m2, abs(t + t2))
        result = max(result, min(direct, folded))
    return result


@attr.s(auto_attribs=True, frozen=True, eq=False)
class Slope:
    """Value of a piecewise-linear expression with a bound on the sum of the
    absolute coefficients of its linear pieces.

    Running the formula blocks on slopes of the input coordinates gives the
    Lipschitz constant of each output for the max-norm.
    """

    value: Fraction
    bound: Fraction

    @classmethod
    def of(cls, other) -> "Slope":
        if isinstance(other, Slope):
            return other
        return cls(Fraction(other), Fraction(0))

    @staticmethod
    def join(*values) -> "Slope":
        slopes = [Slope.of(v) for v in values]
        return Slope(max(s.value for s in slopes), max(s.bound for s in slopes))

    @staticmethod
    def meet(*values) -> "Slope":
        slopes = [Slope.of(v) for v in values]
        return Slope(min(s.value for s in slopes), max(s.bound for s in slopes))

    def __add__(self, other) -> "Slope":
        other = Slope.of(other)
        return Slope(self.value + other.value, self.bound + other.bound)

    __radd__ = __add__

    def __neg__(self) -> "Slope":
        return Slope(-self.value, self.bound)

    def __sub__(self, other) -> "Slope":
        return self + -Slope.of(other)

    def __rsub__(self, other) -> "Slope":
        return Slope.of(other) + -self

    def __mul__(self, factor) -> "Slope":
        if isinstance(factor, Slope):
            raise TypeError("A product of two variables is not piecewise linear")
        factor = Fraction(factor)
        return Slope(self.value * factor, self.bound * abs(factor))

    __rmul__ = __mul__

    def __truediv__(self, divisor) -> "Slope":
        return self * (1 / Fraction(divisor))

    def __abs__(self) -> "Slope":
        return Slope(abs(self.value), self.bound)

    def __eq__(self, other):
        return self.value == Slope.of(other).value

    def __ne__(self, other):
        return self.value != Slope.of(other).value

    def __lt__(self, other):
        return self.value < Slope.of(other).value

    def __le__(self, other):
        return self.value <= Slope.of(other).value

    def __gt__(self, other):
        return self.value > Slope.of(other).value

    def __ge__(self, other):
        return self.value >= Slope.of(other).value


def _variable() -> Slope:
    return Slope(Fraction(0), Fraction(1))


_FIXED = Slope(Fraction(0), Fraction(0))


def _first_move_bound(move: Move) -> Fraction:
    m_x, t_x, m_c, t_c = (_variable() for _ in range(4))
    weights = arc_weights(m_x, m_c, m_c)
    result = first_move_formulas(
        FirstMoveFrame(r=weights.l12, l11=weights.l11, l23=weights.l23, t1=t_c, t2=t_x)
    )
    t2n = result.t2 - m_x / 2 if move.inverted else result.t2
    return max(output.bound for output in (result.m1, result.t1, t2n))


def _second_move_bound(move: Move, pd: Optional[PantsDecomposition]) -> Fraction:
    # roles in slot order of the site: a, b (bottom pants), c, d (top pants)
    if pd is None:
        roles: List[Optional[object]] = [object() for _ in range(4)]
    else:
        site = pd.site(move.kind, move.curve, move.labeling)
        _, a_ref, b_ref, _, c_ref, d_ref = site.slots
        roles = [pd.curve_at(ref) for ref in (a_ref, b_ref, c_ref, d_ref)]

    inputs: Dict[object, tuple] = {}
    for role in roles:
        if role is not None and role not in inputs:
            inputs[role] = (_variable(), _variable())
    (m_a, t_a), (m_b, t_b), (m_c, t_c), (m_d, t_d) = (
        inputs.get(role, (_FIXED, _FIXED)) for role in roles
    )
    m1, t1 = _variable(), _variable()
    result = second_move_formulas(
        SecondMoveFrame(
            lam=arc_weights(m1, m_a, m_b),
            kap=arc_weights(m1, m_c, m_d),
            t1=t1,
            t2=t_b,
            t3=t_a,
            t4=t_c,
            t5=t_d,
        )
    )
    lam = result.lam
    outputs = [2 * lam.l11 + lam.l12 + lam.l13, result.t1]

    deltas = zip(
        roles,
        (result.t3 - t_a, result.t2 - t_b, result.t4 - t_c, result.t5 - t_d),
    )
    merged: Dict[object, Slope] = {}
    for role, delta in deltas:
        if role is not None:
            merged[role] = merged.get(role, _FIXED) + delta
    outputs.extend(inputs[role][1] + delta for role, delta in merged.items())
    return max(output.bound for output in outputs)


def lipschitz_bound(
    generator: Generator, pd: Optional[PantsDecomposition] = None
) -> Fraction:
    """Lipschitz constant of *generator* for the max-norm on coordinates.

    It is the largest sum of absolute coefficients over the outputs, read off
    the formula blocks. With *pd* the second move sums the changes of curves
    that fill several roles of the site, without it all roles are distinct.
    """
    if isinstance(generator, Twist):
        m, t = _variable(), _variable()
        return (t + generator.sign * m).bound
    if generator.kind is MoveKind.First:
        return _first_move_bound(generator)
    return _second_move_bound(generator, pd)


def _straddle(coords: DTCoords, rng) -> Tuple[DTCoords, DTCoords]:
    """Two points on opposite sides of *coords* along a random direction."""
    steps = rng.integers(-1, 2, size=2 * len(coords))
    below, above = [], []
    for index, (m, t) in enumerate(coords.entries):
        dm = CORNER_OFFSET * int(steps[2 * index])
        dt = CORNER_OFFSET * int(steps[2 * index + 1])
        below.append(normalize_entry(abs(m - dm), t - dt))
        above.append(normalize_entry(abs(m + dm), t + dt))
    return (
        attr.evolve(coords, entries=tuple(below)),
        attr.evolve(coords, entries=tuple(above)),
    )


def check_continuity(pd, samples, seed, bound) -> SuiteReport:
    """Integral samples sit on the corners of the formulas. Points at distance
    1/1000 on both sides of them must have images within the Lipschitz bound
    of each other and of the image of the corner."""
    generators = generators_of(pd)
    bounds = {generator: lipschitz_bound(generator, pd) for generator in generators}
    rng = np.random.default_rng(seed + 1)
    checked = 0
    for coords in _samples(pd, samples, seed, bound, (Scope.MF, Scope.MF0)):
        below, above = _straddle(coords, rng)
        pairs = ((below, above), (below, coords), (coords, above))
        for generator in generators:
            for first, second in pairs:
                offset = quotient_distance(first, second)
                image, _ = apply_generator(generator, first, pd)
                moved, _ = apply_generator(generator, second, pd)
                drift = quotient_distance(image, moved)
                checked += 1
                if drift > bounds[generator] * offset:
                    return _failure(
                        "continuity",
                        checked,
                        generator=generator.token,
                        input=first,
                        nearby=second,
                        drift=str(drift),
                        offset=str(offset),
                        bound=str(bounds[generator]),
                    )
    return SuiteReport("continuity", True, checked)


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "twist-law": check_twist_law,
    "involution": check_involution,
    "braid": check_braid,
    "order-six": check_order_six,
    "count-invariance": check_count_invariance,
    "homogeneity": check_homogeneity,
    "continuity": check_continuity,
}


def run_suites(
    pd: PantsDecomposition,
    suites: Optional[Sequence[str]] = None,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    bound: int = DEFAULT_BOUND,
) -> List[SuiteReport]:
    """Run the named suites (all of them by default) in the given order."""
    names = list(SUITES) if not suites else list(suites)
    unknown = [name for name in names if name not in SUITES]
    if unknown:
        raise ValueError("Unknown suites: %s" % ", ".join(unknown))

    reports = []
    for name in names:
        _LOGGER.debug("Running %s on %s with %s samples", name, pd.spec.name, samples)
        reports.append(SUITES[name](pd, samples, seed, bound))
    return reports
