"""Generators of the mapping class action and words over them.

Twists act linearly on the twisted curve, the two elementary moves act by the
piecewise-integral-linear formula blocks in :func:`first_move_formulas` and
:func:`second_move_formulas`, transcribed with the variable names of the
standard statement (``l`` for the bottom pants weights, ``k`` for the top
pants weights, primes written as a trailing ``n``).
"""
import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import attr

from .coords import ZERO, DTCoords, PantsWeights, m_to_lambda
from .exceptions import InvalidSiteError, TranscriptionError, WordError
from .surface import MoveKind, MoveSite, PantsDecomposition, validate_site
from .utils import join, meet, sgn

_LOGGER = logging.getLogger(__name__)


@attr.s(auto_attribs=True, frozen=True)
class Twist:
    """Dehn twist along an interior pants curve, sign +1 twists to the right."""

    curve: int
    sign: int = 1

    def __attrs_post_init__(self):
        if self.sign not in (1, -1):
            raise WordError("Twist sign must be +1 or -1, got %s" % self.sign)

    @property
    def token(self) -> str:
        return "T%s%s" % ("+" if self.sign > 0 else "-", self.curve)

    def inverse(self) -> "Twist":
        return Twist(self.curve, -self.sign)

    def __json__(self):
        return {"op": "twist", "curve": self.curve, "sign": self.sign}


@attr.s(auto_attribs=True, frozen=True)
class Move:
    """Elementary move on a pants curve.

    The second move undoes itself. Performing the first move twice leaves a
    half twist along the remaining curve of the one-holed torus, `inverted`
    marks the first move followed by the opposite half twist, written
    ``M1'@<id>``.
    """

    kind: MoveKind
    curve: int
    labeling: int = 0
    inverted: bool = False

    def __attrs_post_init__(self):
        if self.inverted and self.kind is not MoveKind.First:
            raise WordError("Only the first move has a separate inverse")

    @property
    def token(self) -> str:
        if self.kind is MoveKind.First:
            return "M1%s@%s" % ("'" if self.inverted else "", self.curve)
        return "M2@%s:%s" % (self.curve, self.labeling)

    def inverse(self) -> "Move":
        if self.kind is MoveKind.First:
            return attr.evolve(self, inverted=not self.inverted)
        return self

    def __json__(self):
        result = {
            "op": "move",
            "kind": self.kind.value,
            "curve": self.curve,
            "labeling": self.labeling,
        }
        if self.inverted:
            result["inverse"] = True
        return result


Generator = Union[Twist, Move]


@attr.s(auto_attribs=True, frozen=True)
class FirstMoveFrame:
    """Inputs of the first elementary move.

    ``r`` is the common weight of the two bands joining the remaining slot to
    the sides of the moved curve, ``t1`` the twist of the moved curve and
    ``t2`` the twist of the remaining curve.
    """

    r: Fraction
    l11: Fraction
    l23: Fraction
    t1: Fraction
    t2: Fraction


@attr.s(auto_attribs=True, frozen=True)
class FirstMoveResult:
    l11: Fraction
    l12: Fraction
    l23: Fraction
    t1: Fraction
    t2: Fraction

    @property
    def m1(self) -> Fraction:
        return self.l12 + self.l23


@attr.s(auto_attribs=True, frozen=True)
class SecondMoveFrame:
    """Inputs of the second elementary move, `lam` and `kap` are the bottom and
    top pants weights."""

    lam: PantsWeights
    kap: PantsWeights
    t1: Fraction
    t2: Fraction
    t3: Fraction
    t4: Fraction
    t5: Fraction

    @property
    def L(self) -> Fraction:
        return self.lam.l11 + self.t1

    @property
    def K(self) -> Fraction:
        return self.kap.l11 + self.t1


@attr.s(auto_attribs=True, frozen=True)
class SecondMoveResult:
    lam: PantsWeights
    kap: PantsWeights
    t1: Fraction
    t2: Fraction
    t3: Fraction
    t4: Fraction
    t5: Fraction


MoveFrame = Union[FirstMoveFrame, SecondMoveFrame]


def first_move_formulas(f: FirstMoveFrame) -> FirstMoveResult:
    l11n = join(f.r - abs(f.t1), ZERO)
    L = f.r - l11n
    l12n = L + f.l11
    l23n = abs(f.t1) - L
    t2n = f.t2 + f.l11 + join(meet(L, f.t1), ZERO)
    t1n = -sgn(f.t1, zero=-1) * (f.l23 + L)
    return FirstMoveResult(l11n, l12n, l23n, t1n, t2n)


def second_move_formulas(f: SecondMoveFrame) -> SecondMoveResult:
    l, k = f.lam, f.kap
    L, K = f.L, f.K

    k11n = k.l22 + l.l33 + join(L - k.l13, ZERO) + join(-L - l.l12, ZERO)
    k22n = join(meet(L, l.l11, k.l13 - l.l12 - L), ZERO)
    k33n = join(meet(-L, k.l11, l.l12 - k.l13 + L), ZERO)
    k23n = join(meet(k.l13, l.l12, k.l13 - L, l.l12 + L), ZERO)
    k12n = -2 * k22n - k23n + k.l13 + k.l23 + 2 * k.l33
    k13n = -2 * k33n - k23n + l.l12 + l.l23 + 2 * l.l22

    l11n = l.l22 + k.l33 + join(K - l.l13, ZERO) + join(-K - k.l12, ZERO)
    l22n = join(meet(K, k.l11, l.l13 - k.l12 - K), ZERO)
    l33n = join(meet(-K, l.l11, k.l12 - l.l13 + K), ZERO)
    l23n = join(meet(l.l13, k.l12, l.l13 - K, k.l12 + K), ZERO)
    l12n = -2 * l22n - l23n + l.l13 + l.l23 + 2 * l.l33
    l13n = -2 * l33n - l23n + k.l12 + k.l23 + 2 * k.l22

    t2n = f.t2 + l.l33 + join(meet(l.l13 - l23n - 2 * l22n, K + l33n - l22n), ZERO)
    t3n = f.t3 - k33n + meet(join(L + k33n - k22n, k23n + 2 * k33n - l.l12), ZERO)
    t4n = f.t4 - l33n + meet(join(K + l33n - l22n, l23n + 2 * l33n - k.l12), ZERO)
    t5n = f.t5 + k.l33 + join(meet(k.l13 - k23n - 2 * k22n, L + k33n - k22n), ZERO)

    zero_sign = 1 if l.l12 - 2 * k33n - k23n != 0 else -1
    sign = sgn(L + K + l33n - l22n + k33n - k22n, zero=zero_sign)
    t1n = (
        k.l22
        + l.l22
        + k.l33
        + l.l33
        - (l11n + k11n + (t2n - f.t2) + (t5n - f.t5))
        + sign * (f.t1 + l33n + k33n)
    )

    return SecondMoveResult(
        lam=PantsWeights(l11n, l22n, l33n, l12n, l13n, l23n),
        kap=PantsWeights(k11n, k22n, k33n, k12n, k13n, k23n),
        t1=t1n,
        t2=t2n,
        t3=t3n,
        t4=t4n,
        t5=t5n,
    )


def twist(
    coords: DTCoords, pd: PantsDecomposition, curve: int, sign: int
) -> DTCoords:
    """Apply the Dehn twist along *curve*, ``t -> t + sign * m``."""
    coords.check(pd)
    if not pd.curve(curve).is_interior:
        raise WordError("Cannot twist along boundary curve %s" % curve)
    if sign not in (1, -1):
        raise WordError("Twist sign must be +1 or -1, got %s" % sign)
    m, t = coords.entry(curve)
    return coords.replace({curve: (m, t + sign * m)})


def _entry_or_zero(
    coords: DTCoords, curve: Optional[int]
) -> Tuple[Fraction, Fraction]:
    if curve is None:
        return ZERO, ZERO
    return coords.entry(curve)


def _apply_deltas(
    coords: DTCoords,
    updates: Dict[int, tuple],
    deltas: Iterable[Tuple[Optional[int], Fraction]],
):
    merged: Dict[int, Fraction] = {}
    for curve, delta in deltas:
        if curve is None:
            continue
        merged[curve] = merged.get(curve, ZERO) + delta
    for curve, delta in merged.items():
        if curve >= len(coords):
            # boundary curves outside the scope carry m = 0 and never move
            if delta != 0:
                raise TranscriptionError(
                    "Twist of unindexed curve %s changed by %s" % (curve, delta)
                )
            continue
        m, t = coords.entry(curve)
        updates[curve] = (m, t + delta)


def _check_weights(name: str, weights: Sequence[Fraction]):
    if any(w < 0 for w in weights):
        raise TranscriptionError("%s produced negative weights %s" % (name, weights))


def move_first(
    coords: DTCoords, pd: PantsDecomposition, site: MoveSite, inverse: bool = False
) -> Tuple[DTCoords, PantsDecomposition]:
    """Perform the first elementary move (one-holed torus flip) at *site*.

    With *inverse* the remaining curve also gets the negative half twist, which
    undoes a preceding first move at the same curve.
    """
    site = validate_site(pd, site)
    if site.kind is not MoveKind.First:
        raise InvalidSiteError("%s is not a First site" % site.token)
    coords.check(pd)

    third = pd.curve_at(site.slots[0])
    m_x, t_x = _entry_or_zero(coords, third)
    m_c, t_c = coords.entry(site.curve)
    weights = m_to_lambda(m_x, m_c, m_c)
    if weights.l12 != weights.l13:
        raise TranscriptionError("Bands of a First site differ: %s" % (weights,))

    frame = FirstMoveFrame(
        r=weights.l12, l11=weights.l11, l23=weights.l23, t1=t_c, t2=t_x
    )
    result = first_move_formulas(frame)
    _check_weights("First move", [result.l11, result.l12, result.l23])
    if 2 * result.l11 + 2 * result.l12 != m_x:
        raise TranscriptionError(
            "First move changed the remaining curve: %s -> %s"
            % (m_x, 2 * result.l11 + 2 * result.l12)
        )

    t2n = result.t2 - m_x / 2 if inverse else result.t2
    updates: Dict[int, tuple] = {site.curve: (result.m1, result.t1)}
    _apply_deltas(coords, updates, [(third, t2n - t_x)])

    after = pd.after_move(site)
    _LOGGER.debug("%s: %s -> %s", site.token, (m_c, t_c), (result.m1, result.t1))
    return coords.replace(updates, after.generations), after


def move_second(
    coords: DTCoords, pd: PantsDecomposition, site: MoveSite
) -> Tuple[DTCoords, PantsDecomposition]:
    """Perform the second elementary move (four-holed sphere flip) at *site*."""
    site = validate_site(pd, site)
    if site.kind is not MoveKind.Second:
        raise InvalidSiteError("%s is not a Second site" % site.token)
    coords.check(pd)

    _, a_ref, b_ref, _, c_ref, d_ref = site.slots
    a, b, c, d = (pd.curve_at(ref) for ref in (a_ref, b_ref, c_ref, d_ref))
    (m_a, t_a), (m_b, t_b), (m_c, t_c), (m_d, t_d) = (
        _entry_or_zero(coords, curve) for curve in (a, b, c, d)
    )
    m1, t1 = coords.entry(site.curve)

    frame = SecondMoveFrame(
        lam=m_to_lambda(m1, m_a, m_b),
        kap=m_to_lambda(m1, m_c, m_d),
        t1=t1,
        t2=t_b,
        t3=t_a,
        t4=t_c,
        t5=t_d,
    )
    result = second_move_formulas(frame)
    ln, kn = result.lam, result.kap
    _check_weights("Second move", list(ln.as_tuple()) + list(kn.as_tuple()))

    m_left = 2 * ln.l11 + ln.l12 + ln.l13
    m_right = 2 * kn.l11 + kn.l12 + kn.l13
    surrounding = (
        2 * ln.l22 + ln.l12 + ln.l23,
        2 * ln.l33 + ln.l13 + ln.l23,
        2 * kn.l22 + kn.l12 + kn.l23,
        2 * kn.l33 + kn.l13 + kn.l23,
    )
    if m_left != m_right or surrounding != (m_b, m_c, m_d, m_a):
        raise TranscriptionError(
            "Second move weights are inconsistent: left %s, right %s, sides %s"
            % (m_left, m_right, surrounding)
        )

    updates: Dict[int, tuple] = {site.curve: (m_left, result.t1)}
    _apply_deltas(
        coords,
        updates,
        [
            (b, result.t2 - t_b),
            (a, result.t3 - t_a),
            (c, result.t4 - t_c),
            (d, result.t5 - t_d),
        ],
    )

    after = pd.after_move(site)
    _LOGGER.debug("%s: %s -> %s", site.token, (m1, t1), (m_left, result.t1))
    return coords.replace(updates, after.generations), after


def apply_generator(
    generator: Generator, coords: DTCoords, pd: PantsDecomposition
) -> Tuple[DTCoords, PantsDecomposition]:
    if isinstance(generator, Twist):
        return twist(coords, pd, generator.curve, generator.sign), pd
    site = pd.site(generator.kind, generator.curve, generator.labeling)
    if generator.kind is MoveKind.First:
        return move_first(coords, pd, site, generator.inverted)
    return move_second(coords, pd, site)


def _walk(
    base: PantsDecomposition, generators: Sequence[Generator]
) -> Tuple[PantsDecomposition, ...]:
    states = [base]
    pd = base
    for position, generator in enumerate(generators):
        if isinstance(generator, Twist):
            if not pd.curve(generator.curve).is_interior:
                raise WordError(
                    "Generator %s (%s) twists a boundary curve"
                    % (position, generator.token)
                )
        else:
            try:
                site = pd.site(generator.kind, generator.curve, generator.labeling)
            except InvalidSiteError as ex:
                raise InvalidSiteError(
                    "Generator %s (%s): %s" % (position, generator.token, ex)
                ) from ex
            pd = pd.after_move(site)
        states.append(pd)
    return tuple(states)


@attr.s(auto_attribs=True, frozen=True)
class MappingWord:
    """A word over twists and moves, applied left to right from `base`.

    The decomposition reached after each prefix is available in `states`.
    """

    generators: Tuple[Generator, ...]
    base: PantsDecomposition
    states: Tuple[PantsDecomposition, ...] = attr.ib(init=False, repr=False, eq=False)

    def __attrs_post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "states", _walk(self.base, self.generators))

    def __len__(self):
        return len(self.generators)

    @property
    def final(self) -> PantsDecomposition:
        return self.states[-1]

    @property
    def is_closed(self) -> bool:
        """True if the word returns to a decomposition gluing like the base."""
        return self.final.same_gluing(self.base)

    @property
    def tokens(self) -> str:
        return " ".join(g.token for g in self.generators)

    def __str__(self):
        return self.tokens

    def __json__(self):
        return [g.__json__() for g in self.generators]


def apply_word(
    word: MappingWord, coords: DTCoords
) -> Tuple[DTCoords, PantsDecomposition]:
    """Apply *word* to base coordinates, returning the final coordinates and
    decomposition."""
    pd = word.base
    coords.check(pd)
    for generator in word.generators:
        coords, pd = apply_generator(generator, coords, pd)
    return coords, pd


def _inverse_at(generator: Generator, pd: PantsDecomposition) -> Generator:
    if isinstance(generator, Move) and generator.kind is MoveKind.First:
        site = pd.site(MoveKind.First, generator.curve)
        if pd.curve_at(site.slots[0]) is None:
            # a torus with a puncture: no remaining curve, the move undoes itself
            return generator
    return generator.inverse()


def invert_word(word: MappingWord) -> MappingWord:
    """Return the inverse word, based at the final decomposition of *word*.

    Twists change sign and second moves stay. A first move is inverted by
    ``M1'@<id>`` unless the one-holed torus it flips is a punctured torus.
    """
    generators = [
        _inverse_at(generator, pd)
        for generator, pd in zip(reversed(word.generators), reversed(word.states[1:]))
    ]
    return MappingWord(tuple(generators), word.final)


def compose(first: MappingWord, second: Sequence[Generator]) -> MappingWord:
    return MappingWord(first.generators + tuple(second), first.base)


def conjugate(conjugator: MappingWord, inner: Sequence[Generator]) -> MappingWord:
    """Return ``conjugator * inner * conjugator^-1``.

    This is how twists along curves that are not pants curves of the base are
    written: move to a decomposition containing the curve, twist, move back.
    """
    inverse = invert_word(conjugator)
    return MappingWord(
        conjugator.generators + tuple(inner) + inverse.generators, conjugator.base
    )


def power(word: MappingWord, exponent: int) -> MappingWord:
    """Return ``word`` repeated *exponent* times, the word must be closed."""
    if exponent == 0:
        return MappingWord((), word.base)
    if not word.is_closed:
        raise WordError("Only words returning to their base decomposition have powers")
    if exponent < 0:
        inverse = invert_word(word)
        return MappingWord(inverse.generators * -exponent, word.base)
    return MappingWord(word.generators * exponent, word.base)


def word_from_generators(
    generators: Iterable[Generator], base: PantsDecomposition
) -> MappingWord:
    return MappingWord(tuple(generators), base)


def generators_of(pd: PantsDecomposition) -> List[Generator]:
    """Every single generator available on *pd*: both twists on each interior
    curve, a move at every site and the inverse of every first move that is
    not its own inverse."""
    from .surface import enumerate_move_sites

    result: List[Generator] = []
    for curve in pd.interior_curves:
        result.extend([Twist(curve.id, 1), Twist(curve.id, -1)])
    for site in enumerate_move_sites(pd):
        move = Move(site.kind, site.curve, site.labeling)
        result.append(move)
        if site.kind is MoveKind.First and pd.curve_at(site.slots[0]) is not None:
            result.append(move.inverse())
    return result


def double_move_image(
    coords: DTCoords, pd: PantsDecomposition, site: MoveSite
) -> DTCoords:
    """Coordinates reached by performing the move at *site* twice.

    The second move is its own inverse. Performing the first move twice is
    the half twist along the remaining curve of the one-holed torus: that
    curve's twist gains half its intersection number and every other entry
    comes back unchanged.
    """
    site = validate_site(pd, site)
    coords.check(pd)
    if site.kind is MoveKind.Second:
        return coords
    third = pd.curve_at(site.slots[0])
    if third is None or third >= len(coords):
        return coords
    m, t = coords.entry(third)
    return coords.replace({third: (m, t + m / 2)})
