"""Dehn-Thurston coordinates and pants arc weights.

Each indexed curve carries an intersection number ``m >= 0`` and a twisting
number ``t``. Pairs with ``m = 0`` are identified with their antipode, the
canonical representative has ``t >= 0``.
"""
import logging
from collections import deque
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import attr
import numpy as np

from .exceptions import (
    CoordinateError,
    IntegralityError,
    ParityError,
    ScopeMismatchError,
    StaleCoordinatesError,
    WeightPatternError,
)
from .schema import CoordinateEntry, CoordinatesDocument
from .surface import PantsDecomposition, Scope
from .utils import (
    RationalLike,
    format_rational,
    is_integral,
    join,
    meet,
    parse_rational,
)

_LOGGER = logging.getLogger(__name__)

Entry = Tuple[Fraction, Fraction]

ZERO = Fraction(0)


def normalize_entry(m: RationalLike, t: RationalLike) -> Entry:
    m, t = parse_rational(m), parse_rational(t)
    if m < 0:
        raise CoordinateError("Intersection numbers must be non-negative, got %s" % m)
    if m == 0 and t < 0:
        return ZERO, -t
    return m, t


@attr.s(auto_attribs=True, frozen=True)
class DTCoords:
    """Coordinates of a measured foliation relative to a pants decomposition.

    `entries` is indexed by curve id, `generations` records the curve
    generations of the decomposition the coordinates refer to.
    """

    scope: Scope
    entries: Tuple[Entry, ...]
    generations: Tuple[int, ...] = attr.ib()

    @generations.default
    def _zero_generations(self):
        return (0,) * len(self.entries)

    def __attrs_post_init__(self):
        if len(self.generations) != len(self.entries):
            raise CoordinateError("One generation tag per entry is required")
        for index, (m, t) in enumerate(self.entries):
            if m < 0 or (m == 0 and t < 0):
                raise CoordinateError(
                    "Entry %s = (%s, %s) is not normalized" % (index, m, t)
                )

    def __len__(self):
        return len(self.entries)

    def m(self, curve: int) -> Fraction:
        return self.entry(curve)[0]

    def t(self, curve: int) -> Fraction:
        return self.entry(curve)[1]

    def entry(self, curve: int) -> Entry:
        if 0 <= curve < len(self.entries):
            return self.entries[curve]
        if self.scope is Scope.MF0 and curve >= 0:
            return ZERO, ZERO
        raise ScopeMismatchError("Curve %s is not indexed by these coordinates" % curve)

    def check(self, pd: PantsDecomposition) -> "DTCoords":
        """Verify that the coordinates refer to *pd*."""
        expected = len(pd.scope_curves(self.scope))
        if len(self.entries) != expected:
            raise ScopeMismatchError(
                "%s coordinates on %s need %s entries, got %s"
                % (self.scope.value, pd.spec.name, expected, len(self.entries))
            )
        if self.generations != pd.generations[:expected]:
            raise StaleCoordinatesError(
                "Coordinates refer to curve generations %s, decomposition has %s"
                % (list(self.generations), list(pd.generations[:expected]))
            )
        return self

    def replace(
        self,
        updates: Dict[int, Tuple[RationalLike, RationalLike]],
        generations: Optional[Sequence[int]] = None,
    ) -> "DTCoords":
        """Return a copy with the given entries replaced and normalized."""
        entries = list(self.entries)
        for curve, (m, t) in updates.items():
            if curve >= len(entries):
                if m == 0 and t == 0:
                    continue
                raise ScopeMismatchError(
                    "Curve %s is not indexed by %s coordinates"
                    % (curve, self.scope.value)
                )
            entries[curve] = normalize_entry(m, t)
        gens = self.generations if generations is None else tuple(generations)
        return DTCoords(self.scope, tuple(entries), gens[: len(entries)])

    def rebased(self, pd: PantsDecomposition) -> "DTCoords":
        """Return the same values tagged with the generations of *pd*."""
        return attr.evolve(self, generations=pd.generations[: len(self.entries)])

    def scaled(self, factor: RationalLike) -> "DTCoords":
        """Multiply all entries by a positive rational."""
        factor = parse_rational(factor)
        if factor <= 0:
            raise CoordinateError("Scaling factor must be positive, got %s" % factor)
        return attr.evolve(
            self, entries=tuple((m * factor, t * factor) for m, t in self.entries)
        )

    @property
    def values(self) -> Tuple[Fraction, ...]:
        """Flat vector ``(m_0, t_0, m_1, t_1, ...)``."""
        return tuple(v for entry in self.entries for v in entry)

    @property
    def max_norm(self) -> Fraction:
        return max((abs(v) for v in self.values), default=ZERO)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def __json__(self):
        return {
            "scope": self.scope.value,
            "coordinates": [
                {"curve": i, "m": format_rational(m), "t": format_rational(t)}
                for i, (m, t) in enumerate(self.entries)
            ],
        }

    @property
    def __cli_output__(self) -> str:
        lines = ["Scope: %s" % self.scope.value]
        for i, (m, t) in enumerate(self.entries):
            lines.append(
                "  curve %s: m=%s, t=%s" % (i, format_rational(m), format_rational(t))
            )
        return "\n".join(lines)

    @classmethod
    def zero(cls, pd: PantsDecomposition, scope: Scope = Scope.MF0) -> "DTCoords":
        count = len(pd.scope_curves(scope))
        return cls(scope, ((ZERO, ZERO),) * count, pd.generations[:count])

    @classmethod
    def from_pairs(
        cls,
        pd: PantsDecomposition,
        pairs: Iterable[Tuple[RationalLike, RationalLike]],
        scope: Scope = Scope.MF0,
    ) -> "DTCoords":
        """Build normalized coordinates on *pd* from (m, t) pairs in curve order."""
        coords = normalize(list(pairs), scope, pd.generations)
        return coords.check(pd)

    @classmethod
    def from_document(
        cls, pd: PantsDecomposition, document: CoordinatesDocument
    ) -> "DTCoords":
        """Build coordinates from a parsed JSON document.

        Without an explicit scope the document is read as ``MF`` as soon as it
        mentions a boundary curve, and as ``MF0`` otherwise.
        """
        for item in document.coordinates:
            if item.curve >= len(pd.curves):
                raise CoordinateError("Unknown curve id %s" % item.curve)
        if document.scope is not None:
            scope = Scope(document.scope)
        elif any(pd.curves[item.curve].is_boundary for item in document.coordinates):
            scope = Scope.MF
        else:
            scope = Scope.MF0

        coords = cls.zero(pd, scope)
        updates = {item.curve: (item.m, item.t) for item in document.coordinates}
        return coords.replace(updates)

    def to_document(self) -> CoordinatesDocument:
        return CoordinatesDocument(
            scope=self.scope.value,
            coordinates=[
                CoordinateEntry(curve=i, m=format_rational(m), t=format_rational(t))
                for i, (m, t) in enumerate(self.entries)
            ],
        )


@attr.s(auto_attribs=True, frozen=True)
class IntegralMulticurve:
    """Coordinates with integral entries and even intersection sums around every
    pants."""

    coords: DTCoords

    @property
    def scope(self) -> Scope:
        return self.coords.scope

    @property
    def entries(self) -> Tuple[Entry, ...]:
        return self.coords.entries

    def m(self, curve: int) -> int:
        return int(self.coords.m(curve))

    def t(self, curve: int) -> int:
        return int(self.coords.t(curve))


@attr.s(auto_attribs=True, frozen=True)
class PantsWeights:
    """Weights of the six arc types in a pants, indices follow the slot order."""

    l11: Fraction = ZERO
    l22: Fraction = ZERO
    l33: Fraction = ZERO
    l12: Fraction = ZERO
    l13: Fraction = ZERO
    l23: Fraction = ZERO

    def loop(self, slot: int) -> Fraction:
        return (self.l11, self.l22, self.l33)[slot]

    def band(self, first: int, second: int) -> Fraction:
        """Weight of the arcs joining two distinct slots."""
        key = frozenset((first, second))
        if key == frozenset((0, 1)):
            return self.l12
        if key == frozenset((0, 2)):
            return self.l13
        if key == frozenset((1, 2)):
            return self.l23
        raise ValueError("Band needs two distinct slots, got %s" % sorted(key))

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return attr.astuple(self)


def normalize(
    raw: Sequence[Tuple[RationalLike, RationalLike]],
    scope: Scope = Scope.MF0,
    generations: Optional[Sequence[int]] = None,
) -> DTCoords:
    """Return canonical coordinates, ``(0, t)`` with ``t < 0`` becomes ``(0, -t)``."""
    entries = tuple(normalize_entry(m, t) for m, t in raw)
    gens = (0,) * len(entries) if generations is None else tuple(generations)
    return DTCoords(scope, entries, gens[: len(entries)])


def m_to_lambda(m1: RationalLike, m2: RationalLike, m3: RationalLike) -> PantsWeights:
    """Arc weights of the standard arc family with intersection numbers m1, m2,
    m3.

    The band weights are capped by the smaller intersection number so that the
    recomposition ``m_i = 2 l_ii + l_ij + l_ik`` also holds when one of the
    triangle inequalities fails.
    """
    m = [parse_rational(v) for v in (m1, m2, m3)]
    if any(v < 0 for v in m):
        raise CoordinateError("Intersection numbers must be non-negative: %s" % m)
    return arc_weights(*m)


def arc_weights(m1, m2, m3) -> PantsWeights:
    """The formulas behind :func:`m_to_lambda`, without input validation."""
    m = (m1, m2, m3)

    def loop(i, j, k):
        return join(ZERO, (m[i] - m[j] - m[k]) / 2)

    def band(i, j, k):
        return join(ZERO, meet((m[i] + m[j] - m[k]) / 2, m[i], m[j]))

    return PantsWeights(
        l11=loop(0, 1, 2),
        l22=loop(1, 0, 2),
        l33=loop(2, 0, 1),
        l12=band(0, 1, 2),
        l13=band(0, 2, 1),
        l23=band(1, 2, 0),
    )


def lambda_to_m(weights: PantsWeights) -> Tuple[Fraction, Fraction, Fraction]:
    """Recompose the intersection numbers from arc weights."""
    w = weights
    if any(v < 0 for v in w.as_tuple()):
        raise WeightPatternError("Arc weights must be non-negative: %s" % (w,))
    loops = [w.l11, w.l22, w.l33]
    if sum(1 for v in loops if v > 0) > 1:
        raise WeightPatternError("At most one loop weight can be positive: %s" % (w,))
    opposite = [w.l23, w.l13, w.l12]
    for loop, band in zip(loops, opposite):
        if loop > 0 and band > 0:
            raise WeightPatternError("Loop and opposite band cross: %s" % (w,))

    return (
        2 * w.l11 + w.l12 + w.l13,
        2 * w.l22 + w.l12 + w.l23,
        2 * w.l33 + w.l13 + w.l23,
    )


def pants_m(
    pd: PantsDecomposition, coords: DTCoords, pants: int
) -> Tuple[Fraction, Fraction, Fraction]:
    """Intersection numbers seen by the three slots of a pants."""
    values = []
    for curve in pd.pants[pants].slots:
        values.append(ZERO if curve is None else coords.m(curve))
    return values[0], values[1], values[2]


def pants_weights(pd: PantsDecomposition, coords: DTCoords) -> List[PantsWeights]:
    """Arc weights of every pants, in pants order."""
    coords.check(pd)
    return [m_to_lambda(*pants_m(pd, coords, p.index)) for p in pd.pants]


def validate_integral(
    coords: Union[DTCoords, IntegralMulticurve], pd: PantsDecomposition
) -> IntegralMulticurve:
    """Check integrality and pants parity of *coords*."""
    if isinstance(coords, IntegralMulticurve):
        coords = coords.coords
    coords.check(pd)
    for curve, (m, t) in enumerate(coords.entries):
        if not (is_integral(m) and is_integral(t)):
            raise IntegralityError(
                "Curve %s has non-integral entry (%s, %s)"
                % (curve, format_rational(m), format_rational(t))
            )
    for pants in pd.pants:
        total = sum(pants_m(pd, coords, pants.index))
        if total % 2:
            raise ParityError(
                "Pants %s has odd intersection sum %s" % (pants.index, total)
            )
    return IntegralMulticurve(coords)


def _repair_parity(pd: PantsDecomposition, m: List[int], bound: int, scope: Scope):
    def flip(curve: int):
        m[curve] = m[curve] + 1 if m[curve] < bound else m[curve] - 1

    def odd_pants() -> List[int]:
        odd = []
        for pants in pd.pants:
            total = sum(
                m[c] for c in pants.slots if c is not None and c < len(m)
            )
            if total % 2:
                odd.append(pants.index)
        return odd

    odd = odd_pants()
    if len(odd) % 2:
        # only boundary curves contribute an odd total
        boundary = pd.boundary_curves if scope is Scope.MF else []
        if not boundary:
            raise ParityError("Cannot repair parity without boundary curves")
        adjacent = [c for c in boundary if c.ends[0].pants in odd]
        flip((adjacent or boundary)[0].id)
        odd = odd_pants()

    # spanning tree of the pants graph, odd pants push their parity to the root
    parent: Dict[int, Tuple[int, int]] = {}
    order = [0]
    seen = {0}
    queue = deque([0])
    edges = [e for e in pd.pants_edges() if e[0] != e[1]]
    while queue:
        current = queue.popleft()
        for first, second, curve in edges:
            if current not in (first, second):
                continue
            other = second if current == first else first
            if other not in seen:
                seen.add(other)
                parent[other] = (current, curve)
                order.append(other)
                queue.append(other)

    parity = {p: (p in odd) for p in range(len(pd.pants))}
    for pants in reversed(order[1:]):
        if parity[pants]:
            up, curve = parent[pants]
            flip(curve)
            parity[pants] = False
            parity[up] = not parity[up]


def sample(
    pd: PantsDecomposition, bound: int, seed: int, scope: Scope = Scope.MF
) -> IntegralMulticurve:
    """Draw a deterministic pseudo-random integral multicurve with entries in
    ``[-bound, bound]``."""
    if bound < 1:
        raise CoordinateError("Sample bound must be at least 1, got %s" % bound)
    rng = np.random.default_rng(seed)
    count = len(pd.scope_curves(scope))
    m = [int(v) for v in rng.integers(0, bound + 1, size=count)]
    t = [int(v) for v in rng.integers(-bound, bound + 1, size=count)]
    _repair_parity(pd, m, bound, scope)

    coords = normalize(list(zip(m, t)), scope, pd.generations)
    return validate_integral(coords, pd)


def projectivize(coords: DTCoords) -> DTCoords:
    """Return the representative of the projective class with max-norm 1."""
    norm = coords.max_norm
    if norm == 0:
        raise CoordinateError("The empty foliation has no projective class")
    return attr.evolve(
        coords, entries=tuple((m / norm, t / norm) for m, t in coords.entries)
    )


def restrict(coords: DTCoords, pd: PantsDecomposition) -> DTCoords:
    """Drop the boundary entries of ``MF`` coordinates."""
    coords.check(pd)
    if coords.scope is Scope.MF0:
        return coords
    interior = len(pd.interior_curves)
    for curve in pd.boundary_curves:
        if coords.entry(curve.id) != (ZERO, ZERO):
            raise ScopeMismatchError(
                "Boundary curve %s carries a nonzero entry" % curve.id
            )
    return DTCoords(Scope.MF0, coords.entries[:interior], coords.generations[:interior])


def extend(coords: DTCoords, pd: PantsDecomposition) -> DTCoords:
    """Embed ``MF0`` coordinates into ``MF`` with zero boundary entries."""
    coords.check(pd)
    if coords.scope is Scope.MF:
        return coords
    missing = len(pd.curves) - len(coords.entries)
    return DTCoords(
        Scope.MF,
        coords.entries + ((ZERO, ZERO),) * missing,
        pd.generations,
    )
