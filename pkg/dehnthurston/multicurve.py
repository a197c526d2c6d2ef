"""Reconstruction of integral multicurves by strand tracing.

Every pants carries the standard arc family of its weights. Inside a window
(one slot of a pants, positions increasing counter-clockwise) the endpoints
are laid out as::

    [band to previous slot | loop first ends | band to next slot | loop second ends]

A loop based at slot ``i`` goes around the leg of slot ``i + 1``, the first
ends are listed outermost first and the second ends innermost first. Across an
interior curve of intersection number ``m`` and twist ``t`` the position ``p``
of the first end is matched with position ``(m - 1 - p + t) mod m`` of the
second end.
"""
import logging
from typing import Dict, FrozenSet, List, Tuple

import attr

from .coords import (
    IntegralMulticurve,
    PantsWeights,
    m_to_lambda,
    pants_m,
    validate_integral,
)
from .surface import PantsDecomposition, Scope

_LOGGER = logging.getLogger(__name__)

Window = Tuple[int, int]


@attr.s(auto_attribs=True, frozen=True, order=True)
class Endpoint:
    pants: int
    slot: int
    position: int

    @property
    def window(self) -> Window:
        return self.pants, self.slot

    def __json__(self):
        return [self.pants, self.slot, self.position]


@attr.s(auto_attribs=True, frozen=True)
class Strand:
    """An arc of the standard family inside a pants."""

    pants: int
    kind: str
    start: Endpoint
    end: Endpoint


@attr.s(auto_attribs=True, frozen=True)
class Crossing:
    """Matching of endpoint sequences across an interior curve."""

    curve: int
    shift: int
    pairs: Tuple[Tuple[Endpoint, Endpoint], ...]


@attr.s(auto_attribs=True, frozen=True)
class ComponentCount:
    closed: int
    arcs: int
    annular: int

    @property
    def total(self) -> int:
        return self.closed + self.arcs + self.annular

    def __json__(self):
        return {
            "components": self.total,
            "closed_components": self.closed + self.annular,
            "arc_components": self.arcs,
            "annular_components": self.annular,
        }

    @property
    def __cli_output__(self) -> str:
        return "%s components (%s closed, %s arcs, %s annular)" % (
            self.total,
            self.closed + self.annular,
            self.arcs,
            self.annular,
        )


@attr.s(auto_attribs=True, frozen=True)
class StrandModel:
    """Arcs in the pants, crossings over the interior curves and annular copies
    of curves with vanishing intersection number."""

    windows: Dict[Window, int]
    weights: Tuple[PantsWeights, ...]
    strands: Tuple[Strand, ...]
    crossings: Tuple[Crossing, ...]
    annular: Dict[int, int]
    terminal: FrozenSet[Window]

    def strands_of_kind(self, kind: str, pants: int = 0) -> List[Strand]:
        return [s for s in self.strands if s.kind == kind and s.pants == pants]

    def endpoints(self) -> List[Endpoint]:
        return [
            Endpoint(pants, slot, position)
            for (pants, slot), count in sorted(self.windows.items())
            for position in range(count)
        ]

    def matching(self) -> List[Tuple[Endpoint, Endpoint, str]]:
        """Every identification of two endpoints, with what realizes it."""
        result = [(s.start, s.end, s.kind) for s in self.strands]
        for crossing in self.crossings:
            label = "curve %s" % crossing.curve
            result.extend((a, b, label) for a, b in crossing.pairs)
        return result


def _window_offsets(weights: PantsWeights, slot: int) -> Tuple[int, int, int, int]:
    previous = (slot - 1) % 3
    following = (slot + 1) % 3
    band_previous = int(weights.band(slot, previous))
    loop = int(weights.loop(slot))
    band_next = int(weights.band(slot, following))
    return 0, band_previous, band_previous + loop, band_previous + loop + band_next


def _pants_strands(pants: int, weights: PantsWeights) -> List[Strand]:
    strands = []
    for slot in range(3):
        _, loop_first, next_block, loop_second = _window_offsets(weights, slot)
        loop = int(weights.loop(slot))
        kind = "l%s%s" % (slot + 1, slot + 1)
        for q in range(loop):
            strands.append(
                Strand(
                    pants,
                    kind,
                    Endpoint(pants, slot, loop_first + q),
                    Endpoint(pants, slot, loop_second + loop - 1 - q),
                )
            )

        following = (slot + 1) % 3
        band = int(weights.band(slot, following))
        low, high = sorted((slot, following))
        kind = "l%s%s" % (low + 1, high + 1)
        for q in range(band):
            strands.append(
                Strand(
                    pants,
                    kind,
                    Endpoint(pants, slot, next_block + q),
                    Endpoint(pants, following, band - 1 - q),
                )
            )
    return strands


def build_strand_model(
    pd: PantsDecomposition, multicurve: IntegralMulticurve
) -> StrandModel:
    """Lay out the arcs of every pants and the crossings of every curve."""
    multicurve = validate_integral(multicurve, pd)
    coords = multicurve.coords

    windows: Dict[Window, int] = {}
    weights = []
    strands: List[Strand] = []
    for pants in pd.pants:
        m = pants_m(pd, coords, pants.index)
        for slot in range(3):
            windows[(pants.index, slot)] = int(m[slot])
        w = m_to_lambda(*m)
        weights.append(w)
        strands.extend(_pants_strands(pants.index, w))

    crossings = []
    annular: Dict[int, int] = {}
    terminal = set()
    for curve in pd.curves:
        m, t = int(coords.m(curve.id)), int(coords.t(curve.id))
        if curve.is_boundary:
            terminal.add((curve.ends[0].pants, curve.ends[0].slot))
            if m == 0 and t > 0 and coords.scope is Scope.MF:
                annular[curve.id] = t
            continue
        if m == 0:
            if t > 0:
                annular[curve.id] = t
            continue
        first, second = curve.ends
        pairs = tuple(
            (
                Endpoint(first.pants, first.slot, p),
                Endpoint(second.pants, second.slot, (m - 1 - p + t) % m),
            )
            for p in range(m)
        )
        crossings.append(Crossing(curve.id, t % m, pairs))

    return StrandModel(
        windows=windows,
        weights=tuple(weights),
        strands=tuple(strands),
        crossings=tuple(crossings),
        annular=annular,
        terminal=frozenset(terminal),
    )


class _DisjointSet:
    def __init__(self, items):
        self._parent = {item: item for item in items}

    def find(self, item):
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, first, second):
        a, b = self.find(first), self.find(second)
        if a != b:
            self._parent[max(a, b)] = min(a, b)

    def groups(self) -> Dict[Endpoint, List[Endpoint]]:
        result: Dict[Endpoint, List[Endpoint]] = {}
        for item in self._parent:
            result.setdefault(self.find(item), []).append(item)
        return result


def component_breakdown(
    pd: PantsDecomposition, multicurve: IntegralMulticurve
) -> ComponentCount:
    """Count closed curves, arcs ending on the boundary and annular copies."""
    model = build_strand_model(pd, multicurve)
    components = _DisjointSet(model.endpoints())
    for first, second, _ in model.matching():
        components.union(first, second)

    closed = arcs = 0
    for members in components.groups().values():
        if any(e.window in model.terminal for e in members):
            arcs += 1
        else:
            closed += 1

    count = ComponentCount(closed, arcs, sum(model.annular.values()))
    _LOGGER.debug("Traced %s endpoints: %s", len(model.endpoints()), count)
    return count


def count_components(pd: PantsDecomposition, multicurve: IntegralMulticurve) -> int:
    """Number of components of the multicurve, each unit-weight copy counted
    separately, 0 for the empty multicurve."""
    return component_breakdown(pd, multicurve).total


def closed_components(pd: PantsDecomposition, multicurve: IntegralMulticurve) -> int:
    count = component_breakdown(pd, multicurve)
    return count.closed + count.annular


def arc_components(pd: PantsDecomposition, multicurve: IntegralMulticurve) -> int:
    return component_breakdown(pd, multicurve).arcs


def matching_dump(model: StrandModel) -> List[dict]:
    """The endpoint matching as a JSON-ready list, deterministic order."""
    entries = []
    for first, second, via in model.matching():
        entries.append(
            {
                "from": {"window": list(first.window), "position": first.position},
                "to": {"window": list(second.window), "position": second.position},
                "via": via,
            }
        )
    entries.sort(key=lambda e: (e["from"]["window"], e["from"]["position"], e["via"]))
    return entries
