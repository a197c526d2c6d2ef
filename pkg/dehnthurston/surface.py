"""Surface types, pants decompositions and move sites.

A decomposition is a list of generalized pairs of pants, each with three slots
listed in the counter-clockwise order of their windows, and a list of curves
binding the slots. Interior curves bind two slots, boundary curves of the
surface bind one and a slot marked as a puncture is never bound.

Curve identifiers are dense integers, interior curves first in the order of
their bindings followed by the boundary curves. Coordinate vectors of scope
:attr:`Scope.MF0` are therefore a prefix of the :attr:`Scope.MF` vectors.
"""
import logging
from collections import Counter, deque
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import attr
import numpy as np
from pydantic import ValidationError

from .exceptions import InvalidSiteError, SurfaceError
from .schema import BindingModel, GluingDescription, PantsModel, SurfaceModel

_LOGGER = logging.getLogger(__name__)


class Scope(Enum):
    """Which curves a coordinate vector indexes."""

    #: every curve, including the boundary curves of the surface
    MF = "MF"
    #: interior curves only, boundary entries are implicitly zero
    MF0 = "MF0"


class MoveKind(Enum):
    First = "first"
    Second = "second"


@attr.s(auto_attribs=True, frozen=True)
class SurfaceSpec:
    """Topological type of the surface with *genus*, boundary circles and
    punctures."""

    genus: int
    boundary_count: int = 0
    puncture_count: int = 0

    def __attrs_post_init__(self):
        if min(self.genus, self.boundary_count, self.puncture_count) < 0:
            raise SurfaceError("Surface invariants must be non-negative: %s" % self)
        if 2 * self.genus - 2 + self.boundary_count + self.puncture_count <= 0:
            raise SurfaceError(
                "%s is not hyperbolic, 2g-2+r+s must be positive" % self.name
            )

    @property
    def name(self) -> str:
        return "F_{%s,%s}^%s" % (self.genus, self.boundary_count, self.puncture_count)

    @property
    def curve_count(self) -> int:
        """Number of pants curves, boundary curves included."""
        return 3 * self.genus - 3 + 2 * self.boundary_count + self.puncture_count

    @property
    def interior_curve_count(self) -> int:
        return 3 * self.genus - 3 + self.boundary_count + self.puncture_count

    @property
    def pants_count(self) -> int:
        return 2 * self.genus - 2 + self.boundary_count + self.puncture_count

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count - self.puncture_count

    def coordinate_dimension(self, scope: Scope = Scope.MF) -> int:
        """Real dimension of the coordinate space, two entries per indexed curve."""
        if scope is Scope.MF:
            return 2 * self.curve_count
        return 2 * self.interior_curve_count

    def sphere_dimension(self, scope: Scope = Scope.MF) -> int:
        """Dimension of the sphere of projective classes."""
        return self.coordinate_dimension(scope) - 1


@attr.s(auto_attribs=True, frozen=True, order=True)
class SlotRef:
    """A boundary slot of a pants."""

    pants: int
    slot: int

    def rotated(self, offset: int) -> "SlotRef":
        return SlotRef(self.pants, (self.slot + offset) % 3)


@attr.s(auto_attribs=True, frozen=True)
class Curve:
    """A pants curve.

    Twisting is measured with the standard annulus framing, whose reference
    side is the first bound slot. `framing` is reserved for other framings and
    must be false. `generation` is bumped whenever an elementary move replaces
    the curve.
    """

    id: int
    ends: Tuple[SlotRef, ...]
    framing: bool = False
    generation: int = 0

    @property
    def is_boundary(self) -> bool:
        return len(self.ends) == 1

    @property
    def is_interior(self) -> bool:
        return len(self.ends) == 2

    @property
    def is_self_glued(self) -> bool:
        return self.is_interior and self.ends[0].pants == self.ends[1].pants


@attr.s(auto_attribs=True, frozen=True)
class Pants:
    """A generalized pair of pants, `slots` holds curve ids or None for a
    puncture."""

    index: int
    slots: Tuple[Optional[int], Optional[int], Optional[int]]

    def cyclic_key(self) -> Tuple[int, ...]:
        """Rotation independent key used to compare gluings."""
        values = tuple(-1 if c is None else c for c in self.slots)
        return min(values[i:] + values[:i] for i in range(3))


@attr.s(auto_attribs=True, frozen=True)
class MoveSite:
    """A place where an elementary move can be performed.

    For a First site `slots` lists the slot of the remaining curve followed by
    the two sides of the moved curve. For a Second site it lists the bottom
    pants slots ``(1, A, B)`` followed by the top pants slots ``(1, C, D)``,
    each in counter-clockwise order starting from the moved curve; the curves
    numbered 2 to 5 of the move are B, A, C and D respectively. The `labeling`
    selects which of the two ends of the curve lies on the bottom pants.
    """

    kind: MoveKind
    curve: int
    labeling: int = 0
    slots: Tuple[SlotRef, ...] = attr.ib(default=(), eq=False, repr=False)

    @property
    def token(self) -> str:
        if self.kind is MoveKind.First:
            return f"M1@{self.curve}"
        return f"M2@{self.curve}:{self.labeling}"


@attr.s(auto_attribs=True, frozen=True)
class PantsDecomposition:
    """A validated pants decomposition of a surface."""

    spec: SurfaceSpec
    pants: Tuple[Pants, ...]
    curves: Tuple[Curve, ...]

    @property
    def interior_curves(self) -> List[Curve]:
        return [c for c in self.curves if c.is_interior]

    @property
    def boundary_curves(self) -> List[Curve]:
        return [c for c in self.curves if c.is_boundary]

    @property
    def generations(self) -> Tuple[int, ...]:
        return tuple(c.generation for c in self.curves)

    def curve(self, curve_id: int) -> Curve:
        if not 0 <= curve_id < len(self.curves):
            raise InvalidSiteError("Unknown curve id %s" % curve_id)
        return self.curves[curve_id]

    def curve_at(self, ref: SlotRef) -> Optional[int]:
        return self.pants[ref.pants].slots[ref.slot]

    def scope_curves(self, scope: Scope) -> List[Curve]:
        """Curves indexed by coordinate vectors of *scope*."""
        if scope is Scope.MF:
            return list(self.curves)
        return self.interior_curves

    def pants_edges(self) -> List[Tuple[int, int, int]]:
        """Edges (pants, pants, curve) of the gluing graph, loops included."""
        return [
            (c.ends[0].pants, c.ends[1].pants, c.id) for c in self.interior_curves
        ]

    def same_gluing(self, other: "PantsDecomposition") -> bool:
        """Return True if both decompositions glue the same pants along the same
        curves, disregarding the pants order and the curve generations."""
        if self.spec != other.spec or len(self.curves) != len(other.curves):
            return False
        pairs = zip(self.curves, other.curves)
        if any(a.is_boundary != b.is_boundary for a, b in pairs):
            return False
        mine = Counter(p.cyclic_key() for p in self.pants)
        theirs = Counter(p.cyclic_key() for p in other.pants)
        return mine == theirs

    def site(self, kind: MoveKind, curve_id: int, labeling: int = 0) -> MoveSite:
        """Resolve the site of *kind* on *curve_id*."""
        curve = self.curve(curve_id)
        if not curve.is_interior:
            raise InvalidSiteError("Curve %s is a boundary curve" % curve_id)

        if kind is MoveKind.First:
            if not curve.is_self_glued:
                raise InvalidSiteError(
                    "Curve %s does not bound a one-holed torus in a single pants"
                    % curve_id
                )
            pants = curve.ends[0].pants
            third = 3 - curve.ends[0].slot - curve.ends[1].slot
            start = SlotRef(pants, third)
            return MoveSite(
                kind, curve_id, 0, (start, start.rotated(1), start.rotated(2))
            )

        if labeling not in (0, 1):
            raise InvalidSiteError("Labeling must be 0 or 1, got %s" % labeling)
        if curve.is_self_glued:
            raise InvalidSiteError(
                "Curve %s lies on a single pants, no four-holed sphere around it"
                % curve_id
            )
        bottom = curve.ends[labeling]
        top = curve.ends[1 - labeling]
        slots = (
            bottom,
            bottom.rotated(1),
            bottom.rotated(2),
            top,
            top.rotated(1),
            top.rotated(2),
        )
        return MoveSite(kind, curve_id, labeling, slots)

    def after_move(self, site: MoveSite) -> "PantsDecomposition":
        """Return the decomposition obtained by performing the move at *site*."""
        site = validate_site(self, site)
        moved = self.curves[site.curve]
        replaced = attr.evolve(moved, generation=moved.generation + 1)

        if site.kind is MoveKind.First:
            curves = list(self.curves)
            curves[site.curve] = replaced
            return attr.evolve(self, curves=tuple(curves))

        bottom, a_ref, b_ref, top, c_ref, d_ref = site.slots
        a, b, c, d = (self.curve_at(ref) for ref in (a_ref, b_ref, c_ref, d_ref))
        left = Pants(bottom.pants, (site.curve, b, c))
        right = Pants(top.pants, (site.curve, d, a))
        remap = {
            b_ref: SlotRef(left.index, 1),
            c_ref: SlotRef(left.index, 2),
            d_ref: SlotRef(right.index, 1),
            a_ref: SlotRef(right.index, 2),
        }

        pants = list(self.pants)
        pants[left.index] = left
        pants[right.index] = right

        curves = []
        for curve in self.curves:
            if curve.id == site.curve:
                ends = [SlotRef(right.index, 0), SlotRef(right.index, 0)]
                ends[site.labeling] = SlotRef(left.index, 0)
                curves.append(attr.evolve(replaced, ends=tuple(ends)))
            else:
                ends = tuple(remap.get(end, end) for end in curve.ends)
                curves.append(attr.evolve(curve, ends=ends))

        return attr.evolve(self, pants=tuple(pants), curves=tuple(curves))

    def to_gluing(self) -> GluingDescription:
        """Serialize to the gluing document accepted by
        :func:`build_pants_decomposition`."""
        return GluingDescription(
            surface=SurfaceModel(
                genus=self.spec.genus,
                boundary_count=self.spec.boundary_count,
                puncture_count=self.spec.puncture_count,
            ),
            pants=[
                PantsModel(punctures=[i for i, c in enumerate(p.slots) if c is None])
                for p in self.pants
            ],
            bindings=[
                BindingModel(
                    slots=[[end.pants, end.slot] for end in c.ends],
                    framing=c.framing,
                    generation=c.generation,
                )
                for c in self.interior_curves
            ],
            boundary=[[c.ends[0].pants, c.ends[0].slot] for c in self.boundary_curves],
        )


def _check_slot(raw: Sequence[int], pants_count: int) -> SlotRef:
    if len(raw) != 2:
        raise SurfaceError("Slot references are [pants, slot] pairs, got %s" % raw)
    ref = SlotRef(int(raw[0]), int(raw[1]))
    if not 0 <= ref.pants < pants_count or not 0 <= ref.slot < 3:
        raise SurfaceError("Slot %s does not exist" % list(raw))
    return ref


def build_pants_decomposition(
    spec: SurfaceSpec, gluing: GluingDescription
) -> PantsDecomposition:
    """Validate a slot-binding description and build the decomposition."""
    pants_count = len(gluing.pants)
    if pants_count != spec.pants_count:
        raise SurfaceError(
            "%s needs %s pants, gluing has %s"
            % (spec.name, spec.pants_count, pants_count)
        )

    bound: Dict[SlotRef, int] = {}
    punctures = set()
    for index, pants in enumerate(gluing.pants):
        for slot in pants.punctures:
            punctures.add(_check_slot([index, slot], pants_count))

    def bind(ref: SlotRef, curve_id: int):
        if ref in bound:
            raise SurfaceError(
                "Slot %s bound twice (curves %s and %s)"
                % ([ref.pants, ref.slot], bound[ref], curve_id)
            )
        if ref in punctures:
            raise SurfaceError("Slot %s is a puncture" % [ref.pants, ref.slot])
        bound[ref] = curve_id

    curves = []
    for binding in gluing.bindings:
        ends = tuple(_check_slot(raw, pants_count) for raw in binding.slots)
        if len(ends) != 2:
            raise SurfaceError("Interior curves bind exactly two slots")
        if binding.framing:
            raise SurfaceError(
                "Curve %s: only the standard framing is supported" % len(curves)
            )
        curve = Curve(len(curves), ends, binding.framing, binding.generation)
        for end in ends:
            bind(end, curve.id)
        curves.append(curve)

    for raw in gluing.boundary:
        end = _check_slot(raw, pants_count)
        curve = Curve(len(curves), (end,))
        bind(end, curve.id)
        curves.append(curve)

    interior = len(gluing.bindings)
    boundary = len(gluing.boundary)
    if (interior, boundary, len(punctures)) != (
        spec.interior_curve_count,
        spec.boundary_count,
        spec.puncture_count,
    ):
        raise SurfaceError(
            "%s needs %s interior curves, %s boundary curves and %s punctures,"
            " gluing has %s, %s and %s"
            % (
                spec.name,
                spec.interior_curve_count,
                spec.boundary_count,
                spec.puncture_count,
                interior,
                boundary,
                len(punctures),
            )
        )

    # slot conservation, every slot is either bound or a puncture
    if 3 * pants_count != 2 * interior + boundary + len(punctures):
        raise SurfaceError("Some pants slots are neither bound nor punctures")

    slots = {ref: curve_id for ref, curve_id in bound.items()}
    pants = tuple(
        Pants(i, tuple(slots.get(SlotRef(i, s)) for s in range(3)))  # type: ignore
        for i in range(pants_count)
    )
    pd = PantsDecomposition(spec, pants, tuple(curves))

    if not _is_connected(pd):
        raise SurfaceError("The gluing graph is disconnected")
    if -pants_count != spec.euler_characteristic:
        raise SurfaceError("Euler characteristic does not match %s" % spec.name)

    _LOGGER.debug(
        "Built decomposition of %s: %s pants, %s curves",
        spec.name,
        pants_count,
        len(curves),
    )
    return pd


def _is_connected(pd: PantsDecomposition) -> bool:
    neighbours: Dict[int, List[int]] = {p.index: [] for p in pd.pants}
    for first, second, _ in pd.pants_edges():
        neighbours[first].append(second)
        neighbours[second].append(first)

    seen = {0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for other in neighbours[current]:
            if other not in seen:
                seen.add(other)
                queue.append(other)
    return len(seen) == len(pd.pants)


def load_gluing(document: dict) -> PantsDecomposition:
    """Build a decomposition from a parsed gluing JSON document."""
    try:
        gluing = GluingDescription.parse_obj(document)
    except ValidationError as ex:
        raise SurfaceError("Invalid gluing description: %s" % ex) from ex
    spec = SurfaceSpec(
        gluing.surface.genus,
        gluing.surface.boundary_count,
        gluing.surface.puncture_count,
    )
    return build_pants_decomposition(spec, gluing)


def enumerate_move_sites(pd: PantsDecomposition) -> List[MoveSite]:
    """Return every First and Second site, ordered by curve id."""
    sites = []
    for curve in pd.interior_curves:
        if curve.is_self_glued:
            sites.append(pd.site(MoveKind.First, curve.id))
        else:
            sites.extend(pd.site(MoveKind.Second, curve.id, lab) for lab in (0, 1))

    _LOGGER.debug("Found sites: %s", ", ".join(s.token for s in sites))
    return sites


def validate_site(pd: PantsDecomposition, site: MoveSite) -> MoveSite:
    """Re-derive *site* on *pd*, raising :class:`InvalidSiteError` if it does
    not hold there."""
    resolved = pd.site(site.kind, site.curve, site.labeling)
    if site.slots and site.slots != resolved.slots:
        raise InvalidSiteError(
            "Site %s does not match the current decomposition" % site.token
        )
    return resolved


def random_decomposition(spec: SurfaceSpec, seed: int) -> PantsDecomposition:
    """Generate a random valid decomposition of *spec*.

    A random spanning tree of pants is glued first, the remaining free slots are
    shuffled and handed out to punctures, boundary curves and extra interior
    curves in that order.
    """
    rng = np.random.default_rng(seed)
    count = spec.pants_count
    free: Dict[int, List[int]] = {
        p: [int(s) for s in rng.permutation(3)] for p in range(count)
    }
    order = [int(p) for p in rng.permutation(count)]

    bindings = []
    for position in range(1, count):
        pants = order[position]
        candidates = [q for q in order[:position] if free[q]]
        other = candidates[int(rng.integers(len(candidates)))]
        bindings.append([[pants, free[pants].pop()], [other, free[other].pop()]])

    rest = [[p, s] for p in range(count) for s in free[p]]
    rest = [rest[int(i)] for i in rng.permutation(len(rest))]
    punctures, rest = rest[: spec.puncture_count], rest[spec.puncture_count :]
    boundary, rest = rest[: spec.boundary_count], rest[spec.boundary_count :]
    bindings.extend([rest[i], rest[i + 1]] for i in range(0, len(rest), 2))

    pants_models = [PantsModel(punctures=[]) for _ in range(count)]
    for p, s in punctures:
        pants_models[p].punctures.append(s)

    gluing = GluingDescription(
        surface=SurfaceModel(
            genus=spec.genus,
            boundary_count=spec.boundary_count,
            puncture_count=spec.puncture_count,
        ),
        pants=pants_models,
        bindings=[BindingModel(slots=b) for b in bindings],
        boundary=boundary,
    )
    return build_pants_decomposition(spec, gluing)
