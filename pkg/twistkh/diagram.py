# ruff: noqa: TRY003, EM102
"""Diagram module.

Tangle diagrams given as planar Morse words on one side of the dividing
axis, their resolutions and circles, planar matchings with their faces and
bridge classes, and surgery.

This module provides the following classes:

- Side
- Crossing
- MorseEvent
- PlanarMatching
- BridgeClass
- Resolution
- Circle
- BridgeSite
- CircleSet
- SurgeryOutcome
- Grading
- TangleDiagram
"""

from __future__ import annotations

import itertools
import json
import logging
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, NamedTuple

from pydantic import TypeAdapter, ValidationError

from twistkh import exceptions
from twistkh.field import Polynomial, VariableRegistry
from twistkh.schemas.diagram import Diagram

logger = logging.getLogger(__name__)

PLUS = "+"
MINUS = "-"

# Port numbering at a crossing: 0 lower-in, 1 upper-in, 2 lower-out, 3 upper-out.
_IDENTITY = (2, 3, 0, 1)
_CAP_CUP = (1, 0, 3, 2)


class Side(str, Enum):
    """The half-plane a tangle or matching lives in."""

    LEFT = "left"
    RIGHT = "right"

    def opposite(self: Side) -> Side:
        """Return the other side."""
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


class Crossing(NamedTuple):
    """A crossing of a tangle diagram."""

    id: str
    sign: int
    over: str


class MorseEvent(NamedTuple):
    """One elementary piece of a Morse word."""

    kind: str
    position: int
    crossing: str | None = None


Pair = tuple[int, int]


class BridgeClass(NamedTuple):
    """A bridge of a planar matching, up to isotopy.

    Attributes:
        side: Side of the matching.
        arcs: The two arcs joined by the bridge, in increasing order.
        face: Face of the matching both arcs bound (0 is the outer face,
            ``k`` the face just inside the ``k``-th arc).
    """

    side: Side
    arcs: tuple[Pair, Pair]
    face: int

    def label(self: BridgeClass) -> str:
        """Return a short printable label."""
        (a, b), (c, d) = self.arcs
        return f"{self.side.value[0]}[{a}{b}|{c}{d}]"


class PlanarMatching:
    """A noncrossing perfect matching of the axis points ``1..2n``.

    Args:
        pairs: The matched pairs.
        side: Side of the axis holding the arcs.

    Raises:
        ValueError: If the pairs cross or do not cover ``1..2n``.
    """

    def __init__(self: PlanarMatching, pairs: Any, side: Side) -> None:
        """Initialize a PlanarMatching."""
        self.pairs: tuple[Pair, ...] = tuple(sorted(tuple(sorted(p)) for p in pairs))
        self.side = Side(side)
        self._partner: dict[int, int] = {}
        for a, b in self.pairs:
            self._partner[a] = b
            self._partner[b] = a
        if sorted(self._partner) != list(range(1, 2 * len(self.pairs) + 1)):
            raise ValueError(f"pairs {self.pairs} do not match 1..{2 * len(self.pairs)}")
        for (a, b), (c, d) in itertools.combinations(self.pairs, 2):
            if a < c < b < d or c < a < d < b:
                raise ValueError(f"pairs ({a},{b}) and ({c},{d}) cross")

    def __eq__(self: PlanarMatching, other: object) -> bool:
        """Compare pairs and side."""
        if not isinstance(other, PlanarMatching):
            return NotImplemented
        return self.pairs == other.pairs and self.side is other.side

    def __hash__(self: PlanarMatching) -> int:
        """Hash pairs and side."""
        return hash((self.pairs, self.side))

    def __repr__(self: PlanarMatching) -> str:
        """Return a compact representation."""
        return f"PlanarMatching({self.pairs}, {self.side.value})"

    def __lt__(self: PlanarMatching, other: PlanarMatching) -> bool:
        """Order matchings by their pairs."""
        return self.pairs < other.pairs

    @property
    def n(self: PlanarMatching) -> int:
        """Return the number of arcs."""
        return len(self.pairs)

    def partner(self: PlanarMatching, point: int) -> int:
        """Return the point matched with ``point``."""
        return self._partner[point]

    def arc_of(self: PlanarMatching, point: int) -> Pair:
        """Return the arc containing ``point``."""
        other = self._partner[point]
        return (point, other) if point < other else (other, point)

    def with_side(self: PlanarMatching, side: Side) -> PlanarMatching:
        """Return the same pairs on another side."""
        return self if side is self.side else PlanarMatching(self.pairs, side)

    @cached_property
    def parents(self: PlanarMatching) -> dict[Pair, Pair | None]:
        """Return the innermost arc enclosing each arc."""
        result: dict[Pair, Pair | None] = {}
        for a, b in self.pairs:
            enclosing = [(c, d) for c, d in self.pairs if c < a and b < d]
            result[(a, b)] = max(enclosing, default=None)
        return result

    @cached_property
    def faces(self: PlanarMatching) -> dict[int, tuple[Pair, ...]]:
        """Return the arcs on each face boundary in cyclic order.

        Face 0 is the outer face; face ``k`` lies just inside the ``k``-th
        arc and lists that arc first.
        """
        result: dict[int, tuple[Pair, ...]] = {0: tuple(a for a in self.pairs if self.parents[a] is None)}
        for k, arc in enumerate(self.pairs, start=1):
            children = tuple(a for a in self.pairs if self.parents[a] == arc)
            result[k] = (arc, *children)
        return result

    def face_of(self: PlanarMatching, first: Pair, second: Pair) -> int | None:
        """Return the face bounded by both arcs, if any."""
        for face, members in self.faces.items():
            if first in members and second in members:
                return face
        return None

    def bridge_classes(self: PlanarMatching) -> list[BridgeClass]:
        """Return every bridge class, grouped by face."""
        classes = []
        for face, members in self.faces.items():
            for first, second in itertools.combinations(members, 2):
                classes.append(BridgeClass(self.side, tuple(sorted((first, second))), face))
        return classes

    def class_between(self: PlanarMatching, first: Pair, second: Pair) -> BridgeClass:
        """Return the bridge class joining two arcs.

        Raises:
            ValueError: If the arcs share no face.
        """
        face = self.face_of(first, second)
        if face is None or first == second:
            raise ValueError(f"arcs {first} and {second} share no face of {self}")
        return BridgeClass(self.side, tuple(sorted((first, second))), face)

    def surger(self: PlanarMatching, gamma: BridgeClass) -> tuple[PlanarMatching, BridgeClass]:
        """Surger along a bridge class.

        Returns:
            The new matching and the co-core class in it.
        """
        (a, b), (c, d) = gamma.arcs
        if b < c:
            new_arcs = ((a, d), (b, c))
        else:
            new_arcs = ((a, c), (d, b))
        pairs = [p for p in self.pairs if p not in gamma.arcs] + list(new_arcs)
        result = PlanarMatching(pairs, self.side)
        return result, result.class_between(*new_arcs)

    def crossing_classes(self: PlanarMatching, cocore: BridgeClass) -> list[BridgeClass]:
        """Return the classes that cannot avoid the co-core ``cocore``.

        These are the bridges in the co-core's face whose two arcs lie on
        opposite sides of the co-core chord.
        """
        members = self.faces[cocore.face]
        i, j = sorted(members.index(a) for a in cocore.arcs)
        inside = set(members[i + 1 : j])
        result = []
        for cls in self.bridge_classes():
            if cls.face != cocore.face or set(cls.arcs) & set(cocore.arcs):
                continue
            if (cls.arcs[0] in inside) != (cls.arcs[1] in inside):
                result.append(cls)
        return result

    def arc_side(self: PlanarMatching, arc: Pair, face: int) -> str:
        """Return ``inner`` if ``arc`` bounds ``face`` from outside, else ``outer``."""
        return "inner" if face and self.pairs[face - 1] == arc else "outer"


def enumerate_matchings(n: int, side: Side | str) -> list[PlanarMatching]:
    """Return all noncrossing perfect matchings of ``1..2n``.

    The order pairs point 1 with its nearest possible partner first.
    """

    def build(points: tuple[int, ...]) -> list[list[Pair]]:
        if not points:
            return [[]]
        first = points[0]
        result = []
        for k in range(1, len(points), 2):
            for inner in build(points[1:k]):
                for outer in build(points[k + 1 :]):
                    result.append([(first, points[k]), *inner, *outer])
        return result

    return [PlanarMatching(pairs, Side(side)) for pairs in build(tuple(range(1, 2 * n + 1)))]


def bridge_classes(m: PlanarMatching, side: Side | str | None = None) -> list[BridgeClass]:
    """Return the bridge classes of a matching, optionally relabelled to ``side``."""
    if side is not None:
        m = m.with_side(Side(side))
    return m.bridge_classes()


def surger_matching(m: PlanarMatching, gamma: BridgeClass) -> tuple[PlanarMatching, BridgeClass]:
    """Surger a matching along a bridge class and return it with the co-core."""
    return m.surger(gamma)


class Resolution(NamedTuple):
    """A 0/1 choice at each crossing, aligned with the diagram's crossing order."""

    bits: tuple[int, ...]

    @property
    def h(self: Resolution) -> int:
        """Return the number of 1-resolved crossings."""
        return sum(self.bits)

    def flip(self: Resolution, index: int) -> Resolution:
        """Return the resolution with one crossing changed."""
        bits = list(self.bits)
        bits[index] ^= 1
        return Resolution(tuple(bits))

    def label(self: Resolution) -> str:
        """Return the bit string."""
        return "".join(str(b) for b in self.bits)


class Circle(NamedTuple):
    """A circle of a resolved half-diagram closed off by a matching."""

    kind: str
    points: frozenset[int]
    arcs: frozenset[int]
    marked: bool

    @property
    def free(self: Circle) -> bool:
        """Return whether the circle misses the axis."""
        return self.kind == "free"


class BridgeSite(NamedTuple):
    """The resolution bridge left at a crossing.

    Attributes:
        crossing: Index of the crossing.
        active: Whether re-smoothing raises the resolution (bit is 0).
        same_component: Whether both feet lie on one tangle-side component.
        feet: Indices of the circles carrying the two feet.
        components: Indices of the tangle-side components carrying the feet.
    """

    crossing: int
    active: bool
    same_component: bool
    feet: tuple[int, int]
    components: tuple[int, int]


class Component(NamedTuple):
    """A component of a resolved tangle: an arc chain between axis points or a loop."""

    arcs: frozenset[int]
    ends: Pair | None


class CircleSet:
    """The circles of a resolution of a tangle closed by a planar matching.

    Args:
        diagram: The tangle.
        resolution: The resolution of its crossings.
        matching: A planar matching on the opposite side.
    """

    def __init__(
        self: CircleSet, diagram: TangleDiagram, resolution: Resolution, matching: PlanarMatching
    ) -> None:
        """Initialize a CircleSet by tracing the resolved diagram."""
        self.diagram = diagram
        self.resolution = resolution
        self.matching = matching
        self.components = diagram.components(resolution)
        self.tangle_matching = PlanarMatching(
            [c.ends for c in self.components if c.ends is not None], diagram.side
        )
        by_point = {}
        for comp in self.components:
            if comp.ends is not None:
                by_point[comp.ends[0]] = comp
                by_point[comp.ends[1]] = comp
        marked_point = 2 * diagram.n
        cleaved = []
        seen: set[int] = set()
        for start in range(1, 2 * diagram.n + 1):
            if start in seen:
                continue
            points: set[int] = set()
            arcs: set[int] = set()
            point = start
            while point not in points:
                comp = by_point[point]
                points.update(comp.ends)
                arcs |= comp.arcs
                other = comp.ends[1] if comp.ends[0] == point else comp.ends[0]
                point = matching.partner(other)
            seen |= points
            cleaved.append(Circle("cleaved", frozenset(points), frozenset(arcs), marked_point in points))
        free = sorted(
            (Circle("free", frozenset(), c.arcs, False) for c in self.components if c.ends is None),
            key=lambda c: min(c.arcs),
        )
        self.circles: tuple[Circle, ...] = tuple(cleaved) + tuple(free)
        self._index = {circle: i for i, circle in enumerate(self.circles)}
        self._arc_circle = {arc: i for i, c in enumerate(self.circles) for arc in c.arcs}

    def __len__(self: CircleSet) -> int:
        """Return the number of circles."""
        return len(self.circles)

    def index(self: CircleSet, circle: Circle) -> int:
        """Return the position of a circle."""
        return self._index[circle]

    def circle_of_arc(self: CircleSet, arc: int) -> int:
        """Return the index of the circle through a tangle arc."""
        return self._arc_circle[arc]

    def circle_of_point(self: CircleSet, point: int) -> int:
        """Return the index of the cleaved circle through an axis point."""
        return next(i for i, c in enumerate(self.circles) if point in c.points)

    @property
    def marked(self: CircleSet) -> int:
        """Return the index of the marked circle."""
        return next(i for i, c in enumerate(self.circles) if c.marked)

    def weight(self: CircleSet, index: int) -> Polynomial:
        """Return the sum of the arc weights along a circle."""
        return self.diagram.weight_of(self.circles[index].arcs)

    def decorations(self: CircleSet) -> list[tuple[str, ...]]:
        """Return every decoration with the marked circle ``-``."""
        options = [(MINUS,) if c.marked else (PLUS, MINUS) for c in self.circles]
        return list(itertools.product(*options))

    @cached_property
    def sites(self: CircleSet) -> tuple[BridgeSite, ...]:
        """Return the resolution bridge site of every crossing."""
        comp_of_arc = {arc: i for i, comp in enumerate(self.components) for arc in comp.arcs}
        result = []
        for index in range(len(self.diagram.crossings)):
            local = self.diagram.local_map(index, self.resolution.bits[index])
            other_port = next(p for p in range(4) if p not in (0, local[0]))
            arc_a = self.diagram.port_arc[(index, 0)]
            arc_b = self.diagram.port_arc[(index, other_port)]
            comp_a, comp_b = comp_of_arc[arc_a], comp_of_arc[arc_b]
            result.append(
                BridgeSite(
                    crossing=index,
                    active=self.resolution.bits[index] == 0,
                    same_component=comp_a == comp_b,
                    feet=(self._arc_circle[arc_a], self._arc_circle[arc_b]),
                    components=(comp_a, comp_b),
                )
            )
        return tuple(result)


class SurgeryOutcome(NamedTuple):
    """The effect of surgery along a resolution bridge site.

    Attributes:
        kind: One of ``free-merge``, ``free-divide``, ``free-into-cleaved``,
            ``split-off-free``, ``cleaved-divide`` and ``cleaved-merge``.
        before: Indices of the touched circles before surgery.
        after: Indices of the new circles after surgery.
        circles: The circle set after surgery.
        effect: ``preserves-boundary``, ``flips-decoration-capable`` or
            ``changes-matching``.
        induced: The boundary bridge class when the matching changes.
    """

    kind: str
    before: tuple[int, ...]
    after: tuple[int, ...]
    circles: CircleSet
    effect: str
    induced: BridgeClass | None


def _outcome_kind(cs: CircleSet, site: BridgeSite) -> tuple[str, str]:
    first, second = (cs.circles[i] for i in site.feet)
    if first.free and second.free:
        return ("free-divide" if site.feet[0] == site.feet[1] else "free-merge"), "preserves-boundary"
    if first.free or second.free:
        return "free-into-cleaved", "flips-decoration-capable"
    if site.same_component:
        return "split-off-free", "flips-decoration-capable"
    if site.feet[0] == site.feet[1]:
        return "cleaved-divide", "changes-matching"
    return "cleaved-merge", "changes-matching"


def surger_circles(cs: CircleSet, site: BridgeSite, *, reverse: bool = False) -> SurgeryOutcome:
    """Surger a resolved diagram along the bridge site of one crossing.

    Args:
        cs: The circles before surgery.
        site: The site, taken from ``cs.sites``.
        reverse: Allow surgery along an inactive site (1 to 0 re-smoothing).

    Returns:
        The classified outcome.

    Raises:
        InactiveBridge: If the site does not match the requested direction.
    """
    if site.active == reverse:
        state = "inactive" if reverse is False else "active"
        raise exceptions.InactiveBridge(f"crossing {site.crossing} is {state} in {cs.resolution.label()}")
    kind, effect = _outcome_kind(cs, site)
    after = cs.diagram.resolve(cs.resolution.flip(site.crossing), cs.matching)
    before_idx = tuple(i for i, c in enumerate(cs.circles) if c not in after._index)
    after_idx = tuple(i for i, c in enumerate(after.circles) if c not in cs._index)
    induced = None
    if effect == "changes-matching":
        comp_a, comp_b = (cs.components[i] for i in site.components)
        induced = cs.tangle_matching.class_between(
            cs.tangle_matching.arc_of(comp_a.ends[0]), cs.tangle_matching.arc_of(comp_b.ends[0])
        )
    return SurgeryOutcome(kind, before_idx, after_idx, after, effect, induced)


def frobenius_components(
    before: tuple[Circle, ...], signs: tuple[str, ...], after: tuple[Circle, ...]
) -> list[tuple[str, ...]]:
    """Apply the Khovanov merge and divide rules across a surgery.

    Circles present on both sides keep their sign. Components giving the
    marked circle ``+`` are dropped.

    Args:
        before: Circles before surgery.
        signs: Their decorations.
        after: Circles after surgery.

    Returns:
        The decorations of ``after`` reached with coefficient 1.
    """
    old = dict(zip(before, signs, strict=True))
    after_set = set(after)
    removed = [c for c in before if c not in after_set]
    added = [c for c in after if c not in old]
    options: list[dict[Circle, str]]
    if len(removed) == 2 and len(added) == 1:
        first, second = (old[c] for c in removed)
        if first == MINUS and second == MINUS:
            return []
        options = [{added[0]: PLUS if first == second == PLUS else MINUS}]
    elif len(removed) == 1 and len(added) == 2:
        if old[removed[0]] == PLUS:
            options = [{added[0]: PLUS, added[1]: MINUS}, {added[0]: MINUS, added[1]: PLUS}]
        else:
            options = [{added[0]: MINUS, added[1]: MINUS}]
    else:
        raise ValueError(f"surgery touched {len(removed)} and produced {len(added)} circles")
    result = []
    for option in options:
        new = tuple(old[c] if c in old else option[c] for c in after)
        if all(sign == MINUS for c, sign in zip(after, new, strict=True) if c.marked):
            result.append(new)
    return result


class Grading(NamedTuple):
    """Homological, quantum and collapsed gradings, stored as integers.

    Attributes:
        h: Homological grading.
        q2: Twice the quantum grading.
        zeta4: Four times the collapsed grading ``h - q/2``.
    """

    h: int
    q2: int
    zeta4: int

    @property
    def q(self: Grading) -> Fraction:
        """Return the quantum grading."""
        return Fraction(self.q2, 2)

    @property
    def zeta(self: Grading) -> Fraction:
        """Return the collapsed grading."""
        return Fraction(self.zeta4, 4)


def cleaved_index(circles: tuple[Circle, ...], signs: tuple[str, ...]) -> int:
    """Return ``#(+ cleaved) - #(- unmarked cleaved)``."""
    total = 0
    for circle, sign in zip(circles, signs, strict=True):
        if circle.free or circle.marked:
            continue
        total += 1 if sign == PLUS else -1
    return total


def state_grading(cs: CircleSet, signs: tuple[str, ...]) -> Grading:
    """Return the gradings of a decorated resolution of one tangle."""
    diagram = cs.diagram
    h_rho = cs.resolution.h
    index = cleaved_index(cs.circles, signs)
    free_balance = sum(
        (1 if sign == PLUS else -1) for c, sign in zip(cs.circles, signs, strict=True) if c.free
    )
    h = h_rho - diagram.n_minus
    q2 = 2 * h_rho + index + 2 * free_balance + 2 * diagram.n_plus - 4 * diagram.n_minus
    return Grading(h, q2, 4 * h - q2)


class TangleDiagram:
    """A tangle diagram on one side of the axis, presented as a Morse word.

    Strands start at the ``2n`` axis points and sweep away from the axis.
    Arcs are the maximal strand segments between crossings and axis points,
    numbered in discovery order.

    Args:
        side: Side of the axis.
        n: Half the number of axis points.
        events: The Morse word.
        crossing_info: Map from crossing id to ``(sign, over)`` with sign
            ``+1`` or ``-1`` and over ``pos`` or ``neg``; undeclared crossings
            are positive with over ``pos``.
        arc_names: Optional map from 1-based arc number to variable name.
        weights: Optional arc weights replacing the arc variables.
        registry: Optional variable registry to reuse.

    Raises:
        NonPlanarEvent: If an event refers to a missing strand or the word
            does not end with zero strands.
        ClosedFreeComponent: If a closed component has no crossing.
    """

    def __init__(
        self: TangleDiagram,
        side: Side | str,
        n: int,
        events: list[MorseEvent],
        crossing_info: dict[str, tuple[int, str]] | None = None,
        arc_names: dict[int, str] | None = None,
        weights: tuple[Polynomial, ...] | None = None,
        registry: VariableRegistry | None = None,
    ) -> None:
        """Initialize a TangleDiagram and trace its arcs."""
        self.side = Side(side)
        self.n = n
        self.events = tuple(events)
        self.crossings: list[Crossing] = []
        self._trace(crossing_info or {})
        if registry is None:
            names = arc_names or {}
            registry = VariableRegistry(names.get(k + 1, f"x{k + 1}") for k in range(len(self.arc_ends)))
        self.registry = registry
        self.arc_names = tuple(registry.names[: len(self.arc_ends)])
        self.weights = weights or tuple(Polynomial.variable(k) for k in range(len(self.arc_ends)))
        self._resolve_cache: dict[tuple[Resolution, PlanarMatching], CircleSet] = {}
        self._component_cache: dict[Resolution, list[Component]] = {}
        logger.debug(
            "Traced %s tangle: n=%d, %d crossings, %d arcs",
            self.side.value,
            n,
            len(self.crossings),
            len(self.arc_ends),
        )

    def _trace(self: TangleDiagram, crossing_info: dict[str, tuple[int, str]]) -> None:
        parent: list[int] = []
        ends: list[list[tuple]] = []

        def new_piece(piece_ends: list[tuple]) -> int:
            parent.append(len(parent))
            ends.append(piece_ends)
            return parent[-1]

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        strands = [new_piece([("p", k)]) for k in range(1, 2 * self.n + 1)]
        seen_ids: set[str] = set()
        for step, event in enumerate(self.events):
            count = len(strands)
            if event.kind == "cup":
                if not 1 <= event.position <= count + 1:
                    raise exceptions.NonPlanarEvent(f"event {step}: cup({event.position}) with {count} strands")
                piece = new_piece([])
                strands[event.position - 1 : event.position - 1] = [piece, piece]
            elif event.kind == "cap":
                if not 1 <= event.position < count:
                    raise exceptions.NonPlanarEvent(f"event {step}: cap({event.position}) with {count} strands")
                first, second = (find(p) for p in strands[event.position - 1 : event.position + 1])
                del strands[event.position - 1 : event.position + 1]
                if first == second:
                    if not ends[first]:
                        raise exceptions.ClosedFreeComponent(f"event {step}: closes a component with no crossing")
                    raise exceptions.NonPlanarEvent(f"event {step}: closes an arc onto itself")
                parent[second] = first
                ends[first].extend(ends[second])
            elif event.kind == "cross":
                if not 1 <= event.position < count:
                    raise exceptions.NonPlanarEvent(f"event {step}: cross({event.position}) with {count} strands")
                if event.crossing in seen_ids:
                    raise exceptions.NonPlanarEvent(f"event {step}: crossing '{event.crossing}' repeated")
                seen_ids.add(event.crossing)
                index = len(self.crossings)
                sign, over = crossing_info.get(event.crossing, (1, "pos"))
                self.crossings.append(Crossing(event.crossing, sign, over))
                low, high = strands[event.position - 1], strands[event.position]
                ends[find(low)].append(("c", index, 0))
                ends[find(high)].append(("c", index, 1))
                strands[event.position - 1] = new_piece([("c", index, 2)])
                strands[event.position] = new_piece([("c", index, 3)])
            else:
                raise exceptions.NonPlanarEvent(f"event {step}: unknown kind '{event.kind}'")
        if strands:
            raise exceptions.NonPlanarEvent(f"Morse word ends with {len(strands)} strands")
        roots = sorted({find(p) for p in range(len(parent))})
        self.arc_ends: list[tuple[tuple, tuple]] = []
        for root in roots:
            if len(ends[root]) != 2:
                raise exceptions.NonPlanarEvent(f"segment with {len(ends[root])} endpoints")
            self.arc_ends.append((ends[root][0], ends[root][1]))
        self.port_arc: dict[tuple[int, int], int] = {}
        self.axis_arc: dict[int, int] = {}
        for arc, pair in enumerate(self.arc_ends):
            for end in pair:
                if end[0] == "p":
                    self.axis_arc[end[1]] = arc
                else:
                    self.port_arc[(end[1], end[2])] = arc

    @property
    def n_plus(self: TangleDiagram) -> int:
        """Return the number of positive crossings."""
        return sum(1 for c in self.crossings if c.sign > 0)

    @property
    def n_minus(self: TangleDiagram) -> int:
        """Return the number of negative crossings."""
        return sum(1 for c in self.crossings if c.sign < 0)

    def local_map(self: TangleDiagram, index: int, bit: int) -> tuple[int, ...]:
        """Return the port pairing of a smoothed crossing."""
        identity = (bit == 0) == (self.crossings[index].over == "pos")
        return _IDENTITY if identity else _CAP_CUP

    def weight_of(self: TangleDiagram, arcs: frozenset[int]) -> Polynomial:
        """Return the sum of the weights of some arcs."""
        return Polynomial.sum_of(self.weights[a] for a in arcs)

    def resolutions(self: TangleDiagram) -> list[Resolution]:
        """Return every resolution in lexicographic order."""
        return [Resolution(bits) for bits in itertools.product((0, 1), repeat=len(self.crossings))]

    def components(self: TangleDiagram, resolution: Resolution) -> list[Component]:
        """Return the components of the resolved tangle.

        Chains between axis points come first, ordered by their lower end;
        loops follow, ordered by their smallest arc.
        """
        cached = self._component_cache.get(resolution)
        if cached is not None:
            return cached

        def step(arc: int, entry: tuple) -> tuple[int | None, tuple]:
            first, second = self.arc_ends[arc]
            exit_end = second if first == entry else first
            if exit_end[0] == "p":
                return None, exit_end
            _, index, port = exit_end
            next_port = self.local_map(index, resolution.bits[index])[port]
            return self.port_arc[(index, next_port)], ("c", index, next_port)

        result = []
        visited: set[int] = set()
        for point in range(1, 2 * self.n + 1):
            arc = self.axis_arc[point]
            if arc in visited:
                continue
            arcs = set()
            entry: tuple = ("p", point)
            while arc is not None:
                arcs.add(arc)
                arc, entry = step(arc, entry)
            visited |= arcs
            result.append(Component(frozenset(arcs), (point, entry[1])))
        for start in range(len(self.arc_ends)):
            if start in visited:
                continue
            arcs = set()
            arc, entry = start, self.arc_ends[start][0]
            while arc not in arcs:
                arcs.add(arc)
                arc, entry = step(arc, entry)
            visited |= arcs
            result.append(Component(frozenset(arcs), None))
        self._component_cache[resolution] = result
        return result

    def resolve(self: TangleDiagram, resolution: Resolution, matching: PlanarMatching) -> CircleSet:
        """Return the circles of a resolution closed by an opposite matching."""
        key = (resolution, matching)
        cached = self._resolve_cache.get(key)
        if cached is None:
            cached = CircleSet(self, resolution, matching)
            self._resolve_cache[key] = cached
        return cached

    def with_weights(self: TangleDiagram, shifts: dict[int, Polynomial]) -> TangleDiagram:
        """Return the same diagram with some arc weights shifted."""
        weights = tuple(w + shifts[a] if a in shifts else w for a, w in enumerate(self.weights))
        return self._copy(self.side, weights)

    def mirror(self: TangleDiagram) -> TangleDiagram:
        """Return the diagram placed on the other side of the axis."""
        return self._copy(self.side.opposite(), self.weights)

    def _copy(self: TangleDiagram, side: Side, weights: tuple[Polynomial, ...]) -> TangleDiagram:
        info = {c.id: (c.sign, c.over) for c in self.crossings}
        return TangleDiagram(side, self.n, list(self.events), info, weights=weights, registry=self.registry)

    def to_document(self: TangleDiagram) -> dict[str, Any]:
        """Return the JSON document of the diagram."""
        info = {c.id: c for c in self.crossings}
        events = []
        for event in self.events:
            if event.kind == "cross":
                crossing = info[event.crossing]
                events.append(
                    {
                        "cross": event.position,
                        "id": crossing.id,
                        "sign": "+" if crossing.sign > 0 else "-",
                        "over": crossing.over,
                    }
                )
            else:
                events.append({event.kind: event.position})
        arcs = {str(k + 1): name for k, name in enumerate(self.arc_names)}
        return {"side": self.side.value, "n": self.n, "events": events, "arcs": arcs}


def parse(document: str | dict[str, Any]) -> TangleDiagram:
    """Parse a diagram document.

    Args:
        document: JSON text or an already decoded mapping.

    Returns:
        The validated diagram with its arc variables registered.

    Raises:
        SchemaError: If the document does not validate.
        NonPlanarEvent: If the Morse word is not position valid.
        ClosedFreeComponent: If a closed component has no crossing.
    """
    adaptor = TypeAdapter(Diagram)
    try:
        data = json.loads(document) if isinstance(document, str) else document
        doc = adaptor.validate_python(data)
    except (ValidationError, ValueError) as error:
        raise exceptions.SchemaError(error) from error
    events = []
    info = {}
    for event in doc.events:
        if event.cup is not None:
            events.append(MorseEvent("cup", event.cup))
        elif event.cap is not None:
            events.append(MorseEvent("cap", event.cap))
        else:
            events.append(MorseEvent("cross", event.cross, event.crossing_id))
            info[event.crossing_id] = (1 if event.sign == "+" else -1, event.over)
    names = None if doc.arcs == "auto" else dict(doc.arcs)
    diagram = TangleDiagram(doc.side, doc.n, events, info, names)
    if names is not None and sorted(names) != list(range(1, len(diagram.arc_ends) + 1)):
        raise exceptions.SchemaError(f"arc names must cover arcs 1..{len(diagram.arc_ends)}")
    return diagram


def resolve(diagram: TangleDiagram, resolution: Resolution, matching: PlanarMatching) -> CircleSet:
    """Return the circles of ``diagram`` resolved by ``resolution`` and closed by ``matching``."""
    return diagram.resolve(resolution, matching)


def canonical_json(diagram: TangleDiagram) -> str:
    """Return stable JSON text for a diagram."""
    return json.dumps(diagram.to_document(), sort_keys=True, separators=(",", ":"))
