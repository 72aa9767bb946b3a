# ruff: noqa: TRY003, EM102
"""Pairing module.

The box tensor product of a type A and a type D structure, the totally
twisted Khovanov complex of the glued diagram used as an oracle, the
canonical identification of their generators, and homology ranks.

This module provides the following classes:

- ChainComplex
- GlobalState
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from fractions import Fraction
from typing import TYPE_CHECKING, Any, NamedTuple

from twistkh import exceptions
from twistkh.diagram import MINUS, PLUS, Circle, Resolution, Side, TangleDiagram, frobenius_components
from twistkh.field import Polynomial, RationalFunction, RankMode, Substitution, VariableRegistry, rank
from twistkh.schemas.complex import ComplexDump, DifferentialEntry, GeneratorRecord
from twistkh.schemas.report import VerificationReport
from twistkh.type_a import TypeAStructure
from twistkh.type_d import TypeDStructure, flip, transport

if TYPE_CHECKING:
    from twistkh.type_a import AState
    from twistkh.type_d import DState

logger = logging.getLogger(__name__)

Row = dict[int, RationalFunction]


def _accumulate(row: Row, column: int, coeff: RationalFunction) -> None:
    total = row[column] + coeff if column in row else coeff
    if total:
        row[column] = total
    else:
        row.pop(column, None)


class ChainComplex:
    """A collapsed-graded chain complex over the rational function field.

    Args:
        labels: Printable generator labels.
        zeta4: Collapsed gradings in quarter units.
        differential: Map from generator id to its image by target id.
        registry: The variables of the coefficients.
        generators: The objects behind the generators, if any.
        glued: The glued diagram of an oracle complex.
    """

    def __init__(
        self: ChainComplex,
        labels: list[str],
        zeta4: list[int],
        differential: dict[int, Row],
        registry: VariableRegistry,
        generators: list[Any] | None = None,
        glued: _GluedDiagram | None = None,
    ) -> None:
        """Initialize a ChainComplex."""
        self.labels = labels
        self.zeta4 = zeta4
        self.differential = differential
        self.registry = registry
        self.generators = generators or []
        self.glued = glued

    def __len__(self: ChainComplex) -> int:
        """Return the number of generators."""
        return len(self.labels)

    def index(self: ChainComplex, label: str) -> int:
        """Return the id of the generator with a label."""
        return self.labels.index(label)

    def image(self: ChainComplex, source: int) -> Row:
        """Return the differential of one generator."""
        return self.differential.get(source, {})

    def check_square_zero(self: ChainComplex) -> VerificationReport:
        """Check that the differential squares to zero and raises the grading by one."""
        report = VerificationReport(name="chain complex")
        for source in range(len(self)):
            square: Row = {}
            for middle, a in self.image(source).items():
                ok = self.zeta4[middle] == self.zeta4[source] + 4
                report.tick(ok, self.labels[source], self.labels[middle], "" if ok else "grading shift")
                for target, b in self.image(middle).items():
                    _accumulate(square, target, a * b)
            for target, coeff in sorted(square.items()):
                report.tick(False, self.labels[source], self.labels[target], coeff.to_text(self.registry))
            if not square:
                report.tick(True, self.labels[source], "d*d")
        return report

    def homology_ranks(self: ChainComplex, mode: RankMode = "exact", seed: int = 0, retries: int = 8) -> dict[Fraction, int]:
        """Return the nonzero homology ranks by collapsed grading."""
        return homology_ranks(self, mode, seed, retries)

    def to_report(self: ChainComplex, homology: dict[Fraction, int] | None = None) -> ComplexDump:
        """Return the JSON document of the complex."""
        return ComplexDump(
            variables=list(self.registry.names),
            generators=[
                GeneratorRecord(id=i, label=label, zeta=str(Fraction(z, 4)))
                for i, (label, z) in enumerate(zip(self.labels, self.zeta4, strict=True))
            ],
            differential=[
                DifferentialEntry(source=i, target=j, coeff=coeff.to_text(self.registry))
                for i in range(len(self))
                for j, coeff in sorted(self.image(i).items())
            ],
            homology={str(z): r for z, r in sorted((homology or {}).items())},
        )


def _merge_registries(left: VariableRegistry, right: VariableRegistry) -> tuple[VariableRegistry, Any]:
    merged, shift = left.merge(right)
    logger.debug("Merged %d left and %d right variables", len(left), len(right))
    return merged, shift


def box_tensor(a_structure: TypeAStructure, d_structure: TypeDStructure) -> ChainComplex:
    """Pair a type A and a type D structure.

    The right variables are appended after the left ones. The generators are
    the pairs ``x (x) y`` with equal boundaries and

    ``d(x (x) y) = m1(x) (x) y + sum m2(x, a) (x) y'`` over the terms
    ``a (x) y'`` of ``delta(y)``.

    Raises:
        BoundaryMismatch: If the structures have different numbers of axis points.
        VariableCollision: If the two sides share a variable name.
    """
    if a_structure.algebra.n != d_structure.n:
        raise exceptions.BoundaryMismatch(f"cannot pair n={a_structure.algebra.n} with n={d_structure.n}")
    merged, shift = _merge_registries(a_structure.registry, d_structure.registry)
    left = a_structure.with_substitution(Substitution.identity(), merged)
    right = transport(d_structure, shift, merged)
    by_boundary: dict[Any, list[DState]] = defaultdict(list)
    for y in right.states:
        by_boundary[y.boundary].append(y)
    pairs: list[tuple[AState, DState]] = [(x, y) for x in left.states for y in by_boundary.get(x.boundary, [])]
    ids = {pair: i for i, pair in enumerate(pairs)}
    differential: dict[int, Row] = {}
    for i, (x, y) in enumerate(pairs):
        row: Row = {}
        for x1, coeff in left.differential(x).items():
            _accumulate(row, ids[(x1, y)], coeff)
        for y1, element in right.image(y).items():
            for x1, coeff in left.act_word(x, element).items():
                _accumulate(row, ids[(x1, y1)], coeff)
        if row:
            differential[i] = row
    labels = [f"{x.label()}#{y.label()}" for x, y in pairs]
    zeta4 = [x.zeta4 + y.zeta4 for x, y in pairs]
    logger.info("Box tensor: %d generators", len(pairs))
    return ChainComplex(labels, zeta4, differential, merged, list(pairs))


class GlobalState(NamedTuple):
    """A decorated resolution of a whole diagram glued from two tangles."""

    bits: tuple[int, ...]
    signs: tuple[str, ...]


class _GluedDiagram:
    """Resolutions of a left and a right tangle glued along the axis."""

    def __init__(self: _GluedDiagram, left: TangleDiagram, right: TangleDiagram) -> None:
        self.left = left
        self.right = right
        self.offset = len(left.arc_ends)
        self.registry, shift = _merge_registries(left.registry, right.registry)
        self.weights = tuple(left.weights) + tuple(w.substitute(shift.assignment) for w in right.weights)
        self.split_at = len(left.crossings)
        self.size = len(left.crossings) + len(right.crossings)
        self.n_plus = left.n_plus + right.n_plus
        self._circles: dict[tuple[int, ...], tuple[Circle, ...]] = {}

    def circles(self: _GluedDiagram, bits: tuple[int, ...]) -> tuple[Circle, ...]:
        """Return the circles of a global resolution.

        Circles through the axis come first, ordered by their lowest point;
        circles missing the axis follow, ordered by their smallest arc.
        """
        cached = self._circles.get(bits)
        if cached is not None:
            return cached
        top = 2 * self.left.n
        parent = list(range(top + 1))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        chains = []
        loops = []
        halves = (
            (self.left.components(Resolution(bits[: self.split_at])), 0),
            (self.right.components(Resolution(bits[self.split_at :])), self.offset),
        )
        for comps, shift in halves:
            for comp in comps:
                arcs = frozenset(a + shift for a in comp.arcs)
                if comp.ends is None:
                    loops.append(Circle("free", frozenset(), arcs, False))
                else:
                    chains.append((comp.ends, arcs))
                    parent[find(comp.ends[0])] = find(comp.ends[1])
        points: dict[int, set[int]] = defaultdict(set)
        arcs_of: dict[int, set[int]] = defaultdict(set)
        for point in range(1, top + 1):
            points[find(point)].add(point)
        for (a, _), arcs in chains:
            arcs_of[find(a)] |= arcs
        through = sorted(
            (Circle("cleaved", frozenset(points[r]), frozenset(arcs_of[r]), top in points[r]) for r in points),
            key=lambda c: min(c.points),
        )
        loops.sort(key=lambda c: min(c.arcs))
        result = tuple(through) + tuple(loops)
        self._circles[bits] = result
        return result

    def weight(self: _GluedDiagram, circle: Circle) -> Polynomial:
        """Return the full weight of a circle."""
        return Polynomial.sum_of(self.weights[a] for a in circle.arcs)

    def zeta4(self: _GluedDiagram, bits: tuple[int, ...], signs: tuple[str, ...]) -> int:
        """Return the collapsed grading of a global state in quarter units."""
        circles = self.circles(bits)
        index = sum((1 if s == PLUS else -1) for c, s in zip(circles, signs, strict=True) if not c.marked)
        return 2 * sum(bits) - 2 * index - 2 * self.n_plus


def twisted_khovanov(left: TangleDiagram, right: TangleDiagram) -> ChainComplex:
    """Build the totally twisted reduced Khovanov complex of a glued diagram.

    Generators are global resolutions with decorations, the marked circle
    ``-``. The differential is the Khovanov differential over all crossings
    plus ``w_C * (C turned -)`` for every ``+`` unmarked circle, with the
    full weight of ``C``.

    Raises:
        SchemaError: If the tangles are not a left and a right one.
        BoundaryMismatch: If their numbers of axis points differ.
    """
    if left.side is not Side.LEFT or right.side is not Side.RIGHT:
        raise exceptions.SchemaError("the oracle needs a left and a right tangle")
    if left.n != right.n:
        raise exceptions.BoundaryMismatch(f"cannot glue n={left.n} to n={right.n}")
    glued = _GluedDiagram(left, right)
    states: list[GlobalState] = []
    for bits in itertools.product((0, 1), repeat=glued.size):
        circles = glued.circles(bits)
        options = [(MINUS,) if c.marked else (PLUS, MINUS) for c in circles]
        states.extend(GlobalState(bits, signs) for signs in itertools.product(*options))
    ids = {state: i for i, state in enumerate(states)}
    one = RationalFunction.one()
    differential: dict[int, Row] = {}
    for i, state in enumerate(states):
        row: Row = {}
        circles = glued.circles(state.bits)
        for crossing, bit in enumerate(state.bits):
            if bit:
                continue
            bits = (*state.bits[:crossing], 1, *state.bits[crossing + 1 :])
            for signs in frobenius_components(circles, state.signs, glued.circles(bits)):
                _accumulate(row, ids[GlobalState(bits, signs)], one)
        for k, circle in enumerate(circles):
            if circle.marked or state.signs[k] != PLUS:
                continue
            _accumulate(row, ids[GlobalState(state.bits, flip(state.signs, k))], RationalFunction(glued.weight(circle)))
        if row:
            differential[i] = row
    labels = [f"{''.join(map(str, s.bits))}|{''.join(s.signs)}" for s in states]
    zeta4 = [glued.zeta4(s.bits, s.signs) for s in states]
    logger.info("Twisted Khovanov complex: %d generators", len(states))
    return ChainComplex(labels, zeta4, differential, glued.registry, states, glued)


def global_identification(box: ChainComplex, oracle: ChainComplex) -> list[int]:
    """Return the oracle id of every box tensor generator.

    A pair ``x (x) y`` goes to the global state with resolution ``x``'s
    followed by ``y``'s; circles through the axis take the boundary's sign
    and free circles the sign they carry on their own side.

    Raises:
        BoundaryMismatch: If a pair has no global counterpart.
    """
    glued = oracle.glued
    ids = {state: i for i, state in enumerate(oracle.generators)}
    result = []
    for x, y in box.generators:
        bits = x.resolution.bits + y.resolution.bits
        signs = []
        for circle in glued.circles(bits):
            if not circle.free:
                signs.append(x.boundary.sign_of(circle.points))
                continue
            if min(circle.arcs) < glued.offset:
                owner, arcs = x, circle.arcs
            else:
                owner, arcs = y, frozenset(a - glued.offset for a in circle.arcs)
            k = next(k for k, c in enumerate(owner.circles.circles) if c.arcs == arcs)
            signs.append(owner.signs[k])
        state = GlobalState(bits, tuple(signs))
        if state not in ids:
            raise exceptions.BoundaryMismatch(f"no global state for {x.label()}#{y.label()}")
        result.append(ids[state])
    return result


def compare(first: ChainComplex, second: ChainComplex, identification: list[int]) -> bool:
    """Return whether a generator bijection carries one complex onto the other.

    Gradings must agree and the differential matrices must agree entrywise.
    """
    if len(first) != len(second) or sorted(identification) != list(range(len(second))):
        logger.debug("Identification is not a bijection")
        return False
    for i in range(len(first)):
        if first.zeta4[i] != second.zeta4[identification[i]]:
            logger.debug("Grading differs at %s", first.labels[i])
            return False
        mapped = {identification[j]: c for j, c in first.image(i).items()}
        expected = second.image(identification[i])
        if mapped.keys() != expected.keys() or any(mapped[j] != expected[j] for j in mapped):
            logger.debug("Differential differs at %s", first.labels[i])
            return False
    return True


def homology_ranks(
    complex_: ChainComplex, mode: RankMode = "exact", seed: int = 0, retries: int = 8
) -> dict[Fraction, int]:
    """Return the nonzero homology ranks by collapsed grading.

    The rank in each grading is the number of generators minus the ranks of
    the outgoing and incoming differentials.
    """
    by_degree: dict[int, list[int]] = defaultdict(list)
    for i, z in enumerate(complex_.zeta4):
        by_degree[z].append(i)
    outgoing: dict[int, int] = {}
    zero = RationalFunction.zero()
    for degree, rows in by_degree.items():
        columns = by_degree.get(degree + 4, [])
        matrix = [[complex_.image(i).get(j, zero) for j in columns] for i in rows]
        outgoing[degree] = rank(matrix, mode, seed, retries) if columns else 0
    result = {}
    for degree, rows in sorted(by_degree.items()):
        value = len(rows) - outgoing[degree] - outgoing.get(degree - 4, 0)
        if value:
            result[Fraction(degree, 4)] = value
    logger.debug("Homology ranks (%s): %s", mode, result)
    return result
