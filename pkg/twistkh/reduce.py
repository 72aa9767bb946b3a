# ruff: noqa: TRY003, EM102
"""Reduce module.

Cancellation of a pair of generators joined by an invertible idempotent
coefficient, iterated cancellation of the mutual pairs of free circles, the
closed form of the resulting structure, and the maps relating a structure
to its reduction.

This module provides the following classes:

- CancellationData
"""

from __future__ import annotations

import itertools
import logging
from typing import NamedTuple

from twistkh import exceptions
from twistkh.cleaved import AlgebraElement, CleavedAlgebra, Word, word_is_zero_or_generator
from twistkh.diagram import PLUS, Resolution, TangleDiagram
from twistkh.field import RationalFunction
from twistkh.schemas.report import VerificationReport
from twistkh.type_d import (
    DMorphism,
    DState,
    Table,
    TypeDStructure,
    add_term,
    build_delta,
    collect_blocks,
    compose,
    flip,
    morphisms_equal,
    report_blocks,
    verify_homotopy,
    verify_morphism,
)

logger = logging.getLogger(__name__)


class CancellationData(NamedTuple):
    """A structure, its reduction and the maps between them.

    Attributes:
        original: The structure before cancelling.
        reduced: The structure after cancelling.
        iota: Inclusion of the reduced structure.
        pi: Projection onto the reduced structure.
        homotopy: Map with ``I + iota * pi`` equal to its boundary.
        steps: Number of pairs cancelled.
    """

    original: TypeDStructure
    reduced: TypeDStructure
    iota: DMorphism
    pi: DMorphism
    homotopy: DMorphism
    steps: int = 1


def _short(algebra: CleavedAlgebra, element: AlgebraElement, source: DState, target: DState) -> AlgebraElement:
    """Rewrite a perturbation into generators.

    A perturbation between two states that both carry a free circle is kept
    as it is when it cannot be rewritten; both states are cancelled later.
    """
    if element.max_length() <= 1:
        return element
    short = word_is_zero_or_generator(algebra, element)
    if short is not None:
        return short
    if source.has_free_circle() and target.has_free_circle() and element.max_length() == 2:
        logger.debug("Keeping %s -> %s until both states are cancelled", source.label(), target.label())
        return element
    raise exceptions.NeedsWordReduction(
        f"perturbation {source.label()} -> {target.label()} is not a generator: {element.to_text()}"
    )


def pivot_of(structure: TypeDStructure, x1: DState, x2: DState) -> RationalFunction:
    """Return the unit ``u`` with ``delta(x1)`` containing ``u * I (x) x2``.

    Raises:
        NonInvertiblePivot: If the coefficient is not a nonzero multiple of
            the idempotent, or either state has a term to itself.
    """
    element = structure.coefficient(x1, x2)
    if len(element) != 1:
        raise exceptions.NonInvertiblePivot(f"coefficient {x1.label()} -> {x2.label()} is {element.to_text()}")
    word, unit = next(iter(element))
    if word.factors:
        raise exceptions.NonInvertiblePivot(f"coefficient {x1.label()} -> {x2.label()} is not idempotent")
    if structure.coefficient(x1, x1) or structure.coefficient(x2, x2):
        raise exceptions.NonInvertiblePivot(f"{x1.label()} or {x2.label()} maps to itself")
    return unit


def cancel(structure: TypeDStructure, x1: DState, x2: DState) -> CancellationData:
    """Cancel ``x1`` against ``x2``.

    With ``u`` the pivot and ``a_ij`` the coefficient of ``x_j`` in
    ``delta(x_i)``, the reduced structure has
    ``a_ij + a_i2 u^-1 a_1j``, the inclusion sends ``x_i`` to
    ``x_i + a_i2 u^-1 x1``, the projection sends ``x2`` to
    ``u^-1 sum a_1j x_j`` and the homotopy sends ``x2`` to ``u^-1 x1``.

    Raises:
        NonInvertiblePivot: If the pair cannot be cancelled.
        NeedsWordReduction: If a perturbation does not reduce to generators.
    """
    unit = pivot_of(structure, x1, x2)
    inverse = unit.inverse()
    algebra = structure.algebra
    rest = [s for s in structure.states if s not in (x1, x2)]
    incoming = {i: structure.coefficient(i, x2) for i in rest if structure.coefficient(i, x2)}
    outgoing = {j: a for j, a in structure.image(x1).items() if j not in (x1, x2)}
    delta: Table = {}
    for source in rest:
        for target, element in structure.image(source).items():
            if target not in (x1, x2):
                add_term(delta, source, target, element)
    for source, a_i2 in incoming.items():
        for target, a_1j in outgoing.items():
            add_term(delta, source, target, _short(algebra, a_i2 * a_1j, source, target).scale(inverse))
    reduced = TypeDStructure(structure.diagram, algebra, rest, delta, structure.registry)

    iota_table: Table = {}
    pi_table: Table = {}
    for state in rest:
        add_term(iota_table, state, state, AlgebraElement.of(Word.idempotent(state.boundary)))
        add_term(pi_table, state, state, AlgebraElement.of(Word.idempotent(state.boundary)))
    for source, a_i2 in incoming.items():
        add_term(iota_table, source, x1, a_i2.scale(inverse))
    for target, a_1j in outgoing.items():
        add_term(pi_table, x2, target, a_1j.scale(inverse))
    homotopy_table: Table = {}
    add_term(homotopy_table, x2, x1, AlgebraElement.of(Word.idempotent(x2.boundary), inverse))
    logger.debug(
        "Cancelled %s against %s: %d perturbations", x1.label(), x2.label(), len(incoming) * len(outgoing)
    )
    return CancellationData(
        original=structure,
        reduced=reduced,
        iota=DMorphism(reduced, structure, iota_table, 0, "iota"),
        pi=DMorphism(structure, reduced, pi_table, 0, "pi"),
        homotopy=DMorphism(structure, structure, homotopy_table, -4, "H"),
    )


def mutual_pairs(structure: TypeDStructure, *, reverse: bool = False) -> list[tuple[DState, DState]]:
    """Return the pairs differing only in the sign of the first free circle.

    The first state of each pair has that circle ``+``.
    """
    order = reversed(structure.states) if reverse else structure.states
    pairs = []
    for state in order:
        if not state.has_free_circle():
            continue
        k = len(state.boundary.circles)
        if state.signs[k] == PLUS:
            partner = structure.state(state.matching, state.resolution, flip(state.signs, k))
            pairs.append((state, partner))
    return pairs


def compose_cancellations(steps: list[CancellationData]) -> CancellationData:
    """Compose successive cancellations into one.

    The homotopy is ``H_1 + iota_1 H_2 pi_1 + iota_1 iota_2 H_3 pi_2 pi_1 + ...``.
    """
    first = steps[0]
    iota, pi, homotopy = first.iota, first.pi, first.homotopy
    for step in steps[1:]:
        homotopy = homotopy + compose(iota, compose(step.homotopy, pi))
        iota = compose(iota, step.iota)
        pi = compose(step.pi, pi)
    iota.name, pi.name, homotopy.name = "iota", "pi", "H"
    return CancellationData(first.original, steps[-1].reduced, iota, pi, homotopy, len(steps))


def reduce_free_circles(structure: TypeDStructure, *, reverse: bool = False) -> CancellationData:
    """Cancel every mutual pair, leaving the states without free circles.

    Args:
        structure: The structure to reduce.
        reverse: Process the pairs in reverse state order.

    Raises:
        NonInvertiblePivot: If a pivot stops being a unit times an idempotent.
        NeedsWordReduction: If a perturbation does not reduce to generators.
    """
    steps = []
    current = structure
    for x1, x2 in mutual_pairs(structure, reverse=reverse):
        data = cancel(current, x1, x2)
        steps.append(data)
        current = data.reduced
    if not steps:
        identity = DMorphism.identity(structure)
        return CancellationData(structure, structure, identity, identity, DMorphism(structure, structure, {}, -4, "H"), 0)
    logger.info("Reduced %d states to %d", len(structure), len(current))
    return compose_cancellations(steps)


def _loops(diagram: TangleDiagram, bits: tuple[int, ...]) -> list:
    return [comp for comp in diagram.components(Resolution(bits)) if comp.ends is None]


def closed_form(diagram: TangleDiagram, algebra: CleavedAlgebra | None = None) -> TypeDStructure:
    """Build the reduced structure on states without free circles directly.

    The terms of the full structure between such states are kept. In
    addition, for resolutions ``r`` and ``r'`` differing at two crossings
    that are both 0 in ``r``, each intermediate resolution carrying a free
    circle ``F`` contributes ``1/w_F`` to an idempotent term from ``(r, s)``
    to ``(r', s)``.
    """
    full = build_delta(diagram, algebra)
    keep = [s for s in full.states if not s.has_free_circle()]
    kept = set(keep)
    result = TypeDStructure(diagram, full.algebra, keep, registry=full.registry)
    for source, target, element in full.terms():
        if source in kept and target in kept:
            add_term(result.delta, source, target, element)
    for state in keep:
        bits = state.resolution.bits
        zeros = [c for c, b in enumerate(bits) if b == 0]
        for c1, c2 in itertools.combinations(zeros, 2):
            both = tuple(1 if c in (c1, c2) else b for c, b in enumerate(bits))
            if _loops(diagram, both):
                continue
            coeff = RationalFunction.zero()
            for c in (c1, c2):
                middle = tuple(1 if k == c else b for k, b in enumerate(bits))
                for loop in _loops(diagram, middle):
                    coeff = coeff + RationalFunction(diagram.weight_of(loop.arcs)).inverse()
            if not coeff:
                continue
            target = _target(result, state, both)
            if target is not None:
                add_term(result.delta, state, target, AlgebraElement.of(Word.idempotent(state.boundary), coeff))
    logger.debug("Closed form: %d states, %d terms", len(result), result.term_count())
    return result


def _target(structure: TypeDStructure, state: DState, bits: tuple[int, ...]) -> DState | None:
    try:
        target = structure.state(state.matching, Resolution(bits), state.signs)
    except KeyError:
        return None
    return target if target.boundary == state.boundary else None


def compare_structures(first: TypeDStructure, second: TypeDStructure) -> VerificationReport:
    """Check that two structures on the same states agree block by block."""
    report = VerificationReport(name="structures agree")
    if {s.key for s in first.states} != {s.key for s in second.states}:
        report.tick(False, "states", "states", f"{len(first)} against {len(second)} states")
        return report
    for source in first.states:
        blocks = collect_blocks(first.image(source), second.image(source))
        report_blocks(report, first.algebra, source, blocks, first.registry)
    return report


def verify_cancellation(data: CancellationData) -> VerificationReport:
    """Check the maps of a cancellation.

    Inclusion and projection satisfy the morphism equation, projection after
    inclusion is the identity, and inclusion after projection is homotopic to
    the identity through the stored homotopy.
    """
    report = verify_morphism(data.iota).merge(verify_morphism(data.pi))
    report = report.merge(morphisms_equal(compose(data.pi, data.iota), DMorphism.identity(data.reduced)))
    return report.merge(verify_homotopy(DMorphism.identity(data.original), compose(data.iota, data.pi), data.homotopy))
