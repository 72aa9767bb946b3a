# ruff: noqa: TRY003, EM102
"""Weightmoves module.

Moving a weight ``w`` across a crossing ``c`` changes the arc weights of a
right tangle but not its type D structure up to isomorphism. This module
builds the map ``Dc`` that re-smooths ``c`` from 1 to 0, the isomorphisms
``Psi = I + w Dc`` and ``Phi`` in the other direction, and the checks that
they are morphisms and mutually inverse.

This module provides the following classes:

- WeightMove
"""

from __future__ import annotations

__all__ = [
    "PORT_PAIRS",
    "WeightMove",
    "build_Dc",
    "build_Phi",
    "build_Psi",
    "check_move",
    "compose",
    "find_weight_move",
    "verify_inverse",
    "verify_morphism",
    "weight_moves_at",
]

import logging
from typing import NamedTuple

from twistkh import exceptions
from twistkh.cleaved import AlgebraElement, CleavedAlgebra
from twistkh.diagram import Side, TangleDiagram, frobenius_components, surger_circles
from twistkh.field import Polynomial, RationalFunction
from twistkh.schemas.report import VerificationReport
from twistkh.type_d import (
    DMorphism,
    Table,
    TypeDStructure,
    add_term,
    build_delta,
    compose,
    connecting_generator,
    morphisms_equal,
    verify_morphism,
)

logger = logging.getLogger(__name__)

# Ports of a crossing whose arcs exchange the moved weight.
PORT_PAIRS: tuple[tuple[int, int], ...] = ((0, 3), (1, 2))


class WeightMove(NamedTuple):
    """A weight moved across one crossing of a right tangle.

    Attributes:
        crossing: Index of the crossing.
        weight: The moved weight.
        source: The tangle before the move.
        target: The tangle after the move.
        ports: The two ports whose arcs exchange the weight.
    """

    crossing: int
    weight: Polynomial
    source: TangleDiagram
    target: TangleDiagram
    ports: tuple[int, int]

    def label(self: WeightMove) -> str:
        """Return a printable description of the move."""
        crossing = self.source.crossings[self.crossing].id
        weight = self.weight.to_text(self.source.registry)
        return f"move {weight} across {crossing} at ports {self.ports[0]}{self.ports[1]}"


def weight_moves_at(diagram: TangleDiagram, crossing: int | str, weight: Polynomial) -> list[WeightMove]:
    """Return the candidate moves of a weight across a crossing, one per port pair.

    Args:
        diagram: A right tangle.
        crossing: Index or id of the crossing.
        weight: The weight to move.

    Raises:
        SchemaError: If the tangle is not on the right.
        InputError: If the crossing does not exist.
    """
    if diagram.side is not Side.RIGHT:
        raise exceptions.SchemaError(f"weight moves need a right tangle, got {diagram.side.value}")
    index = _crossing_index(diagram, crossing)
    moves = []
    for ports in PORT_PAIRS:
        shifts: dict[int, Polynomial] = {}
        for port in ports:
            arc = diagram.port_arc[(index, port)]
            shifts[arc] = shifts[arc] + weight if arc in shifts else weight
        moves.append(WeightMove(index, weight, diagram, diagram.with_weights(shifts), ports))
    return moves


def _crossing_index(diagram: TangleDiagram, crossing: int | str) -> int:
    if isinstance(crossing, int):
        if 0 <= crossing < len(diagram.crossings):
            return crossing
    else:
        for index, c in enumerate(diagram.crossings):
            if c.id == crossing:
                return index
    raise exceptions.InputError(f"no crossing {crossing!r}")


def build_Dc(  # noqa: N802
    crossing: int, domain: TypeDStructure, codomain: TypeDStructure
) -> DMorphism:
    """Build the map re-smoothing one crossing from 1 to 0.

    States with the crossing at 0 map to zero. A state with the crossing at 1
    is surgered along its inactive bridge there; each Khovanov component of
    the result contributes the generator joining the two boundaries.
    """
    algebra = domain.algebra
    table: Table = {}
    for state in domain.states:
        if state.resolution.bits[crossing] == 0:
            continue
        cs = state.circles
        site = cs.sites[crossing]
        outcome = surger_circles(cs, site, reverse=True)
        for signs in frobenius_components(cs.circles, state.signs, outcome.circles.circles):
            target = codomain.state(state.matching, outcome.circles.resolution, signs)
            gen = connecting_generator(algebra, Side.RIGHT, outcome, state.boundary, target.boundary)
            add_term(table, state, target, AlgebraElement.of(gen))
    return DMorphism(domain, codomain, table, 0, "Dc")


def _isomorphism(
    crossing: int, weight: Polynomial, domain: TypeDStructure, codomain: TypeDStructure, name: str
) -> DMorphism:
    identity = DMorphism.identity(domain, codomain)
    if not weight:
        identity.name = name
        return identity
    result = identity + build_Dc(crossing, domain, codomain).scaled(RationalFunction(weight))
    result.name = name
    return result


def build_Psi(  # noqa: N802
    move: WeightMove, algebra: CleavedAlgebra | None = None
) -> tuple[DMorphism, TypeDStructure, TypeDStructure]:
    """Build ``Psi = I + w Dc`` from the structure before the move to the one after.

    Returns:
        The map with its domain and codomain.
    """
    algebra = algebra or CleavedAlgebra(move.source.n)
    before = build_delta(move.source, algebra)
    after = build_delta(move.target, algebra)
    return _isomorphism(move.crossing, move.weight, before, after, "Psi"), before, after


def build_Phi(  # noqa: N802
    move: WeightMove, algebra: CleavedAlgebra | None = None
) -> tuple[DMorphism, TypeDStructure, TypeDStructure]:
    """Build ``Phi = I + w Dc`` from the structure after the move back to the one before.

    Returns:
        The map with its domain and codomain.
    """
    algebra = algebra or CleavedAlgebra(move.source.n)
    before = build_delta(move.source, algebra)
    after = build_delta(move.target, algebra)
    return _isomorphism(move.crossing, move.weight, after, before, "Phi"), after, before


def verify_inverse(psi: DMorphism, phi: DMorphism) -> VerificationReport:
    """Check that two maps compose to the identity in both orders."""
    report = morphisms_equal(compose(phi, psi), DMorphism.identity(psi.domain))
    report = report.merge(morphisms_equal(compose(psi, phi), DMorphism.identity(phi.domain)))
    report.name = f"{phi.name} and {psi.name} are inverse"
    return report


def check_move(move: WeightMove, algebra: CleavedAlgebra | None = None) -> VerificationReport:
    """Check that both maps of a move are morphisms and mutually inverse."""
    algebra = algebra or CleavedAlgebra(move.source.n)
    before = build_delta(move.source, algebra)
    after = build_delta(move.target, algebra)
    psi = _isomorphism(move.crossing, move.weight, before, after, "Psi")
    phi = _isomorphism(move.crossing, move.weight, after, before, "Phi")
    report = verify_morphism(psi).merge(verify_morphism(phi)).merge(verify_inverse(psi, phi))
    report.name = move.label()
    logger.debug("%s: %d blocks, passed=%s", move.label(), report.checked, report.passed)
    return report


def find_weight_move(
    diagram: TangleDiagram, crossing: int | str, weight: Polynomial, algebra: CleavedAlgebra | None = None
) -> tuple[WeightMove, VerificationReport]:
    """Return the first candidate move whose maps pass every check.

    When no candidate passes, the last candidate is returned with its
    failing report.
    """
    algebra = algebra or CleavedAlgebra(diagram.n)
    report = VerificationReport(name="weight move")
    move = None
    for move in weight_moves_at(diagram, crossing, weight):
        report = check_move(move, algebra)
        if report.passed:
            logger.info("Accepted %s", move.label())
            break
        logger.info("Rejected %s: %d failing blocks", move.label(), len(report.failures))
    return move, report
