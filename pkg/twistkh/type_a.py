# ruff: noqa: TRY003, EM102
"""Type A module.

The twisted type A structure of a left tangle: the differential ``m1``
(Khovanov surgeries that keep the boundary plus the vertical twist), the
action of algebra generators with the left-decoration twist, its extension
to words, and a check of the A-infinity relations.

This module provides the following classes:

- AState
- TypeAStructure
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import TYPE_CHECKING

from twistkh import exceptions
from twistkh.cleaved import AlgebraElement, CleavedAlgebra, DecoratedCleavedLink, Generator, GeneratorKind, Word
from twistkh.diagram import PLUS, PlanarMatching, Resolution, Side, TangleDiagram
from twistkh.field import RationalFunction, Substitution, VariableRegistry
from twistkh.schemas.report import VerificationReport
from twistkh.schemas.structure import ActionDump, ActionRecord
from twistkh.type_d import DState, enumerate_states, flip, state_record, surgery_terms

if TYPE_CHECKING:
    from collections.abc import Iterable

logger = logging.getLogger(__name__)

Combination = dict["AState", RationalFunction]


class AState(DState):
    """A decorated resolution of a left tangle closed off by a right matching."""

    __slots__ = ()


def _accumulate(acc: Combination, state: AState, coeff: RationalFunction) -> None:
    total = acc[state] + coeff if state in acc else coeff
    if total:
        acc[state] = total
    else:
        acc.pop(state, None)


def combine(parts: Iterable[tuple[Combination, RationalFunction]]) -> Combination:
    """Return ``sum coeff * part`` of linear combinations of states."""
    acc: Combination = {}
    for part, coeff in parts:
        for state, value in part.items():
            _accumulate(acc, state, value * coeff)
    return acc


class TypeAStructure:
    """The twisted type A structure of a left tangle.

    Actions are computed on demand and cached per (state, generator).

    Args:
        diagram: The left tangle.
        algebra: The algebra acting on the right.
        states: The generators.
        m1: Map from state to its differential.
        registry: The variables the coefficients are written in.
    """

    def __init__(
        self: TypeAStructure,
        diagram: TangleDiagram,
        algebra: CleavedAlgebra,
        states: list[AState],
        m1: dict[AState, Combination] | None = None,
        registry: VariableRegistry | None = None,
    ) -> None:
        """Initialize a TypeAStructure."""
        self.diagram = diagram
        self.algebra = algebra
        self.states = states
        self.m1: dict[AState, Combination] = m1 if m1 is not None else {}
        self.registry = registry or diagram.registry
        self.substitution = Substitution.identity()
        self._lookup = {s.key: s for s in states}
        self._actions: dict[tuple[AState, Generator], Combination] = {}

    def __len__(self: TypeAStructure) -> int:
        """Return the number of states."""
        return len(self.states)

    def state(self: TypeAStructure, matching: PlanarMatching, resolution: Resolution, signs: tuple[str, ...]) -> AState:
        """Return the state with the given data."""
        return self._lookup[(matching.pairs, resolution.bits, tuple(signs))]

    def find(self: TypeAStructure, label: str) -> AState:
        """Return the state with a printable label."""
        return next(s for s in self.states if s.label() == label)

    def differential(self: TypeAStructure, state: AState) -> Combination:
        """Return ``m1(state)``."""
        return self.m1.get(state, {})

    def differential_of(self: TypeAStructure, combination: Combination) -> Combination:
        """Extend ``m1`` linearly."""
        return combine((self.differential(s), c) for s, c in combination.items())

    def act(self: TypeAStructure, state: AState, generator: Generator) -> Combination:
        """Return ``m2(state (x) generator)``, cached."""
        key = (state, generator)
        cached = self._actions.get(key)
        if cached is None:
            cached = act_generator(self, state, generator)
            self._actions[key] = cached
        return cached

    def act_word(self: TypeAStructure, state: AState, word: Word | AlgebraElement) -> Combination:
        """Return the action of a word or a combination of words."""
        return act_word(self, state, word)

    def with_substitution(self: TypeAStructure, substitution: Substitution, registry: VariableRegistry) -> TypeAStructure:
        """Return the structure with every coefficient transported."""
        m1 = {s: {t: substitution(c) for t, c in row.items()} for s, row in self.m1.items()}
        result = TypeAStructure(self.diagram, self.algebra, self.states, m1, registry)
        result.substitution = self.substitution.then(substitution)
        return result

    def to_document(self: TypeAStructure) -> ActionDump:
        """Return the JSON document of the differential and action tables."""
        ids = {s: i for i, s in enumerate(self.states)}

        def outputs(combination: Combination) -> list[tuple[int, str]]:
            return [(ids[t], combination[t].to_text(self.registry)) for t in sorted(combination, key=ids.__getitem__)]

        actions = [
            ActionRecord(state=ids[s], generator="m1", outputs=outputs(self.differential(s)))
            for s in self.states
            if self.differential(s)
        ]
        for state in self.states:
            for gen in self.algebra.generators_from(state.boundary):
                if gen.kind is GeneratorKind.IDEMPOTENT:
                    continue
                image = self.act(state, gen)
                if image:
                    actions.append(ActionRecord(state=ids[state], generator=gen.label(), outputs=outputs(image)))
        return ActionDump(
            variables=list(self.registry.names),
            states=[state_record(i, s) for i, s in enumerate(self.states)],
            actions=actions,
        )


def build_states(diagram: TangleDiagram) -> list[AState]:
    """Return the states of the type A structure of a left tangle.

    Raises:
        SchemaError: If the tangle is not on the left.
    """
    if diagram.side is not Side.LEFT:
        raise exceptions.SchemaError(f"a type A structure needs a left tangle, got {diagram.side.value}")
    states = [AState(s.circles, s.signs) for s in enumerate_states(diagram)]
    logger.debug("Built %d type A states for n=%d", len(states), diagram.n)
    return states


def build_m1(diagram: TangleDiagram, algebra: CleavedAlgebra | None = None) -> TypeAStructure:
    """Build the type A structure with its differential.

    ``m1`` sums every Frobenius component of an active surgery that keeps the
    boundary, plus ``w_D * (D turned -)`` for each ``+`` free circle ``D``.
    """
    states = build_states(diagram)
    structure = TypeAStructure(diagram, algebra or CleavedAlgebra(diagram.n), states)
    one = RationalFunction.one()
    for state in states:
        acc: Combination = {}
        for outcome, signs in surgery_terms(state):
            target = structure.state(state.matching, outcome.circles.resolution, signs)
            if target.boundary == state.boundary:
                _accumulate(acc, target, one)
        for i, circle in enumerate(state.circles.circles):
            if circle.free and state.signs[i] == PLUS:
                target = structure.state(state.matching, state.resolution, flip(state.signs, i))
                _accumulate(acc, target, RationalFunction(state.circles.weight(i)))
        if acc:
            structure.m1[state] = acc
    logger.debug("Type A differential: %d nonzero rows", len(structure.m1))
    return structure


def _surgeries_onto(structure: TypeAStructure, state: AState, target: DecoratedCleavedLink, effect: str) -> Combination:
    acc: Combination = {}
    for outcome, signs in surgery_terms(state):
        if outcome.effect != effect:
            continue
        image = structure.state(state.matching, outcome.circles.resolution, signs)
        if image.boundary == target:
            _accumulate(acc, image, RationalFunction.one())
    return acc


def act_generator(structure: TypeAStructure, state: AState, generator: Generator) -> Combination:
    """Return the action of one algebra generator on a state.

    Right generators act on the closing matching with coefficient 1. Left
    generators sum the surgeries along active resolution bridges that turn
    the boundary into the generator's target; a left decoration also adds
    the twist ``w_C * (C turned -)`` with ``w_C`` the left weight of ``C``.
    """
    if state.boundary != generator.source:
        return {}
    one = RationalFunction.one()
    kind = generator.kind
    if kind is GeneratorKind.IDEMPOTENT:
        return {state: one}
    if kind is GeneratorKind.RIGHT_DEC:
        return {structure.state(state.matching, state.resolution, flip(state.signs, generator.circle)): one}
    if kind is GeneratorKind.RIGHT_BRIDGE:
        matching, _ = state.matching.surger(generator.bridge)
        signs = generator.target.signs + state.free_signs
        return {structure.state(matching, state.resolution, signs): one}
    if kind is GeneratorKind.LEFT_BRIDGE:
        acc: Combination = {}
        for outcome, signs in surgery_terms(state):
            if outcome.effect != "changes-matching" or outcome.induced != generator.bridge:
                continue
            image = structure.state(state.matching, outcome.circles.resolution, signs)
            if image.boundary == generator.target:
                _accumulate(acc, image, one)
        return acc
    acc = _surgeries_onto(structure, state, generator.target, "flips-decoration-capable")
    weight = structure.substitution(RationalFunction(state.circles.weight(generator.circle)))
    _accumulate(acc, structure.state(state.matching, state.resolution, flip(state.signs, generator.circle)), weight)
    return acc


def act_word(structure: TypeAStructure, state: AState, word: Word | AlgebraElement) -> Combination:
    """Act by a word of length at most two, left to right, or by a combination.

    Raises:
        WordTooLong: If a word has three or more factors.
    """
    if isinstance(word, AlgebraElement):
        return combine((act_word(structure, state, w), c) for w, c in word)
    if len(word) > 2:
        raise exceptions.WordTooLong(f"action of a word of length {len(word)}")
    if not word.factors:
        return {state: RationalFunction.one()} if state.boundary == word.source else {}
    current: Combination = {state: RationalFunction.one()}
    for factor in word.factors:
        current = combine((structure.act(s, factor), c) for s, c in current.items())
    return current


def _describe(combination: Combination, registry: VariableRegistry) -> str:
    return " + ".join(f"({c.to_text(registry)}) {s.label()}" for s, c in sorted(combination.items()))


def zeta_shifts(structure: TypeAStructure) -> dict[str, set[int]]:
    """Return the collapsed grading shifts seen for ``m1`` and each generator kind."""
    shifts: dict[str, set[int]] = defaultdict(set)
    for state in structure.states:
        for target in structure.differential(state):
            shifts["m1"].add(target.zeta4 - state.zeta4)
        for gen in structure.algebra.generators_from(state.boundary):
            for target in structure.act(state, gen):
                shifts[gen.kind.value].add(target.zeta4 - state.zeta4)
    return dict(shifts)


def verify_Ainf(structure: TypeAStructure) -> VerificationReport:  # noqa: N802
    """Check the A-infinity relations of the structure.

    For every state ``x`` and generator ``p`` leaving its boundary:
    ``m1(m1(x)) = 0``, ``m2(m1(x), p) + m2(x, d p) + m1(m2(x, p)) = 0``, and
    every relation instance between the boundary and a reachable link acts
    by zero. The collapsed grading shifts must be 1 for ``m1`` and the
    generator's own grading for each action.
    """
    report = VerificationReport(name="type A relations")
    algebra = structure.algebra
    registry = structure.registry
    for state in structure.states:
        square = structure.differential_of(structure.differential(state))
        report.tick(not square, state.label(), "m1*m1", _describe(square, registry))
        reachable: set[DecoratedCleavedLink] = set()
        for gen in algebra.generators_from(state.boundary):
            if gen.kind is GeneratorKind.IDEMPOTENT:
                continue
            reachable.update(second.target for second in algebra.generators_from(gen.target))
            first = combine((structure.act(s, gen), c) for s, c in structure.differential(state).items())
            middle = act_word(structure, state, algebra.d(AlgebraElement.of(gen)))
            last = structure.differential_of(structure.act(state, gen))
            total = combine([(first, RationalFunction.one()), (middle, RationalFunction.one()), (last, RationalFunction.one())])
            report.tick(not total, state.label(), gen.label(), _describe(total, registry))
            for target in structure.act(state, gen):
                ok = target.zeta4 - state.zeta4 == gen.zeta4
                report.tick(ok, state.label(), gen.label(), "" if ok else f"grading shift into {target.label()}")
        for target in sorted(reachable):
            for relation in algebra.relation_instances(state.boundary, target):
                image = act_word(structure, state, relation)
                report.tick(not image, state.label(), relation.to_text(), _describe(image, registry))
        for target in structure.differential(state):
            ok = target.zeta4 == state.zeta4 + 4
            report.tick(ok, state.label(), target.label(), "" if ok else "m1 grading shift")
    logger.debug("A-infinity relations: %d checks, passed=%s", report.checked, report.passed)
    return report
