# ruff: noqa: TRY003, EM102
"""Type D module.

The twisted type D structure of a right tangle over the cleaved algebra:
its states, the vertical part, the four families of the tangle part, their
sum, the structure equation and grading checks, and transport along a
substitution of variables. Maps between type D structures live here too.

This module provides the following classes:

- DState
- TypeDStructure
- DMorphism
"""

from __future__ import annotations

import logging
from collections import defaultdict
from typing import TYPE_CHECKING

from twistkh import exceptions
from twistkh.cleaved import (
    AlgebraElement,
    CleavedAlgebra,
    DecoratedCleavedLink,
    Generator,
    GeneratorKind,
    Word,
    word_is_zero_or_generator,
)
from twistkh.diagram import (
    MINUS,
    PLUS,
    CircleSet,
    Grading,
    PlanarMatching,
    Resolution,
    Side,
    SurgeryOutcome,
    TangleDiagram,
    enumerate_matchings,
    frobenius_components,
    state_grading,
    surger_circles,
)
from twistkh.field import RationalFunction, Substitution, VariableRegistry
from twistkh.schemas.report import VerificationReport
from twistkh.schemas.structure import MorphismDump, StateRecord, StructureDump, TermRecord

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

logger = logging.getLogger(__name__)

StateKey = tuple[tuple[tuple[int, int], ...], tuple[int, ...], tuple[str, ...]]
Table = dict["DState", dict["DState", AlgebraElement]]


class DState:
    """A decorated resolution of a tangle closed off by a matching.

    Used for both sides: for a right tangle ``matching`` is the left planar
    matching, for a left tangle it is the right one.

    Args:
        circles: The resolved circles.
        signs: Decorations aligned with ``circles.circles``.
    """

    __slots__ = ("_hash", "boundary", "circles", "grading", "key", "signs")

    def __init__(self: DState, circles: CircleSet, signs: tuple[str, ...]) -> None:
        """Initialize a DState and derive its boundary and grading."""
        self.circles = circles
        self.signs = tuple(signs)
        self.key: StateKey = (circles.matching.pairs, circles.resolution.bits, self.signs)
        self._hash = hash(self.key)
        self.boundary = boundary_of(circles, self.signs)
        self.grading: Grading = state_grading(circles, self.signs)

    def __eq__(self: DState, other: object) -> bool:
        """Compare matching, resolution and signs."""
        if not isinstance(other, DState):
            return NotImplemented
        return self.key == other.key

    def __hash__(self: DState) -> int:
        """Return the cached hash."""
        return self._hash

    def __lt__(self: DState, other: DState) -> bool:
        """Order states by resolution, matching, then signs."""
        return (self.key[1], self.key[0], self.key[2]) < (other.key[1], other.key[0], other.key[2])

    def __repr__(self: DState) -> str:
        """Return a compact representation."""
        return f"{type(self).__name__}({self.label()})"

    @property
    def matching(self: DState) -> PlanarMatching:
        """Return the closing matching."""
        return self.circles.matching

    @property
    def resolution(self: DState) -> Resolution:
        """Return the resolution."""
        return self.circles.resolution

    @property
    def zeta4(self: DState) -> int:
        """Return the collapsed grading in quarter units."""
        return self.grading.zeta4

    @property
    def free_signs(self: DState) -> tuple[str, ...]:
        """Return the decorations of the free circles."""
        return self.signs[len(self.boundary.circles) :]

    def has_free_circle(self: DState) -> bool:
        """Return whether any circle misses the axis."""
        return len(self.signs) > len(self.boundary.circles)

    def label(self: DState) -> str:
        """Return a printable label such as ``12.34|0|+-``."""
        pairs = ".".join(f"{a}{b}" for a, b in self.key[0])
        return f"{pairs}|{self.resolution.label()}|{''.join(self.signs)}"


def boundary_of(circles: CircleSet, signs: tuple[str, ...]) -> DecoratedCleavedLink:
    """Return the decorated cleaved link left after deleting free circles."""
    cleaved = sum(1 for c in circles.circles if not c.free)
    if circles.diagram.side is Side.RIGHT:
        return DecoratedCleavedLink(circles.matching, circles.tangle_matching, signs[:cleaved])
    return DecoratedCleavedLink(circles.tangle_matching, circles.matching, signs[:cleaved])


def enumerate_states(diagram: TangleDiagram) -> list[DState]:
    """Return every decorated resolution of a tangle closed by every opposite matching."""
    states = []
    for resolution in diagram.resolutions():
        for matching in enumerate_matchings(diagram.n, diagram.side.opposite()):
            circles = diagram.resolve(resolution, matching)
            states.extend(DState(circles, signs) for signs in circles.decorations())
    return states


def surgery_terms(
    state: DState, *, reverse: bool = False
) -> Iterator[tuple[SurgeryOutcome, tuple[str, ...]]]:
    """Yield the Frobenius components of every surgery along a resolution bridge.

    Args:
        state: The state to surger.
        reverse: Use the inactive sites (1 to 0 re-smoothing) instead.
    """
    cs = state.circles
    for site in cs.sites:
        if site.active == reverse:
            continue
        outcome = surger_circles(cs, site, reverse=reverse)
        for signs in frobenius_components(cs.circles, state.signs, outcome.circles.circles):
            yield outcome, signs


def connecting_generator(
    algebra: CleavedAlgebra,
    side: Side,
    outcome: SurgeryOutcome,
    source: DecoratedCleavedLink,
    target: DecoratedCleavedLink,
) -> Generator:
    """Return the generator that records how a surgery changes the boundary.

    Same boundary gives the idempotent, a changed tangle-side matching gives
    a bridge element and one cleaved circle turned from ``+`` to ``-`` gives a
    decoration element, all on the tangle's side.

    Raises:
        BoundaryMismatch: If the boundaries differ in any other way.
    """
    if source == target:
        return algebra.generator(GeneratorKind.IDEMPOTENT, source, source)
    if outcome.effect == "changes-matching":
        kind = GeneratorKind.RIGHT_BRIDGE if side is Side.RIGHT else GeneratorKind.LEFT_BRIDGE
        for gen in algebra.generators_from(source):
            if gen.kind is kind and gen.bridge == outcome.induced and gen.target == target:
                return gen
        raise exceptions.BoundaryMismatch(f"no bridge {outcome.induced} from {source.label()} to {target.label()}")
    changed = [i for i, (a, b) in enumerate(zip(source.signs, target.signs, strict=True)) if a != b]
    if len(changed) != 1 or source.signs[changed[0]] != PLUS:
        raise exceptions.BoundaryMismatch(f"surgery from {source.label()} to {target.label()} is not a decoration")
    kind = GeneratorKind.RIGHT_DEC if side is Side.RIGHT else GeneratorKind.LEFT_DEC
    return algebra.generator(kind, source, target, changed[0])


def flip(signs: tuple[str, ...], index: int) -> tuple[str, ...]:
    """Return decorations with the circle at ``index`` turned ``-``."""
    return (*signs[:index], MINUS, *signs[index + 1 :])


def add_term(table: Table, source: DState, target: DState, element: AlgebraElement) -> None:
    """Accumulate ``element (x) target`` into the image of ``source``."""
    if not element:
        return
    row = table.setdefault(source, {})
    total = row[target] + element if target in row else element
    if total:
        row[target] = total
    else:
        del row[target]


class TypeDStructure:
    """A type D structure with single-generator coefficients.

    Args:
        diagram: The right tangle the states come from.
        algebra: The algebra the coefficients live in.
        states: The generators, in a fixed order.
        delta: Map from source state to target state to coefficient.
        registry: The variables the coefficients are written in.
    """

    def __init__(
        self: TypeDStructure,
        diagram: TangleDiagram,
        algebra: CleavedAlgebra,
        states: list[DState],
        delta: Table | None = None,
        registry: VariableRegistry | None = None,
    ) -> None:
        """Initialize a TypeDStructure."""
        self.diagram = diagram
        self.algebra = algebra
        self.states = states
        self.delta: Table = delta if delta is not None else {}
        self.registry = registry or diagram.registry
        self._lookup = {s.key: s for s in states}

    def __len__(self: TypeDStructure) -> int:
        """Return the number of states."""
        return len(self.states)

    @property
    def n(self: TypeDStructure) -> int:
        """Return half the number of axis points."""
        return self.algebra.n

    def state(self: TypeDStructure, matching: PlanarMatching, resolution: Resolution, signs: tuple[str, ...]) -> DState:
        """Return the state with the given data."""
        return self._lookup[(matching.pairs, resolution.bits, tuple(signs))]

    def find(self: TypeDStructure, label: str) -> DState:
        """Return the state with a printable label."""
        return next(s for s in self.states if s.label() == label)

    def image(self: TypeDStructure, source: DState) -> dict[DState, AlgebraElement]:
        """Return the terms of ``delta(source)`` by target."""
        return self.delta.get(source, {})

    def coefficient(self: TypeDStructure, source: DState, target: DState) -> AlgebraElement:
        """Return the coefficient of ``target`` in ``delta(source)``."""
        return self.image(source).get(target, AlgebraElement())

    def terms(self: TypeDStructure) -> Iterator[tuple[DState, DState, AlgebraElement]]:
        """Iterate over ``(source, target, coefficient)`` in state order."""
        order = {s: i for i, s in enumerate(self.states)}
        for source in self.states:
            row = self.image(source)
            for target in sorted(row, key=order.__getitem__):
                yield source, target, row[target]

    def term_count(self: TypeDStructure) -> int:
        """Return the number of nonzero (source, word, target) terms."""
        return sum(len(element) for _, _, element in self.terms())

    def copy(self: TypeDStructure) -> TypeDStructure:
        """Return a structure with a copied term table."""
        delta = {source: dict(row) for source, row in self.delta.items()}
        return TypeDStructure(self.diagram, self.algebra, list(self.states), delta, self.registry)

    def __add__(self: TypeDStructure, other: TypeDStructure) -> TypeDStructure:
        """Return the termwise sum of two structures on the same states."""
        result = self.copy()
        for source, target, element in other.terms():
            add_term(result.delta, source, target, element)
        return result

    def to_document(self: TypeDStructure) -> StructureDump:
        """Return the JSON document of the structure."""
        order = {s: i for i, s in enumerate(self.states)}
        return StructureDump(
            variables=list(self.registry.names),
            states=[state_record(i, s) for i, s in enumerate(self.states)],
            terms=list(term_records(self.terms(), order, order, self.registry)),
        )


def state_record(index: int, state: DState) -> StateRecord:
    """Return the JSON record of a state."""
    return StateRecord(
        id=index,
        label=state.label(),
        boundary=state.boundary.label(),
        h=state.grading.h,
        q=str(state.grading.q),
        zeta=str(state.grading.zeta),
    )


def term_records(
    terms: Iterable[tuple[DState, DState, AlgebraElement]],
    source_ids: dict[DState, int],
    target_ids: dict[DState, int],
    registry: VariableRegistry,
) -> Iterator[TermRecord]:
    """Yield one JSON record per word of every coefficient."""
    for source, target, element in terms:
        for word in sorted(element.terms):
            kind = word.factors[0].kind.value if word.factors else GeneratorKind.IDEMPOTENT.value
            yield TermRecord(
                source=source_ids[source],
                target=target_ids[target],
                coeff=element.terms[word].to_text(registry),
                kind=kind,
                generator=word.label(),
            )


def _require_right(diagram: TangleDiagram) -> None:
    if diagram.side is not Side.RIGHT:
        raise exceptions.SchemaError(f"a type D structure needs a right tangle, got {diagram.side.value}")


def build_states(diagram: TangleDiagram) -> list[DState]:
    """Return the states of the type D structure of a right tangle.

    Raises:
        SchemaError: If the tangle is not on the right.
    """
    _require_right(diagram)
    states = enumerate_states(diagram)
    logger.debug("Built %d type D states for n=%d", len(states), diagram.n)
    return states


def _empty(diagram: TangleDiagram, algebra: CleavedAlgebra | None) -> TypeDStructure:
    return TypeDStructure(diagram, algebra or CleavedAlgebra(diagram.n), build_states(diagram))


def build_delta_V(diagram: TangleDiagram, algebra: CleavedAlgebra | None = None) -> TypeDStructure:  # noqa: N802
    """Build the vertical part of the differential.

    Every ``+`` free circle ``D`` contributes ``w_D * I (x) (D turned -)`` and
    every ``+`` unmarked cleaved circle ``C`` contributes
    ``w_C * RightDec(C) (x) (C turned -)``, with weights summed over the
    tangle's arcs.
    """
    result = _empty(diagram, algebra)
    for state in result.states:
        cs = state.circles
        for i, circle in enumerate(cs.circles):
            if circle.marked or state.signs[i] != PLUS:
                continue
            target = result.state(state.matching, state.resolution, flip(state.signs, i))
            weight = RationalFunction(cs.weight(i))
            if circle.free:
                gen = result.algebra.generator(GeneratorKind.IDEMPOTENT, state.boundary, state.boundary)
            else:
                gen = result.algebra.generator(GeneratorKind.RIGHT_DEC, state.boundary, target.boundary, i)
            add_term(result.delta, state, target, AlgebraElement.of(gen, weight))
    logger.debug("Vertical differential: %d terms", result.term_count())
    return result


def build_Delta_T(diagram: TangleDiagram, algebra: CleavedAlgebra | None = None) -> TypeDStructure:  # noqa: N802
    """Build the tangle part of the differential.

    The terms are surgeries along active resolution bridges (idempotent,
    right bridge or right decoration coefficient depending on how the
    boundary changes), left bridges of the boundary acting on the closing
    matching, and left decorations of ``+`` cleaved circles.
    """
    result = _empty(diagram, algebra)
    algebra = result.algebra
    for state in result.states:
        for outcome, signs in surgery_terms(state):
            target = result.state(state.matching, outcome.circles.resolution, signs)
            gen = connecting_generator(algebra, Side.RIGHT, outcome, state.boundary, target.boundary)
            add_term(result.delta, state, target, AlgebraElement.of(gen))
        for gen in algebra.generators_from(state.boundary):
            if gen.kind is GeneratorKind.LEFT_BRIDGE:
                matching, _ = state.matching.surger(gen.bridge)
                target = result.state(matching, state.resolution, gen.target.signs + state.free_signs)
            elif gen.kind is GeneratorKind.LEFT_DEC:
                target = result.state(state.matching, state.resolution, flip(state.signs, gen.circle))
            else:
                continue
            add_term(result.delta, state, target, AlgebraElement.of(gen))
    logger.debug("Tangle differential: %d terms", result.term_count())
    return result


def build_delta(diagram: TangleDiagram, algebra: CleavedAlgebra | None = None) -> TypeDStructure:
    """Build the total differential, the tangle part plus the vertical part."""
    algebra = algebra or CleavedAlgebra(diagram.n)
    total = build_Delta_T(diagram, algebra) + build_delta_V(diagram, algebra)
    logger.info("Type D structure: %d states, %d terms", len(total), total.term_count())
    return total


def two_step(first: Table, second: Table, source: DState) -> dict[DState, AlgebraElement]:
    """Return ``sum_y first(source, y) * second(y, z)`` by ``z``."""
    parts: dict[DState, list[AlgebraElement]] = defaultdict(list)
    for middle, a in first.get(source, {}).items():
        for target, b in second.get(middle, {}).items():
            parts[target].append(a * b)
    return {target: AlgebraElement.sum_of(items) for target, items in parts.items()}


def collect_blocks(*parts: dict[DState, AlgebraElement]) -> dict[DState, AlgebraElement]:
    """Sum several images by target state."""
    grouped: dict[DState, list[AlgebraElement]] = defaultdict(list)
    for part in parts:
        for target, element in part.items():
            grouped[target].append(element)
    return {target: AlgebraElement.sum_of(items) for target, items in grouped.items()}


def report_blocks(
    report: VerificationReport,
    algebra: CleavedAlgebra,
    source: DState,
    blocks: dict[DState, AlgebraElement],
    registry: VariableRegistry,
) -> None:
    """Record a zero test for every block of an image."""
    for target in sorted(blocks):
        element = blocks[target]
        ok = algebra.is_zero(element)
        report.tick(ok, source.label(), target.label(), "" if ok else element.to_text(registry))


def verify_structure(structure: TypeDStructure) -> VerificationReport:
    """Check ``mu2(delta, delta) + mu1(delta) = 0`` block by block.

    Returns:
        A report naming each (source, target) block that does not vanish.
    """
    report = VerificationReport(name="type D structure equation")
    algebra = structure.algebra
    for source in structure.states:
        differential = {t: algebra.d(a) for t, a in structure.image(source).items()}
        blocks = collect_blocks(two_step(structure.delta, structure.delta, source), differential)
        report_blocks(report, algebra, source, blocks, structure.registry)
    logger.debug("Structure equation: %d blocks, passed=%s", report.checked, report.passed)
    return report


def verify_anticommute(first: TypeDStructure, second: TypeDStructure) -> VerificationReport:
    """Check that the mixed two-step products of two structures cancel."""
    report = VerificationReport(name="mixed structure equation")
    for source in first.states:
        blocks = collect_blocks(two_step(first.delta, second.delta, source), two_step(second.delta, first.delta, source))
        report_blocks(report, first.algebra, source, blocks, first.registry)
    return report


def verify_grading(structure: TypeDStructure) -> VerificationReport:
    """Check that every term raises the collapsed grading by exactly one."""
    report = VerificationReport(name="type D grading")
    for source, target, element in structure.terms():
        for word in element.terms:
            ok = word.zeta4 + target.zeta4 == source.zeta4 + 4
            report.tick(ok, source.label(), target.label(), "" if ok else f"{word.label()} shifts by {word.zeta4}")
    return report


def transport(structure: TypeDStructure, substitution: Substitution, registry: VariableRegistry | None = None) -> TypeDStructure:
    """Apply a substitution to every coefficient.

    Args:
        structure: The structure to transport.
        substitution: The change of variables.
        registry: The registry of the image variables, when it changes.

    Raises:
        UnassignedVariable: If a coefficient has a variable without an image.
        SubstitutionKillsDenominator: If a denominator maps to zero.
    """
    delta: Table = {}
    for source, target, element in structure.terms():
        add_term(delta, source, target, element.substitute(substitution))
    return TypeDStructure(structure.diagram, structure.algebra, list(structure.states), delta, registry or structure.registry)


class DMorphism:
    """A map of type D structures, ``x -> sum a (x) y``.

    Args:
        domain: The source structure.
        codomain: The target structure.
        table: Map from domain state to codomain state to coefficient.
        degree: Collapsed grading shift in quarter units.
        name: Printable name.
    """

    def __init__(
        self: DMorphism,
        domain: TypeDStructure,
        codomain: TypeDStructure,
        table: Table | None = None,
        degree: int = 0,
        name: str = "morphism",
    ) -> None:
        """Initialize a DMorphism."""
        self.domain = domain
        self.codomain = codomain
        self.table: Table = table if table is not None else {}
        self.degree = degree
        self.name = name

    @classmethod
    def identity(cls: type[DMorphism], structure: TypeDStructure, codomain: TypeDStructure | None = None) -> DMorphism:
        """Return ``x -> I (x) x``, into ``codomain`` when it has the same states."""
        codomain = codomain or structure
        table: Table = {}
        for state in structure.states:
            image = codomain.state(state.matching, state.resolution, state.signs)
            add_term(table, state, image, AlgebraElement.of(Word.idempotent(state.boundary)))
        return cls(structure, codomain, table, 0, "identity")

    def image(self: DMorphism, source: DState) -> dict[DState, AlgebraElement]:
        """Return the image of a domain state by target."""
        return self.table.get(source, {})

    def terms(self: DMorphism) -> Iterator[tuple[DState, DState, AlgebraElement]]:
        """Iterate over ``(source, target, coefficient)``."""
        order = {s: i for i, s in enumerate(self.codomain.states)}
        for source in self.domain.states:
            row = self.image(source)
            for target in sorted(row, key=order.__getitem__):
                yield source, target, row[target]

    def scaled(self: DMorphism, coeff: RationalFunction) -> DMorphism:
        """Return the map with every coefficient multiplied by ``coeff``."""
        table: Table = {}
        for source, target, element in self.terms():
            add_term(table, source, target, element.scale(coeff))
        return DMorphism(self.domain, self.codomain, table, self.degree, self.name)

    def __add__(self: DMorphism, other: DMorphism) -> DMorphism:
        """Return the sum of two maps with the same endpoints."""
        table = {source: dict(row) for source, row in self.table.items()}
        for source, target, element in other.terms():
            add_term(table, source, target, element)
        return DMorphism(self.domain, self.codomain, table, self.degree, f"{self.name}+{other.name}")

    def to_document(self: DMorphism) -> MorphismDump:
        """Return the JSON document of the map."""
        source_ids = {s: i for i, s in enumerate(self.domain.states)}
        target_ids = {s: i for i, s in enumerate(self.codomain.states)}
        registry = self.codomain.registry
        return MorphismDump(
            name=self.name,
            degree=self.degree,
            terms=list(term_records(self.terms(), source_ids, target_ids, registry)),
        )


def shorten(algebra: CleavedAlgebra, element: AlgebraElement) -> AlgebraElement:
    """Rewrite length-two words of an element into generators where possible.

    Words that cannot be rewritten are kept.
    """
    if element.max_length() < 2:
        return element
    parts = []
    for block in element.blocks().values():
        short = word_is_zero_or_generator(algebra, block)
        parts.append(block if short is None else short)
    return AlgebraElement.sum_of(parts)


def compose(phi: DMorphism, psi: DMorphism, *, simplify: bool = True) -> DMorphism:
    """Return ``phi * psi``: apply ``psi``, then ``phi``, multiplying coefficients.

    Raises:
        BoundaryMismatch: If the codomain of ``psi`` is not the domain of ``phi``.
    """
    if {s.key for s in psi.codomain.states} != {s.key for s in phi.domain.states}:
        raise exceptions.BoundaryMismatch(f"cannot compose {phi.name} after {psi.name}")
    table: Table = {}
    for source in psi.domain.states:
        for target, element in two_step(psi.table, phi.table, source).items():
            add_term(table, source, target, shorten(phi.domain.algebra, element) if simplify else element)
    return DMorphism(psi.domain, phi.codomain, table, phi.degree + psi.degree, f"{phi.name}*{psi.name}")


def verify_morphism(morphism: DMorphism) -> VerificationReport:
    """Check ``delta' o f + f o delta + (d (x) I) f = 0`` on every domain state."""
    report = VerificationReport(name=f"morphism equation for {morphism.name}")
    algebra = morphism.domain.algebra
    for source in morphism.domain.states:
        differential = {t: algebra.d(a) for t, a in morphism.image(source).items()}
        blocks = collect_blocks(
            two_step(morphism.table, morphism.codomain.delta, source),
            two_step(morphism.domain.delta, morphism.table, source),
            differential,
        )
        report_blocks(report, algebra, source, blocks, morphism.codomain.registry)
    return report


def verify_homotopy(first: DMorphism, second: DMorphism, homotopy: DMorphism) -> VerificationReport:
    """Check ``f + g + delta' H + H delta + (d (x) I) H = 0`` on every domain state."""
    report = VerificationReport(name=f"homotopy {first.name} ~ {second.name}")
    algebra = first.domain.algebra
    for source in first.domain.states:
        differential = {t: algebra.d(a) for t, a in homotopy.image(source).items()}
        blocks = collect_blocks(
            first.image(source),
            second.image(source),
            two_step(homotopy.table, homotopy.codomain.delta, source),
            two_step(homotopy.domain.delta, homotopy.table, source),
            differential,
        )
        report_blocks(report, algebra, source, blocks, first.codomain.registry)
    return report


def morphisms_equal(first: DMorphism, second: DMorphism) -> VerificationReport:
    """Check that two maps agree block by block in the algebra."""
    report = VerificationReport(name=f"{first.name} = {second.name}")
    algebra = first.domain.algebra
    for source in first.domain.states:
        blocks = collect_blocks(first.image(source), second.image(source))
        report_blocks(report, algebra, source, blocks, first.codomain.registry)
    return report
