# ruff: noqa: TRY003, EM102
"""Cleaved module.

The differential algebra of decorated cleaved links: links, the generator
catalog, free words and their linear combinations, the differential, the
relation instances between two links and a zero test for combinations of
words of length at most two.

This module provides the following classes:

- GeneratorKind
- DecoratedCleavedLink
- Generator
- Word
- AlgebraElement
- CleavedAlgebra
"""

from __future__ import annotations

import itertools
import logging
from collections import defaultdict
from enum import Enum
from functools import lru_cache
from typing import TYPE_CHECKING, Any

import numpy as np

from twistkh import exceptions
from twistkh.diagram import (
    MINUS,
    PLUS,
    BridgeClass,
    Circle,
    PlanarMatching,
    Side,
    enumerate_matchings,
    frobenius_components,
)
from twistkh.field import RationalFunction, Substitution, gf2_rref

if TYPE_CHECKING:
    from collections.abc import Iterable, Iterator

logger = logging.getLogger(__name__)


class GeneratorKind(str, Enum):
    """The kinds of algebra generators."""

    IDEMPOTENT = "idempotent"
    RIGHT_DEC = "right-dec"
    LEFT_DEC = "left-dec"
    RIGHT_BRIDGE = "right-bridge"
    LEFT_BRIDGE = "left-bridge"

    @property
    def zeta4(self: GeneratorKind) -> int:
        """Return the collapsed grading in quarter units."""
        return _ZETA4[self]

    @property
    def is_left(self: GeneratorKind) -> bool:
        """Return whether the generator acts on the left matching side."""
        return self in (GeneratorKind.LEFT_DEC, GeneratorKind.LEFT_BRIDGE)

    @property
    def is_bridge(self: GeneratorKind) -> bool:
        """Return whether the generator is a bridge element."""
        return self in (GeneratorKind.LEFT_BRIDGE, GeneratorKind.RIGHT_BRIDGE)

    @property
    def is_dec(self: GeneratorKind) -> bool:
        """Return whether the generator is a decoration element."""
        return self in (GeneratorKind.LEFT_DEC, GeneratorKind.RIGHT_DEC)


_ZETA4 = {
    GeneratorKind.IDEMPOTENT: 0,
    GeneratorKind.RIGHT_DEC: 2,
    GeneratorKind.LEFT_DEC: 2,
    GeneratorKind.RIGHT_BRIDGE: 1,
    GeneratorKind.LEFT_BRIDGE: 3,
}


@lru_cache(maxsize=None)
def link_circles(left: PlanarMatching, right: PlanarMatching) -> tuple[frozenset[int], ...]:
    """Return the circles of two matchings glued along the axis, by lowest point."""
    circles = []
    seen: set[int] = set()
    for start in range(1, 2 * left.n + 1):
        if start in seen:
            continue
        points = set()
        point = start
        while point not in points:
            points.add(point)
            other = right.partner(point)
            points.add(other)
            point = left.partner(other)
        seen |= points
        circles.append(frozenset(points))
    return tuple(circles)


class DecoratedCleavedLink:
    """A cleaved link with a sign on each circle.

    Args:
        left: The left planar matching.
        right: The right planar matching.
        signs: Signs aligned with ``circles``; the marked circle is ``-``.

    Raises:
        ValueError: If the sign count is wrong or the marked circle is ``+``.
    """

    __slots__ = ("_hash", "_key", "circles", "left", "right", "signs")

    def __init__(
        self: DecoratedCleavedLink,
        left: PlanarMatching,
        right: PlanarMatching,
        signs: tuple[str, ...],
    ) -> None:
        """Initialize a DecoratedCleavedLink."""
        self.left = left.with_side(Side.LEFT)
        self.right = right.with_side(Side.RIGHT)
        self.circles = link_circles(self.left, self.right)
        self.signs = tuple(signs)
        if len(self.signs) != len(self.circles):
            raise ValueError(f"{len(self.signs)} signs for {len(self.circles)} circles")
        if self.signs[self.marked] != MINUS:
            raise ValueError("the marked circle must be decorated '-'")
        self._key = (self.left.pairs, self.right.pairs, self.signs)
        self._hash = hash(self._key)

    def __eq__(self: DecoratedCleavedLink, other: object) -> bool:
        """Compare matchings and signs."""
        if not isinstance(other, DecoratedCleavedLink):
            return NotImplemented
        return self._key == other._key

    def __hash__(self: DecoratedCleavedLink) -> int:
        """Return the cached hash."""
        return self._hash

    def __lt__(self: DecoratedCleavedLink, other: DecoratedCleavedLink) -> bool:
        """Order links by matchings, then signs."""
        return self._key < other._key

    def __repr__(self: DecoratedCleavedLink) -> str:
        """Return a compact representation."""
        return f"Link({self.label()})"

    @property
    def n(self: DecoratedCleavedLink) -> int:
        """Return half the number of axis points."""
        return self.left.n

    @property
    def marked(self: DecoratedCleavedLink) -> int:
        """Return the index of the circle through the top axis point."""
        top = 2 * self.left.n
        return next(i for i, c in enumerate(self.circles) if top in c)

    @property
    def index(self: DecoratedCleavedLink) -> int:
        """Return ``#(+ circles) - #(- unmarked circles)``."""
        marked = self.marked
        return sum(
            (1 if s == PLUS else -1) for i, s in enumerate(self.signs) if i != marked
        )

    def label(self: DecoratedCleavedLink) -> str:
        """Return a printable label such as ``12.34|14.23|+-``."""

        def pairs(m: PlanarMatching) -> str:
            return ".".join(f"{a}{b}" for a, b in m.pairs)

        return f"{pairs(self.left)}|{pairs(self.right)}|{''.join(self.signs)}"

    def circle_index(self: DecoratedCleavedLink, points: frozenset[int]) -> int | None:
        """Return the index of the circle with these axis points."""
        try:
            return self.circles.index(points)
        except ValueError:
            return None

    def sign_of(self: DecoratedCleavedLink, points: frozenset[int]) -> str:
        """Return the sign of the circle with these axis points."""
        return self.signs[self.circles.index(points)]

    def flipped(self: DecoratedCleavedLink, index: int) -> DecoratedCleavedLink:
        """Return the link with the ``+`` circle at ``index`` turned ``-``."""
        signs = list(self.signs)
        signs[index] = MINUS
        return DecoratedCleavedLink(self.left, self.right, tuple(signs))

    def as_circles(self: DecoratedCleavedLink) -> tuple[Circle, ...]:
        """Return the circles as diagram circles, for the Frobenius rules."""
        marked = self.marked
        return tuple(
            Circle("cleaved", points, frozenset(), i == marked) for i, points in enumerate(self.circles)
        )

    def surgered(self: DecoratedCleavedLink, gamma: BridgeClass) -> list[DecoratedCleavedLink]:
        """Return every decorated link reached by surgery along a bridge class."""
        if gamma.side is Side.LEFT:
            left, _ = self.left.surger(gamma)
            right = self.right
        else:
            right, _ = self.right.surger(gamma)
            left = self.left
        after = DecoratedCleavedLink.shape(left, right)
        return [
            DecoratedCleavedLink(left, right, signs)
            for signs in frobenius_components(self.as_circles(), self.signs, after)
        ]

    @staticmethod
    def shape(left: PlanarMatching, right: PlanarMatching) -> tuple[Circle, ...]:
        """Return the undecorated circles of a pair of matchings."""
        top = 2 * left.n
        return tuple(
            Circle("cleaved", points, frozenset(), top in points) for points in link_circles(left, right)
        )


def enumerate_links(n: int) -> list[DecoratedCleavedLink]:
    """Return every decorated cleaved link with ``2n`` axis points."""
    links = []
    for left in enumerate_matchings(n, Side.LEFT):
        for right in enumerate_matchings(n, Side.RIGHT):
            top = 2 * n
            options = [(MINUS,) if top in c else (PLUS, MINUS) for c in link_circles(left, right)]
            links.extend(DecoratedCleavedLink(left, right, signs) for signs in itertools.product(*options))
    return links


class Generator:
    """A generator of the algebra.

    Args:
        kind: The generator kind.
        source: The source link.
        target: The target link.
        circle: Index in ``source`` of the decorated circle, for decorations.
        bridge: The bridge class in ``source``, for bridge elements.
    """

    __slots__ = ("_hash", "bridge", "circle", "kind", "source", "target")

    def __init__(
        self: Generator,
        kind: GeneratorKind,
        source: DecoratedCleavedLink,
        target: DecoratedCleavedLink,
        circle: int | None = None,
        bridge: BridgeClass | None = None,
    ) -> None:
        """Initialize a Generator."""
        self.kind = kind
        self.source = source
        self.target = target
        self.circle = circle
        self.bridge = bridge
        self._hash = hash((kind, source, target, circle, bridge))

    def __eq__(self: Generator, other: object) -> bool:
        """Compare all fields."""
        if not isinstance(other, Generator):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.kind is other.kind
            and self.source == other.source
            and self.target == other.target
            and self.circle == other.circle
            and self.bridge == other.bridge
        )

    def __hash__(self: Generator) -> int:
        """Return the cached hash."""
        return self._hash

    def __repr__(self: Generator) -> str:
        """Return a compact representation."""
        return f"Generator({self.label()})"

    @property
    def zeta4(self: Generator) -> int:
        """Return the collapsed grading in quarter units."""
        return self.kind.zeta4

    def label(self: Generator) -> str:
        """Return a printable label."""
        if self.kind is GeneratorKind.IDEMPOTENT:
            return f"I[{self.source.label()}]"
        if self.kind.is_dec:
            side = "l" if self.kind is GeneratorKind.LEFT_DEC else "r"
            points = "".join(str(p) for p in sorted(self.source.circles[self.circle]))
            return f"{side}e_C{points}[{self.source.label()}]"
        return f"e_{self.bridge.label()}[{self.source.label()}>{''.join(self.target.signs)}]"


class Word:
    """A composable sequence of non-idempotent generators.

    The empty word stands for the idempotent of its source.
    """

    __slots__ = ("_hash", "factors", "source", "target")

    def __init__(
        self: Word,
        factors: tuple[Generator, ...],
        source: DecoratedCleavedLink,
        target: DecoratedCleavedLink,
    ) -> None:
        """Initialize a Word."""
        self.factors = factors
        self.source = source
        self.target = target
        self._hash = hash((factors, source, target))

    @classmethod
    def idempotent(cls: type[Word], link: DecoratedCleavedLink) -> Word:
        """Return the empty word at a link."""
        return cls((), link, link)

    @classmethod
    def of(cls: type[Word], generator: Generator) -> Word:
        """Return the word of one generator, absorbing idempotents."""
        if generator.kind is GeneratorKind.IDEMPOTENT:
            return cls.idempotent(generator.source)
        return cls((generator,), generator.source, generator.target)

    def __eq__(self: Word, other: object) -> bool:
        """Compare factors and endpoints."""
        if not isinstance(other, Word):
            return NotImplemented
        return self._hash == other._hash and self.factors == other.factors and self.source == other.source

    def __hash__(self: Word) -> int:
        """Return the cached hash."""
        return self._hash

    def __len__(self: Word) -> int:
        """Return the number of factors."""
        return len(self.factors)

    def __repr__(self: Word) -> str:
        """Return a compact representation."""
        return f"Word({self.label()})"

    def __lt__(self: Word, other: Word) -> bool:
        """Order words by their labels."""
        return self.label() < other.label()

    def concat(self: Word, other: Word) -> Word | None:
        """Return the product word, or None if the words do not compose."""
        if self.target != other.source:
            return None
        return Word(self.factors + other.factors, self.source, other.target)

    @property
    def zeta4(self: Word) -> int:
        """Return the collapsed grading in quarter units."""
        return sum(g.zeta4 for g in self.factors)

    def label(self: Word) -> str:
        """Return a printable label."""
        if not self.factors:
            return f"I[{self.source.label()}]"
        return "*".join(g.label() for g in self.factors)


class AlgebraElement:
    """A linear combination of words with rational function coefficients.

    Args:
        terms: Map from word to coefficient; zero coefficients are dropped.
    """

    __slots__ = ("terms",)

    def __init__(self: AlgebraElement, terms: dict[Word, RationalFunction] | None = None) -> None:
        """Initialize an AlgebraElement."""
        self.terms: dict[Word, RationalFunction] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(
        cls: type[AlgebraElement], item: Word | Generator, coeff: RationalFunction | None = None
    ) -> AlgebraElement:
        """Return a single term."""
        word = Word.of(item) if isinstance(item, Generator) else item
        return cls({word: coeff if coeff is not None else RationalFunction.one()})

    @classmethod
    def sum_of(cls: type[AlgebraElement], parts: Iterable[AlgebraElement]) -> AlgebraElement:
        """Return the sum of several elements."""
        acc: dict[Word, RationalFunction] = {}
        for part in parts:
            _accumulate(acc, part.terms.items())
        return cls(acc)

    def __bool__(self: AlgebraElement) -> bool:
        """Return whether any term is stored."""
        return bool(self.terms)

    def __iter__(self: AlgebraElement) -> Iterator[tuple[Word, RationalFunction]]:
        """Iterate over (word, coefficient) pairs."""
        return iter(self.terms.items())

    def __len__(self: AlgebraElement) -> int:
        """Return the number of terms."""
        return len(self.terms)

    def __repr__(self: AlgebraElement) -> str:
        """Return a compact representation."""
        return f"AlgebraElement({self.to_text()})"

    def __add__(self: AlgebraElement, other: AlgebraElement) -> AlgebraElement:
        """Add two elements."""
        acc = dict(self.terms)
        _accumulate(acc, other.terms.items())
        return AlgebraElement(acc)

    def __mul__(self: AlgebraElement, other: AlgebraElement) -> AlgebraElement:
        """Multiply by concatenating composable words."""
        acc: dict[Word, RationalFunction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                word = w1.concat(w2)
                if word is not None:
                    _accumulate(acc, [(word, c1 * c2)])
        return AlgebraElement(acc)

    def scale(self: AlgebraElement, coeff: RationalFunction) -> AlgebraElement:
        """Multiply every coefficient by a field element."""
        if not coeff:
            return AlgebraElement()
        return AlgebraElement({w: c * coeff for w, c in self.terms.items()})

    def substitute(self: AlgebraElement, s: Substitution) -> AlgebraElement:
        """Apply a substitution to every coefficient."""
        return AlgebraElement({w: s(c) for w, c in self.terms.items()})

    def max_length(self: AlgebraElement) -> int:
        """Return the length of the longest word."""
        return max((len(w) for w in self.terms), default=0)

    def coefficient(self: AlgebraElement, word: Word) -> RationalFunction:
        """Return the coefficient of a word."""
        return self.terms.get(word, RationalFunction.zero())

    def blocks(self: AlgebraElement) -> dict[tuple[DecoratedCleavedLink, DecoratedCleavedLink], AlgebraElement]:
        """Split into pieces with a common source and target."""
        grouped: dict[tuple[DecoratedCleavedLink, DecoratedCleavedLink], dict[Word, RationalFunction]] = defaultdict(dict)
        for word, coeff in self.terms.items():
            grouped[(word.source, word.target)][word] = coeff
        return {key: AlgebraElement(terms) for key, terms in grouped.items()}

    def to_text(self: AlgebraElement, registry: Any = None) -> str:
        """Render as a sum of ``coeff word`` terms."""
        if not self.terms:
            return "0"
        parts = []
        for word in sorted(self.terms):
            coeff = self.terms[word]
            prefix = "" if coeff.is_one() else f"({coeff.to_text(registry)}) "
            parts.append(prefix + word.label())
        return " + ".join(parts)


def _accumulate(acc: dict[Word, RationalFunction], items: Iterable[tuple[Word, RationalFunction]]) -> None:
    for word, coeff in items:
        total = acc[word] + coeff if word in acc else coeff
        if total:
            acc[word] = total
        else:
            acc.pop(word, None)


class _Span:
    """Row-reduced relation span of one block, over GF(2)."""

    __slots__ = ("basis", "column", "pivots", "rows")

    def __init__(self: _Span, basis: list[Word], relations: list[AlgebraElement]) -> None:
        self.basis = basis
        self.column = {w: i for i, w in enumerate(basis)}
        matrix = np.zeros((len(relations), len(basis)), dtype=np.uint8)
        for r, rel in enumerate(relations):
            for word, _ in rel:
                matrix[r, self.column[word]] ^= 1
        reduced, pivots = gf2_rref(matrix)
        self.rows = [np.nonzero(row)[0].tolist() for row in reduced]
        self.pivots = pivots

    def residual(self: _Span, element: AlgebraElement) -> dict[int, RationalFunction]:
        vector = {self.column[w]: c for w, c in element}
        for pivot, row in zip(self.pivots, self.rows, strict=True):
            coeff = vector.get(pivot)
            if coeff is None:
                continue
            for col in row:
                updated = vector.get(col, RationalFunction.zero()) + coeff
                if updated:
                    vector[col] = updated
                else:
                    vector.pop(col, None)
        return vector


class CleavedAlgebra:
    """The algebra of decorated cleaved links with ``2n`` axis points.

    Generator catalogs, words, relation instances and relation spans are
    computed lazily and cached per link or per pair of links.

    Args:
        n: Half the number of axis points.
    """

    def __init__(self: CleavedAlgebra, n: int) -> None:
        """Initialize a CleavedAlgebra."""
        self.n = n
        self._links: list[DecoratedCleavedLink] | None = None
        self._generators: dict[DecoratedCleavedLink, list[Generator]] = {}
        self._words2: dict[DecoratedCleavedLink, dict[DecoratedCleavedLink, list[Word]]] = {}
        self._spans: dict[tuple[DecoratedCleavedLink, DecoratedCleavedLink], _Span] = {}

    @property
    def links(self: CleavedAlgebra) -> list[DecoratedCleavedLink]:
        """Return every decorated link."""
        if self._links is None:
            self._links = enumerate_links(self.n)
        return self._links

    def generators_from(self: CleavedAlgebra, link: DecoratedCleavedLink) -> list[Generator]:
        """Return the idempotent, decoration and bridge generators leaving a link."""
        cached = self._generators.get(link)
        if cached is not None:
            return cached
        result = [Generator(GeneratorKind.IDEMPOTENT, link, link)]
        marked = link.marked
        for i, sign in enumerate(link.signs):
            if sign == PLUS and i != marked:
                target = link.flipped(i)
                result.append(Generator(GeneratorKind.RIGHT_DEC, link, target, circle=i))
                result.append(Generator(GeneratorKind.LEFT_DEC, link, target, circle=i))
        for kind, matching in ((GeneratorKind.LEFT_BRIDGE, link.left), (GeneratorKind.RIGHT_BRIDGE, link.right)):
            for gamma in matching.bridge_classes():
                for target in link.surgered(gamma):
                    result.append(Generator(kind, link, target, bridge=gamma))
        self._generators[link] = result
        return result

    def generator(
        self: CleavedAlgebra,
        kind: GeneratorKind,
        source: DecoratedCleavedLink,
        target: DecoratedCleavedLink,
        circle: int | None = None,
    ) -> Generator:
        """Look up a generator by kind and endpoints.

        Raises:
            BoundaryMismatch: If no such generator exists.
        """
        for gen in self.generators_from(source):
            if gen.kind is kind and gen.target == target and (circle is None or gen.circle == circle):
                return gen
        raise exceptions.BoundaryMismatch(f"no {kind.value} generator from {source.label()} to {target.label()}")

    def idempotent(self: CleavedAlgebra, link: DecoratedCleavedLink) -> AlgebraElement:
        """Return the idempotent of a link as an element."""
        return AlgebraElement.of(Word.idempotent(link))

    def words_between(
        self: CleavedAlgebra, source: DecoratedCleavedLink, target: DecoratedCleavedLink
    ) -> list[Word]:
        """Return every composable word of length at most two between two links."""
        words = []
        if source == target:
            words.append(Word.idempotent(source))
        words.extend(
            Word.of(g) for g in self.generators_from(source) if g.kind is not GeneratorKind.IDEMPOTENT and g.target == target
        )
        words.extend(self._length_two(source).get(target, []))
        return words

    def _length_two(self: CleavedAlgebra, source: DecoratedCleavedLink) -> dict[DecoratedCleavedLink, list[Word]]:
        cached = self._words2.get(source)
        if cached is not None:
            return cached
        grouped: dict[DecoratedCleavedLink, list[Word]] = defaultdict(list)
        for first in self.generators_from(source):
            if first.kind is GeneratorKind.IDEMPOTENT:
                continue
            for second in self.generators_from(first.target):
                if second.kind is GeneratorKind.IDEMPOTENT:
                    continue
                grouped[second.target].append(Word((first, second), source, second.target))
        self._words2[source] = dict(grouped)
        return self._words2[source]

    def d_gamma(self: CleavedAlgebra, generator: Generator) -> AlgebraElement:
        """Return the differential of a generator.

        Only left decorations have a nonzero differential: the sum over left
        bridges with a foot on the decorated circle of the bridge followed by
        its co-core, ending at the flipped link.
        """
        if generator.kind is not GeneratorKind.LEFT_DEC:
            return AlgebraElement()
        source = generator.source
        circle = source.circles[generator.circle]
        acc: dict[Word, RationalFunction] = {}
        for first in self.generators_from(source):
            if first.kind is not GeneratorKind.LEFT_BRIDGE:
                continue
            if not any(set(arc) <= circle for arc in first.bridge.arcs):
                continue
            _, cocore = source.left.surger(first.bridge)
            for second in self.generators_from(first.target):
                if (
                    second.kind is GeneratorKind.LEFT_BRIDGE
                    and second.bridge == cocore
                    and second.target == generator.target
                ):
                    _accumulate(acc, [(Word((first, second), source, second.target), RationalFunction.one())])
        return AlgebraElement(acc)

    def d_word(self: CleavedAlgebra, word: Word) -> AlgebraElement:
        """Return the differential of a word by the Leibniz rule."""
        parts = []
        for i, factor in enumerate(word.factors):
            image = self.d_gamma(factor)
            if not image:
                continue
            before = Word(word.factors[:i], word.source, factor.source)
            after = Word(word.factors[i + 1 :], factor.target, word.target)
            parts.append(AlgebraElement.of(before) * image * AlgebraElement.of(after))
        return AlgebraElement.sum_of(parts)

    def d(self: CleavedAlgebra, element: AlgebraElement) -> AlgebraElement:
        """Return the differential of an element."""
        return AlgebraElement.sum_of(self.d_word(w).scale(c) for w, c in element)

    def relation_instances(
        self: CleavedAlgebra, source: DecoratedCleavedLink, target: DecoratedCleavedLink
    ) -> list[AlgebraElement]:
        """Return the defining relations supported between two links.

        Every instance is a sum of words of length at most two with
        coefficient 1 and a single collapsed grading.
        """
        words = [w for w in self.words_between(source, target) if w.factors]
        instances: list[frozenset[Word]] = []
        right_only: dict[int, list[Word]] = defaultdict(list)
        mixed: dict[tuple, list[Word]] = defaultdict(list)
        left_left: list[Word] = []
        for word in words:
            kinds = [g.kind for g in word.factors]
            if not any(k.is_left for k in kinds):
                right_only[word.zeta4].append(word)
            elif len(word) == 1:
                continue
            elif all(k.is_left for k in kinds) and all(k.is_bridge for k in kinds):
                left_left.append(word)
            elif all(k.is_dec for k in kinds):
                instances.append(self._dec_commutator(word))
            else:
                mixed[self._mixed_key(word)].append(word)
        for group in right_only.values():
            instances.extend(frozenset({group[0], other}) for other in group[1:])
        for key, group in mixed.items():
            if key[0] == "sum":
                instances.append(frozenset(group))
            else:
                instances.extend(frozenset({group[0], other}) for other in group[1:])
        instances.extend(self._left_left_relations(source, target, left_left))
        unique = {inst for inst in instances if len(inst) > 1 or (len(inst) == 1 and inst)}
        return [AlgebraElement.sum_of(AlgebraElement.of(w) for w in inst) for inst in sorted(unique, key=_instance_key)]

    def _dec_commutator(self: CleavedAlgebra, word: Word) -> frozenset[Word]:
        first, second = word.factors
        swapped_first = self.generator(second.kind, word.source, word.source.flipped(second.circle), second.circle)
        swapped_second = self.generator(first.kind, swapped_first.target, word.target, first.circle)
        return frozenset({word, Word((swapped_first, swapped_second), word.source, word.target)})

    @staticmethod
    def _mixed_key(word: Word) -> tuple:
        """Group words with one decoration or one left factor that must agree.

        Words carrying a left decoration on a circle touched by the bridge
        are summed in threes; every other group is pairwise equal.
        """
        first, second = word.factors
        dec = first if first.kind.is_dec else second if second.kind.is_dec else None
        bridge = second if dec is first else first
        if dec is not None and dec.kind is GeneratorKind.LEFT_DEC:
            points = dec.source.circles[dec.circle]
            untouched = word.source.circle_index(points) is not None and word.target.circle_index(points) is not None
            if untouched:
                return ("pair", "left-dec", bridge.bridge, points)
            return ("sum", "left-dec", bridge.bridge)
        if dec is not None:
            return ("pair", "right-dec", bridge.bridge)
        left = first if first.kind.is_left else second
        right = second if left is first else first
        return ("sum", "left-right", left.bridge, right.bridge)

    def _left_left_relations(
        self: CleavedAlgebra,
        source: DecoratedCleavedLink,
        target: DecoratedCleavedLink,
        words: list[Word],
    ) -> list[frozenset[Word]]:
        paths: dict[BridgeClass, list[Word]] = defaultdict(list)
        instances = []
        for word in words:
            first, second = word.factors
            middle, cocore = source.left.surger(first.bridge)
            if second.bridge == cocore:
                continue
            if second.bridge in middle.crossing_classes(cocore):
                instances.append(frozenset({word}))
                continue
            paths[first.bridge].append(word)
        firsts = sorted(paths)
        for gamma, eta in itertools.combinations(firsts, 2):
            shared = set(gamma.arcs) & set(eta.arcs)
            if not shared or gamma.face != eta.face:
                instances.append(frozenset(paths[gamma] + paths[eta]))
        for triple in itertools.combinations(firsts, 3):
            arcs = [set(t.arcs) for t in triple]
            same_face = len({t.face for t in triple}) == 1
            if same_face and all(a & b for a, b in itertools.combinations(arcs, 2)):
                instances.append(frozenset(w for t in triple for w in paths[t]))
        return instances

    def _span(self: CleavedAlgebra, source: DecoratedCleavedLink, target: DecoratedCleavedLink) -> _Span:
        key = (source, target)
        span = self._spans.get(key)
        if span is None:
            basis = self.words_between(source, target)
            relations = self.relation_instances(source, target)
            span = _Span(basis, relations)
            self._spans[key] = span
            logger.debug(
                "Relation span %s -> %s: %d words, rank %d",
                source.label(),
                target.label(),
                len(basis),
                len(span.pivots),
            )
        return span

    def is_zero(self: CleavedAlgebra, element: AlgebraElement) -> bool:
        """Decide whether a combination of words of length at most two vanishes.

        Each block with a common source and target is reduced against the
        span of the relation instances of that block.

        Raises:
            WordTooLong: If a word has three or more factors.
        """
        if element.max_length() > 2:
            raise exceptions.WordTooLong(f"zero test on a word of length {element.max_length()}")
        for (source, target), block in element.blocks().items():
            if self._span(source, target).residual(block):
                return False
        return True

    def quotient_dimension(self: CleavedAlgebra, source: DecoratedCleavedLink, target: DecoratedCleavedLink) -> int:
        """Return the dimension of the words of length at most two modulo relations."""
        span = self._span(source, target)
        return len(span.basis) - len(span.pivots)

    def catalog_dump(self: CleavedAlgebra) -> list[dict[str, Any]]:
        """Return the generator catalog as JSON-ready records."""
        return [
            {
                "source": gen.source.label(),
                "target": gen.target.label(),
                "kind": gen.kind.value,
                "zeta4": gen.zeta4,
                "label": gen.label(),
            }
            for link in self.links
            for gen in self.generators_from(link)
        ]


def _instance_key(instance: frozenset[Word]) -> list[str]:
    return sorted(w.label() for w in instance)


def word_is_zero_or_generator(
    algebra: CleavedAlgebra, element: AlgebraElement
) -> AlgebraElement | None:
    """Rewrite a block into words of length at most one, if possible.

    Every length-two word is dropped when it vanishes, or replaced by a
    single generator it equals (for instance a bridge followed by its
    co-core becomes a right decoration).

    Returns:
        An equal element with no word longer than one, or None.
    """
    if element.max_length() > 2:
        return None
    result: dict[Word, RationalFunction] = {}
    for word, coeff in element:
        if len(word) <= 1:
            _accumulate(result, [(word, coeff)])
            continue
        single = AlgebraElement.of(word)
        if algebra.is_zero(single):
            continue
        candidates = [w for w in algebra.words_between(word.source, word.target) if len(w) <= 1]
        match = next((w for w in candidates if algebra.is_zero(single + AlgebraElement.of(w))), None)
        if match is None:
            return None
        _accumulate(result, [(match, coeff)])
    return AlgebraElement(result)
