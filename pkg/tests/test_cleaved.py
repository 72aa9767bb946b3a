"""Test Cleaved module.

This module contains tests for decorated cleaved links, the generator
catalog, the differential and the zero test.
"""

import pytest

from twistkh import exceptions
from twistkh.cleaved import (
    AlgebraElement,
    CleavedAlgebra,
    DecoratedCleavedLink,
    GeneratorKind,
    Word,
    enumerate_links,
    word_is_zero_or_generator,
)
from twistkh.diagram import PlanarMatching, Side

UNNESTED = [(1, 2), (3, 4)]
NESTED = [(1, 4), (2, 3)]


def _link(left: list, right: list, signs: str) -> DecoratedCleavedLink:
    return DecoratedCleavedLink(PlanarMatching(left, Side.LEFT), PlanarMatching(right, Side.RIGHT), tuple(signs))


def _only(algebra: CleavedAlgebra, link: DecoratedCleavedLink, kind: GeneratorKind) -> list:
    return [g for g in algebra.generators_from(link) if g.kind is kind]


@pytest.mark.parametrize(("n", "count"), [(1, 1), (2, 6)])
def test_enumerate_links(n: int, count: int) -> None:
    """Test for counting decorated cleaved links."""
    links = enumerate_links(n)
    assert len(links) == count
    assert len(set(links)) == count


def test_link_label_and_index() -> None:
    """Test for the label and index of a two circle link."""
    link = _link(UNNESTED, UNNESTED, "+-")
    assert link.circles == (frozenset({1, 2}), frozenset({3, 4}))
    assert link.marked == 1
    assert link.index == 1
    assert link.label() == "12.34|12.34|+-"
    assert link.flipped(0) == _link(UNNESTED, UNNESTED, "--")
    assert link.flipped(0).index == -1


def test_link_rejects_bad_signs() -> None:
    """Test for rejecting a plus marked circle and a wrong sign count."""
    with pytest.raises(ValueError):
        _link(UNNESTED, UNNESTED, "-+")
    with pytest.raises(ValueError):
        _link(UNNESTED, NESTED, "--")


def test_generators_from(algebra2: CleavedAlgebra) -> None:
    """Test for the generators leaving each kind of link."""
    two = _link(UNNESTED, UNNESTED, "+-")
    kinds = sorted(g.kind.value for g in algebra2.generators_from(two))
    assert kinds == ["idempotent", "left-bridge", "left-dec", "right-bridge", "right-dec"]
    assert [g.kind for g in algebra2.generators_from(_link(UNNESTED, UNNESTED, "--"))] == [GeneratorKind.IDEMPOTENT]
    assert len(algebra2.generators_from(_link(UNNESTED, NESTED, "-"))) == 3


def test_generator_targets(algebra2: CleavedAlgebra) -> None:
    """Test for the targets of bridges and decorations."""
    source = _link(UNNESTED, UNNESTED, "+-")
    (right_dec,) = _only(algebra2, source, GeneratorKind.RIGHT_DEC)
    assert right_dec.target == _link(UNNESTED, UNNESTED, "--")
    (left_bridge,) = _only(algebra2, source, GeneratorKind.LEFT_BRIDGE)
    assert left_bridge.target == _link(NESTED, UNNESTED, "-")
    (right_bridge,) = _only(algebra2, source, GeneratorKind.RIGHT_BRIDGE)
    assert right_bridge.target == _link(UNNESTED, NESTED, "-")


def test_generator_lookup(algebra2: CleavedAlgebra) -> None:
    """Test for looking up generators by kind and endpoints."""
    source = _link(UNNESTED, UNNESTED, "+-")
    target = _link(UNNESTED, UNNESTED, "--")
    gen = algebra2.generator(GeneratorKind.LEFT_DEC, source, target)
    assert gen.circle == 0
    with pytest.raises(exceptions.BoundaryMismatch):
        algebra2.generator(GeneratorKind.LEFT_BRIDGE, source, target)


@pytest.mark.parametrize(
    ("kind", "zeta4"),
    [
        (GeneratorKind.IDEMPOTENT, 0),
        (GeneratorKind.RIGHT_DEC, 2),
        (GeneratorKind.LEFT_DEC, 2),
        (GeneratorKind.RIGHT_BRIDGE, 1),
        (GeneratorKind.LEFT_BRIDGE, 3),
    ],
)
def test_generator_grading(kind: GeneratorKind, zeta4: int) -> None:
    """Test for the collapsed grading of each generator kind."""
    assert kind.zeta4 == zeta4


def test_catalog(algebra2: CleavedAlgebra) -> None:
    """Test for the size of the generator catalog on four points."""
    catalog = algebra2.catalog_dump()
    assert len(catalog) == 18
    assert {record["kind"] for record in catalog} == {k.value for k in GeneratorKind}


def test_differential_of_left_decoration(algebra2: CleavedAlgebra) -> None:
    """Test for the differential of a left decoration."""
    source = _link(UNNESTED, UNNESTED, "+-")
    (left_dec,) = _only(algebra2, source, GeneratorKind.LEFT_DEC)
    image = algebra2.d_gamma(left_dec)
    assert len(image) == 1
    ((word, coeff),) = list(image)
    assert coeff.is_one()
    assert [g.kind for g in word.factors] == [GeneratorKind.LEFT_BRIDGE, GeneratorKind.LEFT_BRIDGE]
    assert word.target == left_dec.target
    assert not algebra2.d(image)


def test_differential_vanishes_elsewhere(algebra2: CleavedAlgebra) -> None:
    """Test for generators with zero differential."""
    source = _link(UNNESTED, UNNESTED, "+-")
    for gen in algebra2.generators_from(source):
        if gen.kind is not GeneratorKind.LEFT_DEC:
            assert not algebra2.d_gamma(gen)


def test_left_right_bridges_commute(algebra2: CleavedAlgebra) -> None:
    """Test for a left and a right bridge commuting."""
    source = _link(UNNESTED, UNNESTED, "+-")
    target = _link(NESTED, NESTED, "--")
    words = [w for w in algebra2.words_between(source, target) if len(w) == 2]
    assert len(words) == 2
    first, second = (AlgebraElement.of(w) for w in words)
    assert algebra2.is_zero(first + second)
    assert not algebra2.is_zero(first)
    assert algebra2.quotient_dimension(source, target) == 1


def test_bridge_and_cocore_is_decoration(algebra2: CleavedAlgebra) -> None:
    """Test for a right bridge followed by its co-core equalling a right decoration."""
    source = _link(UNNESTED, UNNESTED, "+-")
    (bridge,) = _only(algebra2, source, GeneratorKind.RIGHT_BRIDGE)
    (cocore,) = _only(algebra2, bridge.target, GeneratorKind.RIGHT_BRIDGE)
    (right_dec,) = _only(algebra2, source, GeneratorKind.RIGHT_DEC)
    (left_dec,) = _only(algebra2, source, GeneratorKind.LEFT_DEC)
    product = Word((bridge, cocore), source, cocore.target)
    assert algebra2.is_zero(AlgebraElement.of(product) + AlgebraElement.of(right_dec))
    assert not algebra2.is_zero(AlgebraElement.of(product) + AlgebraElement.of(left_dec))
    short = word_is_zero_or_generator(algebra2, AlgebraElement.of(product))
    assert short is not None
    assert list(short.terms) == [Word.of(right_dec)]


def test_relation_instances_vanish(algebra2: CleavedAlgebra) -> None:
    """Test for every relation instance being zero."""
    for source in algebra2.links:
        for target in algebra2.links:
            for relation in algebra2.relation_instances(source, target):
                assert algebra2.is_zero(relation)


def test_idempotent_is_not_zero(algebra2: CleavedAlgebra) -> None:
    """Test for the idempotent being nonzero."""
    link = _link(UNNESTED, UNNESTED, "+-")
    assert not algebra2.is_zero(algebra2.idempotent(link))
    assert algebra2.is_zero(AlgebraElement())


def test_word_too_long(algebra2: CleavedAlgebra) -> None:
    """Test for the zero test refusing words of length three."""
    source = _link(UNNESTED, UNNESTED, "+-")
    (bridge,) = _only(algebra2, source, GeneratorKind.RIGHT_BRIDGE)
    word = Word((bridge, bridge, bridge), source, source)
    with pytest.raises(exceptions.WordTooLong):
        algebra2.is_zero(AlgebraElement.of(word))


def test_element_arithmetic(algebra2: CleavedAlgebra) -> None:
    """Test for adding and multiplying elements."""
    source = _link(UNNESTED, UNNESTED, "+-")
    (bridge,) = _only(algebra2, source, GeneratorKind.RIGHT_BRIDGE)
    element = AlgebraElement.of(bridge)
    assert not element + element
    assert len(algebra2.idempotent(source) * element) == 1
    assert not element * algebra2.idempotent(source)
    assert element.to_text() == bridge.label()


def test_n1_algebra() -> None:
    """Test for the algebra on two points having only an idempotent."""
    algebra = CleavedAlgebra(1)
    (link,) = algebra.links
    assert [g.kind for g in algebra.generators_from(link)] == [GeneratorKind.IDEMPOTENT]
    assert algebra.relation_instances(link, link) == []


THREE = [(1, 2), (3, 4), (5, 6)]


@pytest.fixture(scope="module")
def algebra3() -> CleavedAlgebra:
    """Algebra on six axis points fixture."""
    return CleavedAlgebra(3)


def test_decorations_commute(algebra3: CleavedAlgebra) -> None:
    """Test for decorations on different circles commuting."""
    source = _link(THREE, THREE, "++-")
    target = _link(THREE, THREE, "---")
    words = algebra3.words_between(source, target)
    assert len(words) == 8
    assert all(len(w) == 2 and all(g.kind.is_dec for g in w.factors) for w in words)
    for word in words:
        first, second = word.factors
        swapped = Word(
            (
                algebra3.generator(second.kind, source, source.flipped(second.circle), second.circle),
                algebra3.generator(first.kind, source.flipped(second.circle), target, first.circle),
            ),
            source,
            target,
        )
        assert algebra3.is_zero(AlgebraElement.of(word) + AlgebraElement.of(swapped))
        assert not algebra3.is_zero(AlgebraElement.of(word))
    assert algebra3.quotient_dimension(source, target) == 4


def test_right_bridges_and_cocores(algebra3: CleavedAlgebra) -> None:
    """Test for every right bridge followed by its co-core equalling one right decoration."""
    source = _link(THREE, THREE, "++-")
    target = source.flipped(0)
    right_dec = algebra3.generator(GeneratorKind.RIGHT_DEC, source, target, 0)
    left_dec = algebra3.generator(GeneratorKind.LEFT_DEC, source, target, 0)
    loops = [
        w
        for w in algebra3.words_between(source, target)
        if len(w) == 2 and all(g.kind is GeneratorKind.RIGHT_BRIDGE for g in w.factors)
    ]
    assert len(loops) >= 2
    for word in loops:
        assert algebra3.is_zero(AlgebraElement.of(word) + AlgebraElement.of(right_dec))
        assert not algebra3.is_zero(AlgebraElement.of(word) + AlgebraElement.of(left_dec))


def test_left_right_merges_commute(algebra3: CleavedAlgebra) -> None:
    """Test for a left merge and a right merge commuting on six points."""
    source = _link(THREE, THREE, "---")
    target = _link([(1, 4), (2, 3), (5, 6)], [(1, 2), (3, 6), (4, 5)], "-")
    words = algebra3.words_between(source, target)
    assert sorted(tuple(g.kind for g in w.factors) for w in words) == [
        (GeneratorKind.LEFT_BRIDGE, GeneratorKind.RIGHT_BRIDGE),
        (GeneratorKind.RIGHT_BRIDGE, GeneratorKind.LEFT_BRIDGE),
    ]
    first, second = (AlgebraElement.of(w) for w in words)
    assert algebra3.is_zero(first + second)
    assert algebra3.quotient_dimension(source, target) == 1


def test_idempotents_survive(algebra3: CleavedAlgebra) -> None:
    """Test for no relation killing an idempotent."""
    for link in algebra3.links:
        assert algebra3.quotient_dimension(link, link) >= 1
        assert not algebra3.is_zero(algebra3.idempotent(link))


@pytest.mark.slow
def test_relations_on_six_points(algebra3: CleavedAlgebra) -> None:
    """Test for relation instances on six points vanishing with a single grading."""
    for source in algebra3.links:
        for target in algebra3.links:
            for relation in algebra3.relation_instances(source, target):
                assert len({w.zeta4 for w, _ in relation}) == 1
                assert all(c.is_one() for _, c in relation)
                assert algebra3.is_zero(relation)


@pytest.mark.slow
def test_differential_squares_to_zero(algebra3: CleavedAlgebra) -> None:
    """Test for the differential squaring to zero on generators and words."""
    for source in algebra3.links:
        for gen in algebra3.generators_from(source):
            assert not algebra3.d(algebra3.d_gamma(gen))
        for target in algebra3.links:
            for word in algebra3.words_between(source, target):
                assert not algebra3.d(algebra3.d_word(word))


@pytest.mark.slow
def test_leibniz_rule(algebra3: CleavedAlgebra) -> None:
    """Test for the differential of a product of two generators."""
    for source in algebra3.links:
        for target in algebra3.links:
            for word in algebra3.words_between(source, target):
                if len(word) != 2:
                    continue
                first, second = (AlgebraElement.of(g) for g in word.factors)
                expected = algebra3.d(first) * second + first * algebra3.d(second)
                assert not algebra3.d_word(word) + expected
