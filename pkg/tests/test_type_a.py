"""Test Type A module.

This module contains tests for the type A structure of a left tangle.
"""

import pytest

from twistkh import exceptions, fixtures
from twistkh.cleaved import CleavedAlgebra, Generator, GeneratorKind, Word
from twistkh.diagram import Side, TangleDiagram
from twistkh.field import RationalFunction, Substitution
from twistkh.session import Session
from twistkh.type_a import AState, TypeAStructure, act_generator, build_m1, build_states, verify_Ainf, zeta_shifts


def _generator(structure: TypeAStructure, label: str, kind: GeneratorKind) -> tuple[AState, Generator]:
    state = structure.find(label)
    return state, next(g for g in structure.algebra.generators_from(state.boundary) if g.kind is kind)


def _labels(combination: dict) -> dict[str, RationalFunction]:
    return {state.label(): coeff for state, coeff in combination.items()}


def _images(structure: TypeAStructure, label: str, kind: GeneratorKind) -> list[dict[str, RationalFunction]]:
    state = structure.find(label)
    generators = [g for g in structure.algebra.generators_from(state.boundary) if g.kind is kind]
    return [_labels(image) for image in (structure.act(state, g) for g in generators) if image]


def test_hopf_states(hopf_a: TypeAStructure) -> None:
    """Test for the six states of the left Hopf tangle."""
    assert len(hopf_a) == 6
    assert {s.label() for s in hopf_a.states} == {
        "12.34|0|+-",
        "12.34|0|--",
        "14.23|0|-",
        "12.34|1|-",
        "14.23|1|-+",
        "14.23|1|--",
    }


def test_hopf_m1_vanishes(hopf_a: TypeAStructure) -> None:
    """Test for the left Hopf tangle having no differential."""
    assert not hopf_a.m1
    assert all(not hopf_a.differential(s) for s in hopf_a.states)


def test_hopf_decoration_actions(hopf_a: TypeAStructure) -> None:
    """Test for the right and twisted left decoration actions."""
    registry = hopf_a.registry
    state, right_dec = _generator(hopf_a, "12.34|0|+-", GeneratorKind.RIGHT_DEC)
    assert _labels(hopf_a.act(state, right_dec)) == {"12.34|0|--": RationalFunction.one()}
    _, left_dec = _generator(hopf_a, "12.34|0|+-", GeneratorKind.LEFT_DEC)
    assert _labels(hopf_a.act(state, left_dec)) == {"12.34|0|--": registry.var("x7") + registry.var("x8")}


def test_hopf_bridge_actions(hopf_a: TypeAStructure) -> None:
    """Test for the right and left bridge actions."""
    one = RationalFunction.one()
    state, right_bridge = _generator(hopf_a, "12.34|0|+-", GeneratorKind.RIGHT_BRIDGE)
    assert _labels(hopf_a.act(state, right_bridge)) == {"14.23|0|-": one}
    _, left_bridge = _generator(hopf_a, "12.34|0|+-", GeneratorKind.LEFT_BRIDGE)
    assert _labels(hopf_a.act(state, left_bridge)) == {"12.34|1|-": one}



def test_hopf_actions_after_surgery(hopf_a: TypeAStructure) -> None:
    """Test for the actions on the left Hopf states with a resolved crossing."""
    one = RationalFunction.one()
    assert {"14.23|1|--": one} in _images(hopf_a, "12.34|1|-", GeneratorKind.RIGHT_BRIDGE)
    assert {"12.34|1|-": one} in _images(hopf_a, "14.23|1|-+", GeneratorKind.RIGHT_BRIDGE)
    assert {"14.23|1|--": one} in _images(hopf_a, "14.23|1|-+", GeneratorKind.RIGHT_DEC)


def test_hopf_twisted_decoration_on_split_circle(hopf_a: TypeAStructure) -> None:
    """Test for the left decoration twist by the weight of the plus circle."""
    registry = hopf_a.registry
    weight = registry.var("x6") + registry.var("x7")
    assert {"14.23|1|--": weight} in _images(hopf_a, "14.23|1|-+", GeneratorKind.LEFT_DEC)


def test_hopf_actions_on_nested_closing(hopf_a: TypeAStructure) -> None:
    """Test for the bridge actions on the state closed by the nested matching."""
    one = RationalFunction.one()
    assert {"12.34|0|--": one} in _images(hopf_a, "14.23|0|-", GeneratorKind.RIGHT_BRIDGE)
    assert {"14.23|1|--": one} in _images(hopf_a, "14.23|0|-", GeneratorKind.LEFT_BRIDGE)


def test_act_on_other_boundary(hopf_a: TypeAStructure) -> None:
    """Test for a generator acting by zero away from its source."""
    _, right_dec = _generator(hopf_a, "12.34|0|+-", GeneratorKind.RIGHT_DEC)
    other = hopf_a.find("14.23|1|--")
    assert act_generator(hopf_a, other, right_dec) == {}


def test_act_word(hopf_a: TypeAStructure) -> None:
    """Test for acting by the idempotent and by a long word."""
    state, right_bridge = _generator(hopf_a, "12.34|0|+-", GeneratorKind.RIGHT_BRIDGE)
    assert _labels(hopf_a.act_word(state, Word.idempotent(state.boundary))) == {"12.34|0|+-": RationalFunction.one()}
    assert hopf_a.act_word(hopf_a.find("14.23|1|--"), Word.idempotent(state.boundary)) == {}
    word = Word((right_bridge, right_bridge, right_bridge), state.boundary, state.boundary)
    with pytest.raises(exceptions.WordTooLong):
        hopf_a.act_word(state, word)


def test_act_word_two_steps(hopf_a: TypeAStructure) -> None:
    """Test for a word of two bridges acting one factor at a time."""
    state, right_bridge = _generator(hopf_a, "12.34|0|+-", GeneratorKind.RIGHT_BRIDGE)
    middle = hopf_a.find("14.23|0|-")
    (cocore,) = [g for g in hopf_a.algebra.generators_from(middle.boundary) if g.kind is GeneratorKind.RIGHT_BRIDGE]
    word = Word((right_bridge, cocore), state.boundary, cocore.target)
    assert _labels(hopf_a.act_word(state, word)) == {"12.34|0|--": RationalFunction.one()}


def test_hopf_verify(hopf_a: TypeAStructure) -> None:
    """Test for the A-infinity relations of the left Hopf tangle."""
    report = verify_Ainf(hopf_a)
    assert report.passed
    assert report.checked > 0


def test_kink_verify(kink_right: TangleDiagram, algebra2: CleavedAlgebra) -> None:
    """Test for the A-infinity relations with free circles."""
    structure = build_m1(kink_right.mirror(), algebra2)
    assert structure.m1
    assert verify_Ainf(structure).passed


def test_zeta_shifts(hopf_a: TypeAStructure) -> None:
    """Test for every action shifting the grading by the generator's grading."""
    assert zeta_shifts(hopf_a) == {
        "idempotent": {0},
        "right-dec": {2},
        "left-dec": {2},
        "right-bridge": {1},
        "left-bridge": {3},
    }


def test_right_tangle_rejected(hopf_right: TangleDiagram) -> None:
    """Test for refusing to build a type A structure from a right tangle."""
    with pytest.raises(exceptions.SchemaError):
        build_states(hopf_right)


def test_with_substitution(hopf_a: TypeAStructure) -> None:
    """Test for transporting the twisted action."""
    registry = hopf_a.registry
    x7 = registry.id_of("x7")
    substitution = Substitution.updating(registry, {x7: registry.var("x7").num + registry.var("x8").num})
    moved = hopf_a.with_substitution(substitution, registry)
    state, left_dec = _generator(moved, "12.34|0|+-", GeneratorKind.LEFT_DEC)
    assert _labels(moved.act(state, left_dec)) == {"12.34|0|--": registry.var("x7")}
    assert verify_Ainf(moved).passed


def test_document(hopf_a: TypeAStructure) -> None:
    """Test for the JSON document of a type A structure."""
    document = hopf_a.to_document()
    assert document.kind == "type-a"
    assert len(document.states) == 6
    assert all(record.generator != "m1" for record in document.actions)
    assert any("x7" in coeff for record in document.actions for _, coeff in record.outputs)


@pytest.mark.slow
@pytest.mark.parametrize(("n", "max_crossings"), [(1, 3), (2, 3), (3, 2)])
def test_corpus_actions(session: Session, n: int, max_crossings: int) -> None:
    """Test for the A-infinity relations over the left tangle corpus."""
    corpus = fixtures.tangle_corpus(n, max_crossings, Side.LEFT)
    assert corpus
    for diagram in corpus:
        assert verify_Ainf(session.type_a(diagram)).passed
