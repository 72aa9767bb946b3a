"""Test Pairing module.

This module contains tests for the box tensor product, the twisted Khovanov
complex of a glued diagram and homology ranks.
"""

from fractions import Fraction

import pytest

from twistkh import exceptions, fixtures
from twistkh.diagram import TangleDiagram
from twistkh.field import RationalFunction
from twistkh.pairing import ChainComplex, box_tensor, compare, global_identification, twisted_khovanov
from twistkh.session import Session
from twistkh.type_a import TypeAStructure
from twistkh.type_d import TypeDStructure

UNKNOTS = ["unknot0", "unknot1p", "unknot1n", "unknot2", "unknot_kink"]


def _image(box: ChainComplex, label: str) -> dict[str, RationalFunction]:
    return {box.labels[j]: c for j, c in box.image(box.index(label)).items()}


@pytest.fixture(scope="module")
def hopf_box(hopf_a: TypeAStructure, hopf_d: TypeDStructure) -> ChainComplex:
    """Paired Hopf complex fixture."""
    return box_tensor(hopf_a, hopf_d)


def test_hopf_box_generators(hopf_box: ChainComplex) -> None:
    """Test for the generators and gradings of the paired Hopf complex."""
    assert len(hopf_box) == 6
    assert sorted(Fraction(z, 4) for z in hopf_box.zeta4) == [
        Fraction(-1, 2),
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(1, 2),
        Fraction(3, 2),
    ]
    assert "12.34|0|+-#12.34|0|+-" in hopf_box.labels


def test_hopf_box_differential(hopf_box: ChainComplex) -> None:
    """Test for the differential of the lowest paired Hopf generator."""
    registry = hopf_box.registry
    row = hopf_box.image(hopf_box.index("12.34|0|+-#12.34|0|+-"))
    image = {hopf_box.labels[j]: c for j, c in row.items()}
    weight = registry.var("x3") + registry.var("x4") + registry.var("x7") + registry.var("x8")
    assert image.keys() == {"12.34|0|--#12.34|0|--", "14.23|0|-#12.34|1|-", "12.34|1|-#14.23|0|-"}
    assert image["12.34|0|--#12.34|0|--"] == weight
    assert image["14.23|0|-#12.34|1|-"].is_one()
    assert image["12.34|1|-#14.23|0|-"].is_one()


def test_hopf_box_differential_rest(hopf_box: ChainComplex) -> None:
    """Test for the differential of every other paired Hopf generator."""
    registry = hopf_box.registry
    one = RationalFunction.one()
    (top,) = [label for label, z in zip(hopf_box.labels, hopf_box.zeta4, strict=True) if z == 6]
    known = {
        "12.34|0|+-#12.34|0|+-",
        "12.34|0|--#12.34|0|--",
        "14.23|0|-#12.34|1|-",
        "12.34|1|-#14.23|0|-",
        top,
    }
    (split,) = set(hopf_box.labels) - known
    weight = registry.var("x2") + registry.var("x3") + registry.var("x6") + registry.var("x7")
    assert _image(hopf_box, "12.34|0|--#12.34|0|--") == {}
    assert _image(hopf_box, "12.34|1|-#14.23|0|-") == {top: one}
    assert _image(hopf_box, "14.23|0|-#12.34|1|-") == {top: one}
    assert _image(hopf_box, split) == {top: weight}
    assert _image(hopf_box, top) == {}


def test_hopf_square_zero(hopf_box: ChainComplex) -> None:
    """Test for the paired Hopf differential squaring to zero."""
    report = hopf_box.check_square_zero()
    assert report.passed
    assert report.checked >= len(hopf_box)


@pytest.mark.parametrize("mode", ["exact", "randomized"])
def test_hopf_homology(hopf_box: ChainComplex, mode: str) -> None:
    """Test for the homology of the Hopf link."""
    assert hopf_box.homology_ranks(mode, seed=7) == {Fraction(1, 2): 2}


def test_hopf_oracle(hopf_left: TangleDiagram, hopf_right: TangleDiagram, hopf_box: ChainComplex) -> None:
    """Test for the paired complex agreeing with the glued diagram's complex."""
    oracle = twisted_khovanov(hopf_left, hopf_right)
    assert len(oracle) == len(hopf_box)
    assert oracle.check_square_zero().passed
    assert oracle.homology_ranks() == {Fraction(1, 2): 2}
    identification = global_identification(hopf_box, oracle)
    assert sorted(identification) == list(range(len(oracle)))
    assert compare(hopf_box, oracle, identification)


def test_compare_detects_change(hopf_left: TangleDiagram, hopf_right: TangleDiagram, hopf_box: ChainComplex) -> None:
    """Test for comparison failing after an entry is dropped."""
    oracle = twisted_khovanov(hopf_left, hopf_right)
    identification = global_identification(hopf_box, oracle)
    source = hopf_box.index("12.34|0|+-#12.34|0|+-")
    changed = ChainComplex(
        hopf_box.labels,
        hopf_box.zeta4,
        {**hopf_box.differential, source: {}},
        hopf_box.registry,
        hopf_box.generators,
    )
    assert not compare(changed, oracle, identification)
    assert not compare(hopf_box, oracle, list(reversed(identification)))


@pytest.mark.parametrize("name", UNKNOTS)
def test_unknot_homology(session: Session, name: str) -> None:
    """Test for the homology of unknot diagrams."""
    left, right = fixtures.split_fixture(name)
    assert session.homology(left, right) == {Fraction(0): 1}
    assert session.homology(left, right, oracle=True) == {Fraction(0): 1}


@pytest.mark.parametrize("name", UNKNOTS)
def test_unknot_oracle(session: Session, name: str) -> None:
    """Test for unknot paired complexes agreeing with the glued diagram's complex."""
    left, right = fixtures.split_fixture(name)
    box = session.pair(left, right)
    oracle = session.oracle(left, right)
    assert box.check_square_zero().passed
    assert compare(box, oracle, global_identification(box, oracle))


def test_hopf_reidemeister_two(session: Session) -> None:
    """Test for two presentations of the Hopf link having the same homology."""
    left, right = fixtures.split_fixture("hopf_r2")
    box = session.pair(left, right)
    assert box.check_square_zero().passed
    assert box.homology_ranks() == {Fraction(1, 2): 2}
    assert compare(box, session.oracle(left, right), global_identification(box, session.oracle(left, right)))


@pytest.mark.parametrize("closing", ["plain", "nested"])
def test_reidemeister_three(session: Session, closing: str) -> None:
    """Test for the two sides of a third Reidemeister move having the same homology."""
    left = fixtures.closing_tangle(2) if closing == "plain" else fixtures.fixture("nested_closing_left")
    ranks = []
    for name in ("r3_a_right", "r3_b_right"):
        right = fixtures.fixture(name)
        box = session.pair(left, right)
        assert box.check_square_zero().passed
        ranks.append(box.homology_ranks())
        assert ranks[-1] == session.homology(left, right, oracle=True)
    assert ranks[0] == ranks[1]


def test_reidemeister_three_knot(session: Session) -> None:
    """Test for the closed braid of the third Reidemeister move being a knot."""
    for name in ("r3_a", "r3_b"):
        assert sum(session.homology(*fixtures.split_fixture(name)).values()) == 1


def test_box_tensor_mismatch(session: Session, hopf_d: TypeDStructure) -> None:
    """Test for refusing to pair structures on different numbers of points."""
    small = session.type_a(fixtures.closing_tangle(1))
    with pytest.raises(exceptions.BoundaryMismatch):
        box_tensor(small, hopf_d)


def test_box_tensor_collision(session: Session, hopf_a: TypeAStructure, hopf_left: TangleDiagram) -> None:
    """Test for refusing to pair two sides with a shared variable name."""
    right = session.type_d(hopf_left.mirror())
    with pytest.raises(exceptions.VariableCollision):
        box_tensor(hopf_a, right)


def test_oracle_errors(hopf_left: TangleDiagram, hopf_right: TangleDiagram) -> None:
    """Test for refusing to glue tangles on the wrong sides or sizes."""
    with pytest.raises(exceptions.SchemaError):
        twisted_khovanov(hopf_right, hopf_right)
    with pytest.raises(exceptions.BoundaryMismatch):
        twisted_khovanov(fixtures.closing_tangle(1), hopf_right)


def test_report(hopf_box: ChainComplex) -> None:
    """Test for the JSON document of a complex."""
    document = hopf_box.to_report(hopf_box.homology_ranks())
    assert len(document.generators) == 6
    assert document.homology == {"1/2": 2}
    dumped = document.model_dump(by_alias=True)
    assert {"from", "to", "coeff"} <= dumped["differential"][0].keys()


def _check_against_oracle(session: Session, left: TangleDiagram, right: TangleDiagram) -> None:
    box = session.pair(left, right)
    oracle = session.oracle(left, right)
    assert box.check_square_zero().passed
    assert compare(box, oracle, global_identification(box, oracle))
    assert box.homology_ranks() == oracle.homology_ranks()


@pytest.mark.slow
@pytest.mark.parametrize("max_n", [1, 2])
def test_corpus_against_oracle(session: Session, max_n: int) -> None:
    """Test for every glued corpus member with at most four crossings matching its oracle."""
    pairs = [
        (left, right) for left, right in fixtures.split_corpus(4, max_n=max_n) if left.n == max_n
    ]
    assert pairs
    for left, right in pairs:
        _check_against_oracle(session, left, right)


@pytest.mark.slow
def test_five_crossings_against_oracle(session: Session) -> None:
    """Test for glued corpus members with five crossings matching their oracle."""
    pairs = [
        (left, right)
        for left, right in fixtures.split_corpus(5)
        if len(left.crossings) + len(right.crossings) == 5
    ]
    sample = [pair for pair in pairs if pair[0].n == 1] + [pair for pair in pairs if pair[0].n == 2][::40]
    assert len(sample) > 100
    for left, right in sample:
        _check_against_oracle(session, left, right)
