"""Test Diagram module.

This module contains tests for planar matchings, diagram parsing and
resolved circle sets.
"""

import json

import pytest

from twistkh import exceptions
from twistkh.diagram import (
    Circle,
    PlanarMatching,
    Resolution,
    Side,
    TangleDiagram,
    canonical_json,
    enumerate_matchings,
    frobenius_components,
    parse,
    state_grading,
    surger_circles,
)
from twistkh.field import Polynomial

UNNESTED = [(1, 2), (3, 4)]
NESTED = [(1, 4), (2, 3)]


@pytest.mark.parametrize(("n", "count"), [(1, 1), (2, 2), (3, 5), (4, 14)])
def test_enumerate_matchings(n: int, count: int) -> None:
    """Test for counting planar matchings."""
    matchings = enumerate_matchings(n, Side.RIGHT)
    assert len(matchings) == count
    assert len(set(matchings)) == count


def test_enumerate_matchings_order() -> None:
    """Test for the order of the two matchings on four points."""
    matchings = enumerate_matchings(2, "left")
    assert [m.pairs for m in matchings] == [tuple(UNNESTED), tuple(NESTED)]
    assert all(m.side is Side.LEFT for m in matchings)


def test_crossing_matching() -> None:
    """Test for rejecting a matching with crossing arcs."""
    with pytest.raises(ValueError):
        PlanarMatching([(1, 3), (2, 4)], Side.RIGHT)


def test_matching_partner() -> None:
    """Test for looking up partners and arcs."""
    m = PlanarMatching(NESTED, Side.RIGHT)
    assert m.partner(1) == 4
    assert m.partner(3) == 2
    assert m.arc_of(3) == (2, 3)


def test_bridge_classes() -> None:
    """Test for the single bridge class of each matching on four points."""
    unnested = PlanarMatching(UNNESTED, Side.RIGHT)
    nested = PlanarMatching(NESTED, Side.RIGHT)
    (outer,) = unnested.bridge_classes()
    assert outer.face == 0
    assert outer.arcs == ((1, 2), (3, 4))
    (inner,) = nested.bridge_classes()
    assert inner.face == 1
    assert inner.arcs == ((1, 4), (2, 3))


def test_surger_matching() -> None:
    """Test for surgery exchanging the two matchings on four points."""
    unnested = PlanarMatching(UNNESTED, Side.RIGHT)
    (gamma,) = unnested.bridge_classes()
    after, cocore = unnested.surger(gamma)
    assert after == PlanarMatching(NESTED, Side.RIGHT)
    assert cocore == after.bridge_classes()[0]
    back, _ = after.surger(cocore)
    assert back == unnested


def test_hopf_right_arcs(hopf_right: TangleDiagram) -> None:
    """Test for tracing the right Hopf tangle."""
    assert hopf_right.side is Side.RIGHT
    assert hopf_right.n == 2
    assert len(hopf_right.crossings) == 1
    assert len(hopf_right.arc_ends) == 4
    assert hopf_right.n_minus == 1
    assert hopf_right.n_plus == 0
    assert sorted(hopf_right.arc_names) == ["x1", "x2", "x3", "x4"]
    assert len(hopf_right.resolutions()) == 2


@pytest.mark.parametrize(("closing", "counts"), [(NESTED, [1, 2]), (UNNESTED, [1, 2])])
def test_hopf_right_circles(hopf_right: TangleDiagram, closing: list, counts: list[int]) -> None:
    """Test for closing both resolutions of the right Hopf tangle."""
    matching = PlanarMatching(closing, Side.LEFT)
    sets = [hopf_right.resolve(rho, matching) for rho in hopf_right.resolutions()]
    assert sorted(len(cs) for cs in sets) == counts
    for cs in sets:
        assert all(not c.free for c in cs.circles)
        assert sum(1 for c in cs.circles if c.marked) == 1
        assert 4 in cs.circles[cs.marked].points


def test_kink_has_free_circle(kink_right: TangleDiagram) -> None:
    """Test for a resolution of a double kink leaving a free circle."""
    matching = enumerate_matchings(2, Side.LEFT)[0]
    frees = [sum(1 for c in kink_right.resolve(rho, matching).circles if c.free) for rho in kink_right.resolutions()]
    assert max(frees) >= 1


def test_surger_circles_changes_matching(hopf_right: TangleDiagram) -> None:
    """Test for surgery at the Hopf crossing changing the boundary matching."""
    matching = PlanarMatching(NESTED, Side.LEFT)
    cs = hopf_right.resolve(Resolution((0,)), matching)
    (site,) = cs.sites
    assert site.active
    outcome = surger_circles(cs, site)
    assert outcome.effect == "changes-matching"
    assert outcome.kind in ("cleaved-divide", "cleaved-merge")
    assert outcome.induced is not None
    assert outcome.induced.side is Side.RIGHT
    assert outcome.circles.resolution == Resolution((1,))


def test_surger_circles_direction(hopf_right: TangleDiagram) -> None:
    """Test for surgery along a site in the wrong direction."""
    matching = PlanarMatching(NESTED, Side.LEFT)
    active = hopf_right.resolve(Resolution((0,)), matching)
    inactive = hopf_right.resolve(Resolution((1,)), matching)
    with pytest.raises(exceptions.InactiveBridge):
        surger_circles(active, active.sites[0], reverse=True)
    with pytest.raises(exceptions.InactiveBridge):
        surger_circles(inactive, inactive.sites[0])
    outcome = surger_circles(inactive, inactive.sites[0], reverse=True)
    assert outcome.circles.resolution == Resolution((0,))


def test_frobenius_divide_and_merge() -> None:
    """Test for the merge and divide rules on cleaved circles."""
    whole = Circle("cleaved", frozenset({1, 2, 3, 4}), frozenset(), True)
    outer = Circle("cleaved", frozenset({1, 4}), frozenset(), True)
    inner = Circle("cleaved", frozenset({2, 3}), frozenset(), False)
    assert frobenius_components((whole,), ("-",), (outer, inner)) == [("-", "-")]
    assert frobenius_components((outer, inner), ("-", "+"), (whole,)) == [("-",)]
    assert frobenius_components((outer, inner), ("-", "-"), (whole,)) == []


def test_frobenius_drops_plus_marked() -> None:
    """Test for dropping results that decorate the marked circle plus."""
    whole = Circle("cleaved", frozenset({1, 2, 3, 4}), frozenset(), True)
    outer = Circle("cleaved", frozenset({1, 4}), frozenset(), True)
    inner = Circle("cleaved", frozenset({2, 3}), frozenset(), False)
    assert frobenius_components((whole,), ("+",), (outer, inner)) == [("-", "+")]


def test_unknot_grading() -> None:
    """Test for the grading of the crossingless unknot."""
    diagram = parse({"side": "right", "n": 1, "events": [{"cap": 1}]})
    matching = PlanarMatching([(1, 2)], Side.LEFT)
    cs = diagram.resolve(Resolution(()), matching)
    assert len(cs) == 1
    grading = state_grading(cs, ("-",))
    assert grading.h == 0
    assert grading.q2 == 0
    assert grading.zeta4 == 0


def test_parse_text(hopf_right: TangleDiagram) -> None:
    """Test for parsing a diagram from JSON text."""
    diagram = parse(canonical_json(hopf_right))
    assert canonical_json(diagram) == canonical_json(hopf_right)
    assert json.loads(canonical_json(diagram))["arcs"]["1"] == hopf_right.arc_names[0]


def test_parse_auto_arcs() -> None:
    """Test for naming arcs automatically."""
    diagram = parse({"side": "left", "n": 1, "events": [{"cross": 1, "id": "k"}, {"cap": 1}]})
    assert diagram.arc_names == ("x1", "x2", "x3")
    assert diagram.crossings[0].sign == 1


@pytest.mark.parametrize(
    "document",
    [
        {"side": "up", "n": 1, "events": [{"cap": 1}]},
        {"side": "right", "n": 0, "events": []},
        {"side": "right", "n": 1, "events": [{"cap": 1, "cup": 1}]},
        {"side": "right", "n": 1, "events": [{"cross": 1}, {"cap": 1}]},
        {"side": "right", "n": 1, "events": [{"cap": 1}], "arcs": {1: "a", 2: "b"}},
        "{not json",
    ],
)
def test_parse_schema_error(document: object) -> None:
    """Test for documents that do not validate."""
    with pytest.raises(exceptions.SchemaError):
        parse(document)


@pytest.mark.parametrize(
    "events",
    [
        [],
        [{"cap": 2}],
        [{"cross": 2, "id": "k"}, {"cap": 1}],
        [{"cross": 1, "id": "k"}, {"cross": 1, "id": "k"}, {"cap": 1}],
    ],
)
def test_parse_non_planar(events: list) -> None:
    """Test for Morse words that are not position valid."""
    with pytest.raises(exceptions.NonPlanarEvent):
        parse({"side": "right", "n": 1, "events": events})


def test_parse_closed_free_component() -> None:
    """Test for a closed component without a crossing."""
    with pytest.raises(exceptions.ClosedFreeComponent):
        parse({"side": "right", "n": 1, "events": [{"cup": 1}, {"cap": 1}, {"cap": 1}]})


def test_input_errors_share_base() -> None:
    """Test for the input error family."""
    with pytest.raises(exceptions.InputError):
        parse({"side": "right", "n": 1, "events": []})


def test_mirror(hopf_right: TangleDiagram) -> None:
    """Test for placing a diagram on the other side."""
    mirrored = hopf_right.mirror()
    assert mirrored.side is Side.LEFT
    assert mirrored.arc_names == hopf_right.arc_names
    assert mirrored.weights == hopf_right.weights


def test_with_weights(hopf_right: TangleDiagram) -> None:
    """Test for shifting an arc weight."""
    shift = Polynomial.variable(hopf_right.registry.id_of("x1"))
    shifted = hopf_right.with_weights({0: shift})
    assert shifted.weights[0] == hopf_right.weights[0] + shift
    assert shifted.weights[1:] == hopf_right.weights[1:]
    assert shifted.registry is hopf_right.registry
