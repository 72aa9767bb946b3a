# ruff: noqa: TRY003, EM102
"""Fixtures module.

Named tangle diagrams used by the tests and the command line, and a
deterministic generator of small tangles for property checks.
"""

from __future__ import annotations

import itertools
import logging
from typing import TYPE_CHECKING, Any

from twistkh import exceptions
from twistkh.diagram import Side, TangleDiagram, parse

if TYPE_CHECKING:
    from collections.abc import Iterator

logger = logging.getLogger(__name__)

_HOPF_EVENTS = [{"cross": 2, "id": "c", "sign": "-", "over": "pos"}, {"cap": 1}, {"cap": 1}]

FIXTURES: dict[str, dict[str, Any]] = {
    "hopf_right": {
        "side": "right",
        "n": 2,
        "events": _HOPF_EVENTS,
        "arcs": {1: "x4", 2: "x3", 3: "x2", 4: "x1"},
    },
    "hopf_left": {
        "side": "left",
        "n": 2,
        "events": _HOPF_EVENTS,
        "arcs": {1: "x8", 2: "x7", 3: "x6", 4: "x5"},
    },
    "hopf_left_r2": {
        "side": "left",
        "n": 2,
        "events": [
            {"cross": 3, "id": "a", "sign": "-", "over": "pos"},
            {"cross": 3, "id": "b", "sign": "+", "over": "neg"},
            *_HOPF_EVENTS,
        ],
        "arcs": {k: f"x{k + 4}" for k in range(1, 9)},
    },
    "unknot0": {"side": "right", "n": 1, "events": [{"cap": 1}]},
    "unknot1p": {
        "side": "right",
        "n": 1,
        "events": [{"cross": 1, "id": "k", "sign": "+", "over": "neg"}, {"cap": 1}],
    },
    "unknot1n": {
        "side": "right",
        "n": 1,
        "events": [{"cross": 1, "id": "k", "sign": "-", "over": "pos"}, {"cap": 1}],
    },
    "unknot2": {
        "side": "right",
        "n": 1,
        "events": [
            {"cross": 1, "id": "k1", "sign": "-", "over": "pos"},
            {"cross": 1, "id": "k2", "sign": "-", "over": "pos"},
            {"cap": 1},
        ],
    },
    "nested_closing_left": {
        "side": "left",
        "n": 2,
        "events": [{"cap": 2}, {"cap": 1}],
        "arcs": {1: "y1", 2: "y2"},
    },
    "unknot_kink_right": {
        "side": "right",
        "n": 2,
        "events": [
            {"cross": 1, "id": "k1", "sign": "-", "over": "pos"},
            {"cross": 1, "id": "k2", "sign": "-", "over": "pos"},
            {"cap": 1},
            {"cap": 1},
        ],
    },
    "r3_a_right": {
        "side": "right",
        "n": 2,
        "events": [
            {"cross": 1, "id": "a", "sign": "-", "over": "pos"},
            {"cross": 2, "id": "b", "sign": "+", "over": "pos"},
            {"cross": 1, "id": "c", "sign": "-", "over": "pos"},
            {"cap": 1},
            {"cap": 1},
        ],
    },
    "r3_b_right": {
        "side": "right",
        "n": 2,
        "events": [
            {"cross": 2, "id": "c", "sign": "-", "over": "pos"},
            {"cross": 1, "id": "b", "sign": "+", "over": "pos"},
            {"cross": 2, "id": "a", "sign": "-", "over": "pos"},
            {"cap": 1},
            {"cap": 1},
        ],
    },
    "example2_right": {
        "side": "right",
        "n": 2,
        "events": [
            {"cup": 2},
            {"cross": 1, "id": "a", "over": "pos"},
            {"cross": 3, "id": "b", "over": "pos"},
            {"cross": 2, "id": "c", "over": "pos"},
            {"cup": 3},
            {"cross": 2, "id": "d", "over": "pos"},
            {"cross": 4, "id": "e", "over": "pos"},
            {"cap": 1},
            {"cap": 3},
            {"cap": 2},
            {"cap": 1},
        ],
    },
}

# Left and right fixture glued into a link.
SPLIT_FIXTURES: dict[str, tuple[str, str]] = {
    "hopf": ("hopf_left", "hopf_right"),
    "hopf_r2": ("hopf_left_r2", "hopf_right"),
    "unknot0": ("", "unknot0"),
    "unknot1p": ("", "unknot1p"),
    "unknot1n": ("", "unknot1n"),
    "unknot2": ("", "unknot2"),
    "unknot_kink": ("nested_closing_left", "unknot_kink_right"),
    "r3_a": ("", "r3_a_right"),
    "r3_b": ("", "r3_b_right"),
}


def fixture_document(name: str) -> dict[str, Any]:
    """Return the JSON document of a named fixture.

    Raises:
        UnknownFixture: If no fixture has that name.
    """
    try:
        return FIXTURES[name]
    except KeyError as error:
        raise exceptions.UnknownFixture(f"no fixture named '{name}'") from error


def fixture(name: str) -> TangleDiagram:
    """Return a named fixture diagram.

    Raises:
        UnknownFixture: If no fixture has that name.
    """
    return parse(fixture_document(name))


def closing_tangle(n: int, side: Side | str = Side.LEFT, prefix: str = "y") -> TangleDiagram:
    """Return the crossingless tangle joining axis points ``2k-1`` and ``2k``."""
    events = [{"cap": 1}] * n
    arcs = {k: f"{prefix}{k}" for k in range(1, n + 1)}
    return parse({"side": Side(side).value, "n": n, "events": events, "arcs": arcs})


def split_fixture(name: str) -> tuple[TangleDiagram, TangleDiagram]:
    """Return the left and right tangles of a named link.

    The unknot fixtures are closed on the left by :func:`closing_tangle`.

    Raises:
        UnknownFixture: If no split fixture has that name.
    """
    if name not in SPLIT_FIXTURES:
        raise exceptions.UnknownFixture(f"no split fixture named '{name}'")
    left_name, right_name = SPLIT_FIXTURES[name]
    right = fixture(right_name)
    left = fixture(left_name) if left_name else closing_tangle(right.n)
    return left, right


def _closings(n: int) -> list[list[dict[str, int]]]:
    """Return cap words closing ``2n`` strands, one per planar matching."""
    words: dict[tuple[tuple[int, int], ...], list[dict[str, int]]] = {}
    for word in itertools.product(*(range(1, 2 * k) for k in range(n, 0, -1))):
        strands = list(range(1, 2 * n + 1))
        pairs = []
        for position in word:
            pairs.append((strands[position - 1], strands[position]))
            del strands[position - 1 : position + 1]
        words.setdefault(tuple(sorted(pairs)), [{"cap": position} for position in word])
    return list(words.values())


def _crossing_words(n: int, max_crossings: int) -> Iterator[list[dict[str, Any]]]:
    for count in range(max_crossings + 1):
        for word in itertools.product(range(1, 2 * n), repeat=count):
            events = []
            for index, position in enumerate(word):
                over = "pos" if index % 2 == 0 else "neg"
                sign = "-" if over == "pos" else "+"
                events.append({"cross": position, "id": f"c{index + 1}", "sign": sign, "over": over})
            yield events


def tangle_corpus(n: int, max_crossings: int, side: Side | str = Side.RIGHT) -> list[TangleDiagram]:
    """Return every tangle of a fixed family with at most ``max_crossings`` crossings.

    The family is all crossing words on the ``2n`` axis strands, with
    alternating over strands, followed by cap words closing the strands.
    Left arcs are named ``l1, l2, ...`` and right arcs ``r1, r2, ...`` so
    that a left and a right member can always be glued.

    Args:
        n: Half the number of axis points.
        max_crossings: Largest number of crossings.
        side: Side of the axis.
    """
    side = Side(side)
    prefix = "l" if side is Side.LEFT else "r"
    corpus = []
    for crossings in _crossing_words(n, max_crossings):
        # n + 2c arcs: 2n axis ends and four ports per crossing.
        arcs = {k: f"{prefix}{k}" for k in range(1, n + 2 * len(crossings) + 1)}
        corpus.extend(
            parse({"side": side.value, "n": n, "events": [*crossings, *closing], "arcs": arcs})
            for closing in _closings(n)
        )
    logger.debug("Corpus n=%d, side=%s, <=%d crossings: %d tangles", n, side.value, max_crossings, len(corpus))
    return corpus


def split_corpus(max_total_crossings: int, max_n: int = 2) -> list[tuple[TangleDiagram, TangleDiagram]]:
    """Return pairs of left and right corpus members with at most ``max_total_crossings`` crossings."""
    pairs = []
    for n in range(1, max_n + 1):
        lefts = tangle_corpus(n, max_total_crossings, Side.LEFT)
        rights = tangle_corpus(n, max_total_crossings, Side.RIGHT)
        pairs.extend(
            (left, right)
            for left, right in itertools.product(lefts, rights)
            if len(left.crossings) + len(right.crossings) <= max_total_crossings
        )
    return pairs
