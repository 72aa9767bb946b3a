# ruff: noqa: RUF012
"""Structure module.

This module provides the following classes:

- StateRecord
- TermRecord
- StructureDump
- ActionRecord
- ActionDump
- MorphismDump
"""

from __future__ import annotations

from typing import Literal

from pydantic import Field

from twistkh.schemas import BaseModel


class StateRecord(BaseModel):
    """A data model representing a generator of a type D or type A structure.

    Attributes:
        id (int): Position of the state in the structure.
        label (str): Printable label ``matching|resolution|signs``.
        boundary (str): Label of the boundary decorated cleaved link.
        h (int): Homological grading.
        q (str): Quantum grading as a fraction.
        zeta (str): Collapsed grading as a fraction.
    """

    id: int
    label: str
    boundary: str
    h: int
    q: str
    zeta: str


class TermRecord(BaseModel):
    """A data model representing one term ``coeff * generator (x) target``.

    Attributes:
        source (int): Id of the source state.
        target (int): Id of the target state.
        coeff (str): The field coefficient.
        kind (str): Generator kind, ``idempotent`` for the empty word.
        generator (str): Label of the word.
    """

    source: int
    target: int
    coeff: str
    kind: str
    generator: str


class StructureDump(BaseModel):
    """A data model representing a type D structure or morphism table.

    Attributes:
        kind (str): ``type-d`` for structures.
        variables (list[str]): Display names of the variables, in id order.
        states (list[StateRecord]): The generators.
        terms (list[TermRecord]): The nonzero terms of the differential.
    """

    kind: Literal["type-d"] = "type-d"
    variables: list[str] = []
    states: list[StateRecord] = []
    terms: list[TermRecord] = []


class ActionRecord(BaseModel):
    """A data model representing the action of one generator on one state.

    Attributes:
        state (int): Id of the acted-on state.
        generator (str): Label of the algebra generator, ``m1`` for the differential.
        outputs (list[tuple[int, str]]): Target state ids and coefficients.
    """

    state: int
    generator: str
    outputs: list[tuple[int, str]] = []


class ActionDump(BaseModel):
    """A data model representing the tables of a type A structure.

    Attributes:
        kind (str): ``type-a``.
        variables (list[str]): Display names of the variables.
        states (list[StateRecord]): The generators.
        actions (list[ActionRecord]): Nonzero actions, ``m1`` first.
    """

    kind: Literal["type-a"] = "type-a"
    variables: list[str] = []
    states: list[StateRecord] = []
    actions: list[ActionRecord] = []


class MorphismDump(BaseModel):
    """A data model representing a map between type D structures.

    Attributes:
        name (str): What the map is, such as ``iota`` or ``Psi``.
        degree (int): Collapsed grading shift in quarter units.
        terms (list[TermRecord]): Terms with ids of domain and codomain states.
    """

    name: str
    degree: int = 0
    terms: list[TermRecord] = Field(default_factory=list)
