# ruff: noqa: RUF012
"""Diagram module.

This module provides the following classes:

- Event
- Diagram
"""

from typing import Literal

from pydantic import Field, model_validator

from twistkh.schemas import BaseModel


class Event(BaseModel):
    """A data model representing one Morse event of a tangle diagram.

    Exactly one of ``cup``, ``cap`` and ``cross`` is set; it holds the 1-based
    strand slot the event acts on.

    Attributes:
        cup (int, optional): Slot at which two new strands are born.
        cap (int, optional): Slot of the first of two strands that are joined.
        cross (int, optional): Slot of the lower of two strands that cross.
        id (str, optional): Identifier of the crossing.
        sign (str): Orientation sign of the crossing, ``+`` or ``-``.
        over (str): Which strand passes over, ``pos`` or ``neg``.
    """

    cup: int | None = Field(default=None, ge=1)
    cap: int | None = Field(default=None, ge=1)
    cross: int | None = Field(default=None, ge=1)
    crossing_id: str | None = Field(alias="id", default=None)
    sign: Literal["+", "-"] = "+"
    over: Literal["pos", "neg"] = "pos"

    @model_validator(mode="after")
    def _one_kind(self: "Event") -> "Event":
        kinds = [k for k in (self.cup, self.cap, self.cross) if k is not None]
        if len(kinds) != 1:
            msg = "an event needs exactly one of 'cup', 'cap' or 'cross'"
            raise ValueError(msg)
        if self.cross is not None and not self.crossing_id:
            msg = "a crossing event needs an 'id'"
            raise ValueError(msg)
        return self


class Diagram(BaseModel):
    """A data model representing a tangle diagram document.

    Attributes:
        side (str): ``left`` or ``right`` of the dividing axis.
        n (int): Half the number of axis points.
        events (list[Event]): Morse events sweeping away from the axis.
        arcs (str | dict[int, str]): ``auto`` or 1-based arc index to name.
    """

    side: Literal["left", "right"]
    n: int = Field(ge=1)
    events: list[Event] = []
    arcs: Literal["auto"] | dict[int, str] = "auto"
